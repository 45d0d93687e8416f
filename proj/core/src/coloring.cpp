// SPDX-License-Identifier: Apache-2.0
#include "vhtk/coloring.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "vhtk/error.hpp"
#include "vhtk/parallel.hpp"

namespace vh {

SymmetricGraph::SymmetricGraph(int n, std::vector<std::pair<int, int>> edges,
                               std::vector<std::vector<int>> generators, std::vector<std::string> names)
    : names_(std::move(names)), generators_(std::move(generators)) {
  if (n < 0) throw InvalidInput("graph: negative vertex count");
  if (names_.empty())
    for (int v = 0; v < n; ++v) names_.push_back(std::to_string(v));
  if (static_cast<int>(names_.size()) != n) throw InvalidInput("graph: name count mismatch");
  std::set<std::pair<int, int>> es;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw InvalidInput("graph: edge endpoint out of range");
    if (u == v) throw InvalidInput("graph: loop at vertex '" + names_[static_cast<std::size_t>(u)] + "'");
    es.insert(std::minmax(u, v));
  }
  edges_.assign(es.begin(), es.end());
  adj_.assign(static_cast<std::size_t>(n), {});
  for (auto [u, v] : edges_) {
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& a : adj_) {
    std::sort(a.begin(), a.end());
    max_degree_ = std::max(max_degree_, static_cast<int>(a.size()));
  }
  for (const auto& g : generators_) {
    if (static_cast<int>(g.size()) != n) throw InvalidInput("graph: generator has wrong length");
    std::vector<int> sorted = g;
    std::sort(sorted.begin(), sorted.end());
    for (int v = 0; v < n; ++v)
      if (sorted[static_cast<std::size_t>(v)] != v) throw InvalidInput("graph: generator is not a permutation");
    for (auto [u, v] : edges_)
      if (!es.count(std::minmax(g[static_cast<std::size_t>(u)], g[static_cast<std::size_t>(v)])))
        throw InvalidInput("graph: generator is not an automorphism");
  }
  // Edge orbits by union-find, smallest edge index represents its orbit.
  std::vector<int> parent(edges_.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    return parent[static_cast<std::size_t>(a)] == a ? a : parent[static_cast<std::size_t>(a)] = find(parent[static_cast<std::size_t>(a)]);
  };
  for (const auto& g : generators_) {
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const auto img = std::minmax(g[static_cast<std::size_t>(edges_[e].first)], g[static_cast<std::size_t>(edges_[e].second)]);
      const int f = static_cast<int>(std::lower_bound(edges_.begin(), edges_.end(), std::pair<int, int>(img)) - edges_.begin());
      int a = find(static_cast<int>(e)), b = find(f);
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  }
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (find(static_cast<int>(e)) == static_cast<int>(e)) orbit_reps_.push_back(static_cast<int>(e));
}

SymmetricGraph SymmetricGraph::from_json(const nlohmann::json& doc) {
  try {
    const auto names = doc.at("vertices").get<std::vector<std::string>>();
    std::map<std::string, int> idx;
    for (std::size_t i = 0; i < names.size(); ++i)
      if (!idx.emplace(names[i], static_cast<int>(i)).second)
        throw InvalidInput("graph: duplicate vertex '" + names[i] + "'");
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : doc.value("edges", nlohmann::json::array())) {
      const auto a = e.at(0).get<std::string>();
      const auto b = e.at(1).get<std::string>();
      if (!idx.count(a) || !idx.count(b)) throw InvalidInput("graph: edge names unknown vertex");
      edges.emplace_back(idx[a], idx[b]);
    }
    auto sym = doc.value("sym", std::vector<std::vector<int>>{});
    return SymmetricGraph(static_cast<int>(names.size()), std::move(edges), std::move(sym), names);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("parse error: ") + e.what());
  }
}

nlohmann::json SymmetricGraph::to_json() const {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [u, v] : edges_) edges.push_back({names_[static_cast<std::size_t>(u)], names_[static_cast<std::size_t>(v)]});
  return {{"vertices", names_}, {"edges", edges}, {"sym", generators_}};
}

bool SymmetricGraph::adjacent(int u, int v) const {
  const auto& a = adj_[static_cast<std::size_t>(u)];
  return std::binary_search(a.begin(), a.end(), v);
}

SymmetricGraph SymmetricGraph::without_symmetry() const {
  return SymmetricGraph(size(), edges_, {}, names_);
}

std::vector<std::vector<int>> SymmetricGraph::group_elements() const {
  std::vector<int> id(static_cast<std::size_t>(size()));
  std::iota(id.begin(), id.end(), 0);
  std::set<std::vector<int>> seen{id};
  std::vector<std::vector<int>> out{id};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& g : generators_) {
      std::vector<int> h(id.size());
      for (std::size_t v = 0; v < id.size(); ++v) h[v] = g[static_cast<std::size_t>(out[i][v])];
      if (seen.insert(h).second) out.push_back(std::move(h));
    }
  }
  return out;
}

bool is_proper(const SymmetricGraph& g, const Assignment& c) {
  for (auto [u, v] : g.edges())
    if (c[static_cast<std::size_t>(u)] == c[static_cast<std::size_t>(v)]) return false;
  return true;
}

Assignment act(const std::vector<int>& perm, const Assignment& c) {
  Assignment out(c.size());
  for (std::size_t v = 0; v < c.size(); ++v) out[static_cast<std::size_t>(perm[v])] = c[v];
  return out;
}

Assignment greedy_coloring(const SymmetricGraph& g, const std::vector<int>& order) {
  std::vector<int> ord = order;
  if (ord.empty()) {
    ord.resize(static_cast<std::size_t>(g.size()));
    std::iota(ord.begin(), ord.end(), 0);
  }
  if (static_cast<int>(ord.size()) != g.size()) throw InvalidInput("greedy: order must list every vertex");
  Assignment c(static_cast<std::size_t>(g.size()), 0);
  std::vector<bool> used;
  for (int v : ord) {
    used.assign(static_cast<std::size_t>(g.max_degree() + 2), false);
    for (int u : g.neighbors(v)) {
      const int cu = c[static_cast<std::size_t>(u)];
      if (cu > 0 && cu < static_cast<int>(used.size())) used[static_cast<std::size_t>(cu)] = true;
    }
    int col = 1;
    while (used[static_cast<std::size_t>(col)]) ++col;
    c[static_cast<std::size_t>(v)] = col;
  }
  return c;
}

namespace {

int smallest_free(const SymmetricGraph& g, const Assignment& c, int v, int n) {
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (int u : g.neighbors(v)) {
    const int cu = c[static_cast<std::size_t>(u)];
    if (cu >= 1 && cu < n) used[static_cast<std::size_t>(cu)] = true;
  }
  for (int col = 1; col < n; ++col)
    if (!used[static_cast<std::size_t>(col)]) return col;
  return 0;
}

}  // namespace

bool projection_defined(const SymmetricGraph& g, const Assignment& c, int n) {
  if (n < 2) return false;
  for (int v = 0; v < g.size(); ++v)
    if (c[static_cast<std::size_t>(v)] == n && smallest_free(g, c, v, n) == 0) return false;
  return true;
}

Assignment project_step(const SymmetricGraph& g, const Assignment& c, int n) {
  if (n < 2) throw InvalidInput("p_n needs n >= 2");
  Assignment out = c;
  for (int v = 0; v < g.size(); ++v) {
    const int cv = c[static_cast<std::size_t>(v)];
    if (cv < 1 || cv > n) throw InvalidInput("p_n: colour out of range");
    if (cv != n) continue;
    const int col = smallest_free(g, c, v, n);
    if (col == 0)
      throw InvalidInput("p_" + std::to_string(n) + " undefined: every colour below n is used around vertex " +
                         g.names()[static_cast<std::size_t>(v)]);
    out[static_cast<std::size_t>(v)] = col;
  }
  return out;
}

Assignment project_chain(const SymmetricGraph& g, const Assignment& c, int n) {
  const int k = g.max_degree();
  if (n <= k + 1)
    throw InvalidInput("P_n chain requires n > k+1 (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
  Assignment out = c;
  for (int m = n; m >= k + 2; --m) out = project_step(g, out, m);
  return out;
}

Rational Distribution::total_mass() const {
  if (!product) {
    Rational s = 0;
    for (const auto& [a, m] : atoms) s += m;
    return s;
  }
  Rational s = 1;
  for (const auto& mv : marginals) {
    Rational t = 0;
    for (const auto& p : mv) t += p;
    s *= t;
  }
  return s;
}

std::size_t Distribution::explicit_size() const {
  if (!product) return atoms.size();
  std::size_t s = 1;
  for (const auto& mv : marginals) {
    std::size_t nz = 0;
    for (const auto& p : mv) nz += p != 0 ? 1 : 0;
    if (nz != 0 && s > std::numeric_limits<std::size_t>::max() / nz) return std::numeric_limits<std::size_t>::max();
    s *= nz;
  }
  return s;
}

Distribution uniform_product(const SymmetricGraph& g, int n) {
  if (n < 1) throw InvalidInput("uniform_product: palette must be >= 1");
  Distribution d;
  d.palette = n;
  d.vertices = g.size();
  d.product = true;
  d.marginals.assign(static_cast<std::size_t>(g.size()), std::vector<Rational>(static_cast<std::size_t>(n), Rational(1, n)));
  return d;
}

Distribution point_mass(const Assignment& c, int n) {
  Distribution d;
  d.palette = n;
  d.vertices = static_cast<int>(c.size());
  d.atoms.emplace(c, Rational(1));
  return d;
}

Distribution to_explicit(const Distribution& d, std::size_t bound) {
  if (!d.product) return d;
  const std::size_t size = d.explicit_size();
  if (size > bound)
    throw BoundExceeded("distribution has " + (size == std::numeric_limits<std::size_t>::max() ? std::string("too many") : std::to_string(size)) +
                        " atoms, bound is " + std::to_string(bound) + "; use sampling mode");
  Distribution out;
  out.palette = d.palette;
  out.vertices = d.vertices;
  std::vector<std::pair<Assignment, Rational>> layer{{Assignment{}, Rational(1)}};
  for (const auto& mv : d.marginals) {
    std::vector<std::pair<Assignment, Rational>> next;
    next.reserve(layer.size() * mv.size());
    for (const auto& [a, m] : layer) {
      for (std::size_t col = 0; col < mv.size(); ++col) {
        if (mv[col] == 0) continue;
        Assignment b = a;
        b.push_back(static_cast<int>(col) + 1);
        next.emplace_back(std::move(b), m * mv[col]);
      }
    }
    layer = std::move(next);
  }
  for (auto& [a, m] : layer) out.atoms.emplace(std::move(a), std::move(m));
  return out;
}

Distribution pushforward(const Distribution& d, const AssignmentMap& op, int out_palette, std::size_t bound,
                         unsigned jobs) {
  const Distribution src = to_explicit(d, bound);
  std::vector<const std::pair<const Assignment, Rational>*> items;
  items.reserve(src.atoms.size());
  for (const auto& kv : src.atoms) items.push_back(&kv);
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(items.size(), 4 * std::max(1u, jobs)));
  std::vector<std::map<Assignment, Rational>> partial(chunks);
  parallel_for(chunks, jobs, [&](std::size_t ch) {
    const std::size_t lo = items.size() * ch / chunks;
    const std::size_t hi = items.size() * (ch + 1) / chunks;
    for (std::size_t i = lo; i < hi; ++i) partial[ch][op(items[i]->first)] += items[i]->second;
  });
  Distribution out;
  out.palette = out_palette;
  out.vertices = d.vertices;
  for (auto& part : partial)
    for (auto& [a, m] : part) out.atoms[a] += m;
  return out;
}

Rational weight(const SymmetricGraph& g, const Distribution& d) {
  Rational total = 0;
  for (int ei : g.orbit_representatives()) {
    const auto [u, v] = g.edges()[static_cast<std::size_t>(ei)];
    if (d.product) {
      const auto& mu = d.marginals[static_cast<std::size_t>(u)];
      const auto& mv = d.marginals[static_cast<std::size_t>(v)];
      for (std::size_t col = 0; col < mu.size(); ++col) total += mu[col] * mv[col];
    } else {
      for (const auto& [a, m] : d.atoms)
        if (a[static_cast<std::size_t>(u)] == a[static_cast<std::size_t>(v)]) total += m;
    }
  }
  return total;
}

WeightEstimate sample_weight(const SymmetricGraph& g, const Distribution& d, const AssignmentMap& op,
                             std::size_t samples, std::uint64_t seed) {
  if (!d.product) throw InvalidInput("sampling mode needs a product-form distribution");
  std::mt19937_64 rng(seed);
  std::vector<std::discrete_distribution<int>> pick;
  for (const auto& mv : d.marginals) {
    std::vector<double> w;
    for (const auto& p : mv) w.push_back(p.convert_to<double>());
    pick.emplace_back(w.begin(), w.end());
  }
  std::size_t hits = 0;
  Assignment a(static_cast<std::size_t>(d.vertices));
  for (std::size_t s = 0; s < samples; ++s) {
    for (std::size_t v = 0; v < a.size(); ++v) a[v] = pick[v](rng) + 1;
    const Assignment b = op ? op(a) : a;
    for (int ei : g.orbit_representatives()) {
      const auto [u, v] = g.edges()[static_cast<std::size_t>(ei)];
      hits += b[static_cast<std::size_t>(u)] == b[static_cast<std::size_t>(v)] ? 1 : 0;
    }
  }
  WeightEstimate est;
  est.samples = samples;
  est.seed = seed;
  est.value = samples == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(samples);
  return est;
}

std::vector<Assignment> proper_colorings(const SymmetricGraph& g, int n, std::size_t bound, unsigned jobs) {
  const int nv = g.size();
  if (nv == 0) return {Assignment{}};
  if (n < 1) return {};
  std::vector<std::vector<Assignment>> parts(static_cast<std::size_t>(n));
  std::vector<std::size_t> counts(static_cast<std::size_t>(n), 0);
  parallel_for(static_cast<std::size_t>(n), jobs, [&](std::size_t first) {
    Assignment c(static_cast<std::size_t>(nv), 0);
    c[0] = static_cast<int>(first) + 1;
    auto& out = parts[first];
    std::function<void(int)> rec = [&](int v) {
      if (v == nv) {
        if (out.size() >= bound) throw BoundExceeded("more than " + std::to_string(bound) + " proper colourings");
        out.push_back(c);
        return;
      }
      for (int col = 1; col <= n; ++col) {
        bool ok = true;
        for (int u : g.neighbors(v))
          if (u < v && c[static_cast<std::size_t>(u)] == col) {
            ok = false;
            break;
          }
        if (!ok) continue;
        c[static_cast<std::size_t>(v)] = col;
        rec(v + 1);
      }
      c[static_cast<std::size_t>(v)] = 0;
    };
    rec(1);
  });
  std::vector<Assignment> all;
  for (auto& p : parts) {
    if (all.size() + p.size() > bound) throw BoundExceeded("more than " + std::to_string(bound) + " proper colourings");
    for (auto& a : p) all.push_back(std::move(a));
  }
  return all;
}

Distribution proper_coloring_measure(const SymmetricGraph& g, int n, std::size_t bound, unsigned jobs) {
  const auto all = proper_colorings(g, n, bound, jobs);
  if (all.empty()) throw Infeasible("no proper " + std::to_string(n) + "-colouring exists");
  Distribution d;
  d.palette = n;
  d.vertices = g.size();
  const Rational mass(1, static_cast<long long>(all.size()));
  for (const auto& a : all) d.atoms.emplace(a, mass);
  if (!is_invariant(g, d)) throw InternalError("uniform proper-colouring measure failed the invariance check");
  if (weight(g, d) != 0) throw InternalError("uniform proper-colouring measure has nonzero weight");
  return d;
}

bool is_invariant(const SymmetricGraph& g, const Distribution& d) {
  if (d.product) {
    for (const auto& perm : g.generators())
      for (std::size_t v = 0; v < perm.size(); ++v)
        if (d.marginals[v] != d.marginals[static_cast<std::size_t>(perm[v])]) return false;
    return true;
  }
  for (const auto& perm : g.generators()) {
    std::map<Assignment, Rational> moved;
    for (const auto& [a, m] : d.atoms) moved[act(perm, a)] += m;
    if (moved != d.atoms) return false;
  }
  return true;
}

std::string assignment_string(const Assignment& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + ")";
}

nlohmann::json to_json(const Distribution& d) {
  nlohmann::json j{{"palette", d.palette}, {"vertices", d.vertices}};
  if (d.product) {
    nlohmann::json m = nlohmann::json::array();
    for (const auto& mv : d.marginals) {
      nlohmann::json row = nlohmann::json::array();
      for (const auto& p : mv) row.push_back(to_string(p));
      m.push_back(row);
    }
    j["form"] = "product";
    j["marginals"] = m;
  } else {
    nlohmann::json atoms = nlohmann::json::array();
    for (const auto& [a, mass] : d.atoms) atoms.push_back({{"assignment", a}, {"mass", to_string(mass)}});
    j["form"] = "explicit";
    j["atoms"] = atoms;
  }
  j["total_mass"] = to_string(d.total_mass());
  return j;
}

}  // namespace vh
