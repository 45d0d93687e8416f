// SPDX-License-Identifier: Apache-2.0
#include "vhtk/stallings.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <limits>
#include <numeric>
#include <set>
#include <tuple>

#include "vhtk/error.hpp"

namespace vh {

// ---------------------------------------------------------------------------
// FoldedGraph

std::size_t FoldedGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& row : out)
    for (int t : row) n += t >= 0 ? 1 : 0;
  return n;
}

std::optional<int> FoldedGraph::read(int from, const Word& w) const {
  int v = from;
  for (char c : w) {
    const int g = generator_of(c);
    if (g < 0 || g >= rank) return std::nullopt;
    const int next = is_inverse_letter(c) ? in[v][g] : out[v][g];
    if (next < 0) return std::nullopt;
    v = next;
  }
  return v;
}

bool FoldedGraph::contains(const Word& w) const {
  const auto end = read(base, free_reduce(w));
  return end && *end == base;
}

namespace {

// Breadth-first search from `start` visiting neighbours in the letter order
// a, A, b, B, ...; records the letter used to reach each vertex.
struct Bfs {
  std::vector<int> order;
  std::vector<int> parent;
  std::vector<char> via;
};

Bfs bfs(const FoldedGraph& z, int start) {
  Bfs r;
  r.parent.assign(static_cast<std::size_t>(z.size()), -2);
  r.via.assign(static_cast<std::size_t>(z.size()), 0);
  r.parent[start] = -1;
  std::deque<int> q{start};
  while (!q.empty()) {
    const int v = q.front();
    q.pop_front();
    r.order.push_back(v);
    for (int g = 0; g < z.rank; ++g)
      for (bool inv : {false, true}) {
        const int w = inv ? z.in[v][g] : z.out[v][g];
        if (w < 0 || r.parent[w] != -2) continue;
        r.parent[w] = v;
        r.via[w] = make_letter(g, inv);
        q.push_back(w);
      }
  }
  return r;
}

}  // namespace

bool FoldedGraph::is_connected() const {
  return size() > 0 && static_cast<int>(bfs(*this, base).order.size()) == size();
}

bool FoldedGraph::is_core() const {
  for (int v = 0; v < size(); ++v) {
    if (v == base) continue;
    int degree = 0;
    for (int g = 0; g < rank; ++g) {
      degree += out[v][g] >= 0 ? 1 : 0;
      degree += in[v][g] >= 0 ? 1 : 0;
    }
    if (degree <= 1) return false;
  }
  return true;
}

std::vector<Word> FoldedGraph::tree_paths() const {
  const Bfs b = bfs(*this, base);
  std::vector<Word> sigma(static_cast<std::size_t>(size()));
  for (int v : b.order)
    if (b.parent[v] >= 0) sigma[v] = sigma[b.parent[v]] + b.via[v];
  return sigma;
}

std::vector<Word> FoldedGraph::generators() const {
  const Bfs b = bfs(*this, base);
  const std::vector<Word> sigma = tree_paths();
  std::vector<Word> gens;
  for (int v : b.order)
    for (int g = 0; g < rank; ++g) {
      const int w = out[v][g];
      if (w < 0) continue;
      const bool tree = (b.parent[w] == v && b.via[w] == make_letter(g, false)) ||
                        (b.parent[v] == w && b.via[v] == make_letter(g, true));
      if (!tree) gens.push_back(free_reduce(sigma[v] + make_letter(g, false) + word_inverse(sigma[w])));
    }
  return gens;
}

FoldedGraph FoldedGraph::from_edges(int rank, int vertices, int base,
                                    const std::vector<std::array<int, 3>>& edges) {
  if (rank < 1) throw InvalidInput("rank must be at least 1");
  if (vertices < 1 || base < 0 || base >= vertices) throw InvalidInput("graph needs a basepoint vertex");
  FoldedGraph z;
  z.rank = rank;
  z.base = base;
  z.out.assign(static_cast<std::size_t>(vertices), std::vector<int>(static_cast<std::size_t>(rank), -1));
  z.in = z.out;
  for (const auto& [from, to, g] : edges) {
    if (from < 0 || from >= vertices || to < 0 || to >= vertices) throw InvalidInput("edge endpoint out of range");
    if (g < 0 || g >= rank) throw InvalidInput("edge label outside the generators");
    if (z.out[from][g] >= 0 || z.in[to][g] >= 0)
      throw InvalidInput("graph is not folded: two edges labelled " + std::string(1, make_letter(g, false)) +
                         " share an endpoint");
    z.out[from][g] = to;
    z.in[to][g] = from;
  }
  if (!z.is_connected()) throw InvalidInput("graph is not connected");
  return z;
}

FoldedGraph fold_and_core(int rank, const std::vector<Word>& words, std::vector<std::string>* notices) {
  if (rank < 1) throw InvalidInput("rank must be at least 1");
  // Petal graph: one closed path at vertex 0 per word.
  int vertices = 1;
  std::vector<std::array<int, 3>> edges;
  for (const Word& raw : words) {
    check_letters(raw, rank);
    Word w = free_reduce(raw);
    if (w != raw && notices) notices->push_back("reduced '" + raw + "' to '" + w + "'");
    if (w.empty()) continue;
    int at = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const int next = i + 1 == w.size() ? 0 : vertices++;
      const int g = generator_of(w[i]);
      if (is_inverse_letter(w[i])) edges.push_back({next, at, g});
      else edges.push_back({at, next, g});
      at = next;
    }
  }

  std::vector<int> uf(static_cast<std::size_t>(vertices));
  std::iota(uf.begin(), uf.end(), 0);
  auto find = [&](int v) {
    while (uf[v] != v) v = uf[v] = uf[uf[v]];
    return v;
  };
  for (bool changed = true; changed;) {
    changed = false;
    std::map<std::pair<int, int>, int> outs, ins;
    for (const auto& [u, v, g] : edges) {
      const int ru = find(u), rv = find(v);
      auto [it, fresh] = outs.emplace(std::pair{ru, g}, rv);
      if (!fresh && find(it->second) != rv) {
        uf[find(it->second)] = rv;
        changed = true;
      }
      auto [jt, fresh2] = ins.emplace(std::pair{find(v), g}, find(u));
      if (!fresh2 && find(jt->second) != find(u)) {
        uf[find(jt->second)] = find(u);
        changed = true;
      }
    }
  }
  std::set<std::array<int, 3>> folded;
  for (const auto& [u, v, g] : edges) folded.insert({find(u), find(v), g});

  // Prune hanging trees away from the basepoint.
  const int base = find(0);
  std::map<int, int> degree;
  degree[base] += 0;
  for (const auto& [u, v, g] : folded) {
    ++degree[u];
    ++degree[v];
  }
  for (bool pruned = true; pruned;) {
    pruned = false;
    for (auto it = folded.begin(); it != folded.end();) {
      const auto [u, v, g] = *it;
      const bool leaf = (u != base && degree[u] == 1) || (v != base && degree[v] == 1);
      if (leaf && u != v) {
        --degree[u];
        --degree[v];
        it = folded.erase(it);
        pruned = true;
      } else {
        ++it;
      }
    }
  }

  // Renumber breadth first from the basepoint.
  std::map<int, std::vector<std::array<int, 3>>> adjacent;
  for (const auto& e : folded) {
    adjacent[e[0]].push_back(e);
    adjacent[e[1]].push_back(e);
  }
  std::map<int, int> index{{base, 0}};
  std::deque<int> q{base};
  while (!q.empty()) {
    const int v = q.front();
    q.pop_front();
    for (int g = 0; g < rank; ++g)
      for (bool inv : {false, true})
        for (const auto& e : adjacent[v]) {
          if (e[2] != g || (inv ? e[1] : e[0]) != v) continue;
          const int w = inv ? e[0] : e[1];
          if (index.emplace(w, static_cast<int>(index.size())).second) q.push_back(w);
        }
  }
  std::vector<std::array<int, 3>> renamed;
  for (const auto& [u, v, g] : folded) renamed.push_back({index.at(u), index.at(v), g});
  FoldedGraph z = FoldedGraph::from_edges(rank, static_cast<int>(index.size()), 0, renamed);
  VHTK_CHECK(z.is_core(), "fold_and_core produced a non-core graph");
  return z;
}

// ---------------------------------------------------------------------------
// Pullbacks

bool PullbackComponent::all_projections_cyclic() const {
  return !projection_cycles.empty() &&
         std::all_of(projection_cycles.begin(), projection_cycles.end(), [](bool b) { return b; });
}

namespace {

using Tuple = std::vector<int>;

bool injective(const Tuple& t) {
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      if (t[i] == t[j]) return false;
  return true;
}

std::optional<Tuple> step(const std::vector<const FoldedGraph*>& f, const Tuple& t, int g, bool inv) {
  Tuple r(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    r[i] = inv ? f[i]->in[t[i]][g] : f[i]->out[t[i]][g];
    if (r[i] < 0) return std::nullopt;
  }
  return r;
}

// Saturating product for bound checks.
std::size_t times(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) return std::numeric_limits<std::size_t>::max();
  return a * b;
}

class Pullback {
 public:
  Pullback(std::vector<const FoldedGraph*> factors, bool same) : f_(std::move(factors)), same_(same) {}

  // Component containing `start`, unless already seen.
  std::optional<PullbackComponent> component(const Tuple& start) {
    if (seen_.count(start)) return std::nullopt;
    PullbackComponent c;
    const bool off = !same_ || injective(start);
    c.off_diagonal = off;
    std::deque<Tuple> q{start};
    seen_.insert(start);
    while (!q.empty()) {
      Tuple t = q.front();
      q.pop_front();
      if (same_)
        VHTK_CHECK(injective(t) == off, "fat diagonal is not a union of pullback components");
      const int rank = f_.front()->rank;
      for (int g = 0; g < rank; ++g)
        for (bool inv : {false, true}) {
          auto next = step(f_, t, g, inv);
          if (!next) continue;
          if (!inv) ++c.edges;
          if (seen_.insert(*next).second) q.push_back(*next);
        }
      c.tuples.push_back(std::move(t));
    }
    std::sort(c.tuples.begin(), c.tuples.end());
    // Each projection is an immersion, hence injective on fundamental groups.
    c.projection_cycles.assign(f_.size(), c.has_cycle());
    return c;
  }

 private:
  std::vector<const FoldedGraph*> f_;
  bool same_;
  std::set<Tuple> seen_;
};

void check_rank(const std::vector<const FoldedGraph*>& f) {
  for (const FoldedGraph* g : f)
    if (g->rank != f.front()->rank) throw InvalidInput("graphs over roses of different rank");
}

// Every tuple of the product in lexicographic order.
template <class Fn>
void for_each_tuple(const std::vector<int>& sizes, bool distinct, Fn&& fn) {
  Tuple t(sizes.size(), 0);
  std::vector<bool> used;
  if (distinct) used.assign(static_cast<std::size_t>(sizes.empty() ? 0 : sizes[0]), false);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == t.size()) {
      fn(t);
      return;
    }
    for (int v = 0; v < sizes[i]; ++v) {
      if (distinct && used[v]) continue;
      t[i] = v;
      if (distinct) used[v] = true;
      self(self, i + 1);
      if (distinct) used[v] = false;
    }
  };
  rec(rec, 0);
}

}  // namespace

std::vector<PullbackComponent> fiber_product(const FoldedGraph& z, int n, std::size_t bound) {
  if (n < 1) throw InvalidInput("fiber product needs n >= 1");
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total = times(total, static_cast<std::size_t>(z.size()));
  if (total > bound)
    throw BoundExceeded(std::to_string(z.size()) + "^" + std::to_string(n) + " tuples exceed the bound");
  Pullback pb(std::vector<const FoldedGraph*>(static_cast<std::size_t>(n), &z), true);
  std::vector<PullbackComponent> out;
  for_each_tuple(std::vector<int>(static_cast<std::size_t>(n), z.size()), false, [&](const Tuple& t) {
    if (auto c = pb.component(t)) out.push_back(std::move(*c));
  });
  return out;
}

std::vector<PullbackComponent> off_diagonal_components(const FoldedGraph& z, int n, std::size_t bound) {
  if (n < 1) throw InvalidInput("fiber product needs n >= 1");
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total = times(total, static_cast<std::size_t>(std::max(0, z.size() - i)));
  if (total > bound) throw BoundExceeded(std::to_string(total) + " injective tuples exceed the bound");
  Pullback pb(std::vector<const FoldedGraph*>(static_cast<std::size_t>(n), &z), true);
  std::vector<PullbackComponent> out;
  for_each_tuple(std::vector<int>(static_cast<std::size_t>(n), z.size()), true, [&](const Tuple& t) {
    if (auto c = pb.component(t)) out.push_back(std::move(*c));
  });
  return out;
}

std::vector<PullbackComponent> mixed_pullback(const FoldedGraph& a, const FoldedGraph& b, std::size_t bound) {
  check_rank({&a, &b});
  if (times(static_cast<std::size_t>(a.size()), static_cast<std::size_t>(b.size())) > bound)
    throw BoundExceeded("pullback tuples exceed the bound");
  Pullback pb({&a, &b}, &a == &b);
  std::vector<PullbackComponent> out;
  for_each_tuple({a.size(), b.size()}, false, [&](const Tuple& t) {
    if (auto c = pb.component(t)) out.push_back(std::move(*c));
  });
  return out;
}

// ---------------------------------------------------------------------------
// Conjugators

namespace {

// Words of pi_1(C, p): one loop per edge of C outside a breadth-first tree.
std::vector<Word> component_loops(const std::vector<const FoldedGraph*>& f, const Tuple& p) {
  std::map<Tuple, Word> path{{p, Word{}}};
  std::set<std::pair<Tuple, int>> tree;
  std::vector<Tuple> order;
  std::deque<Tuple> q{p};
  const int rank = f.front()->rank;
  while (!q.empty()) {
    Tuple t = q.front();
    q.pop_front();
    order.push_back(t);
    for (int g = 0; g < rank; ++g)
      for (bool inv : {false, true}) {
        auto next = step(f, t, g, inv);
        if (!next || path.count(*next)) continue;
        path[*next] = path[t] + make_letter(g, inv);
        tree.insert({inv ? *next : t, g});
        q.push_back(*next);
      }
  }
  std::vector<Word> loops;
  for (const Tuple& t : order)
    for (int g = 0; g < rank; ++g) {
      auto next = step(f, t, g, false);
      if (!next || tree.count({t, g})) continue;
      loops.push_back(free_reduce(path[t] + make_letter(g, false) + word_inverse(path[*next])));
    }
  return loops;
}

bool words_less(const std::vector<Word>& a, const std::vector<Word>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), shortlex_less);
}

}  // namespace

Conjugators conjugators_and_intersections(const PullbackComponent& c, const FoldedGraph& z) {
  if (c.tuples.empty()) throw InvalidInput("empty component");
  const std::size_t n = c.tuples.front().size();
  if (!c.off_diagonal) throw InvalidInput("component meets the fat diagonal");
  if (!c.has_cycle()) throw InvalidInput("degenerate component: a tree has trivial fundamental group");
  const std::vector<Word> sigma = z.tree_paths();

  Conjugators r;
  std::vector<Word> best;
  for (const Tuple& t : c.tuples) {
    std::vector<Word> key;
    for (std::size_t j = 1; j < n; ++j) key.push_back(free_reduce(sigma[t[0]] + word_inverse(sigma[t[j]])));
    if (r.base.empty() || words_less(key, best)) {
      best = key;
      r.base = t;
    }
  }
  const Tuple& p = r.base;
  r.g.assign(n, std::vector<Word>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r.g[i][j] = free_reduce(sigma[p[i]] + word_inverse(sigma[p[j]]));
  r.loops = component_loops(std::vector<const FoldedGraph*>(n, &z), p);
  VHTK_CHECK(!r.loops.empty(), "cyclic component without loops");
  r.a.assign(n, {});
  for (std::size_t i = 0; i < n; ++i)
    for (const Word& gamma : r.loops) r.a[i].push_back(conjugate(sigma[p[i]], gamma));

  std::vector<FoldedGraph> sub;
  for (std::size_t i = 0; i < n; ++i) sub.push_back(fold_and_core(z.rank, r.a[i]));
  r.conjugation_verified = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (const Word& a : r.a[j])
        r.conjugation_verified = r.conjugation_verified && sub[i].contains(conjugate(r.g[i][j], a));
      for (const Word& a : r.a[i])
        r.conjugation_verified = r.conjugation_verified && sub[j].contains(conjugate(word_inverse(r.g[i][j]), a));
    }
  r.cosets_distinct = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      r.cosets_distinct = r.cosets_distinct && !z.contains(word_inverse(r.g[0][i]) + r.g[0][j]);
  return r;
}

HeightCertificate multiplicity_height(const FoldedGraph& z, std::size_t bound) {
  if (!z.is_connected()) throw InvalidInput("graph is not connected");
  if (!z.is_core()) throw InvalidInput("graph is not a core graph");
  HeightCertificate h;
  if (z.has_cycle()) {
    h.height = 1;
    for (int n = 2; n <= z.size(); ++n) {
      h.searched_to = n;
      std::optional<PullbackComponent> good;
      for (auto& c : off_diagonal_components(z, n, bound))
        if (c.all_projections_cyclic()) {
          good = std::move(c);
          break;
        }
      if (!good) break;
      h.height = n;
      h.witness = std::move(good);
    }
  }
  h.termination_checked = off_diagonal_components(z, z.size() + 1, bound).empty();
  VHTK_CHECK(h.termination_checked, "S_{|V|+1} is not empty");
  if (h.witness) {
    h.conjugators = conjugators_and_intersections(*h.witness, z);
    VHTK_CHECK(h.conjugators->conjugation_verified, "conjugation identity failed");
    VHTK_CHECK(h.conjugators->cosets_distinct, "cosets are not essentially distinct");
  }
  return h;
}

// ---------------------------------------------------------------------------
// Malnormality

MalnormalVerdict check_almost_malnormal(const std::vector<FoldedGraph>& subgroups, std::size_t bound) {
  std::vector<const FoldedGraph*> all;
  for (const auto& s : subgroups) {
    if (!s.is_core()) throw InvalidInput("subgroup graph is not a core graph");
    all.push_back(&s);
  }
  if (!all.empty()) check_rank(all);
  MalnormalVerdict v;
  for (std::size_t i = 0; i < subgroups.size() && v.malnormal; ++i)
    for (std::size_t j = 0; j < subgroups.size() && v.malnormal; ++j) {
      const FoldedGraph& a = subgroups[i];
      const FoldedGraph& b = subgroups[j];
      for (const auto& c : mixed_pullback(a, b, bound)) {
        if (!c.off_diagonal || !c.has_cycle()) continue;
        const std::vector<Word> si = a.tree_paths(), sj = b.tree_paths();
        Tuple base;
        Word g;
        for (const Tuple& t : c.tuples) {
          Word cand = free_reduce(sj[t[1]] + word_inverse(si[t[0]]));
          if (base.empty() || shortlex_less(cand, g)) {
            g = cand;
            base = t;
          }
        }
        const Word gamma = component_loops({&a, &b}, base).front();
        v.malnormal = false;
        v.witness = MalnormalWitness{static_cast<int>(i), static_cast<int>(j), g, conjugate(si[base[0]], gamma)};
        break;
      }
    }
  return v;
}

std::size_t intersection_rank(const FoldedGraph& a, const FoldedGraph& b) {
  check_rank({&a, &b});
  Pullback pb({&a, &b}, false);
  const auto c = pb.component({a.base, b.base});
  return c->edges + 1 - c->tuples.size();
}

bool verify_malnormal_witness(const std::vector<FoldedGraph>& subgroups, const MalnormalWitness& w) {
  if (w.i < 0 || w.j < 0 || static_cast<std::size_t>(std::max(w.i, w.j)) >= subgroups.size()) return false;
  const FoldedGraph& hi = subgroups[static_cast<std::size_t>(w.i)];
  const FoldedGraph& hj = subgroups[static_cast<std::size_t>(w.j)];
  const Word x = free_reduce(w.x);
  if (x.empty() || !hi.contains(x) || !hj.contains(conjugate(w.g, x))) return false;
  if (w.i == w.j && hi.contains(w.g)) return false;
  std::vector<Word> conj;
  for (const Word& h : hj.generators()) conj.push_back(conjugate(word_inverse(w.g), h));
  const FoldedGraph k = fold_and_core(hj.rank, conj);
  return k.contains(x) && intersection_rank(hi, k) >= 1;
}

int brute_force_cyclic_height(int rank, const Word& w, int max_len) {
  check_letters(w, rank);
  const Word reduced = free_reduce(w);
  if (reduced.empty()) return 0;
  const FoldedGraph h = fold_and_core(rank, {reduced});
  const Word r = root_of(reduced);
  // Conjugates of <w> by g and g' intersect infinitely iff g r g^-1 and
  // g' r g'^-1 agree up to inversion.
  std::map<Word, std::vector<Word>> buckets;
  for (const Word& g : reduced_words(rank, max_len)) {
    const Word s = conjugate(g, r);
    const Word si = word_inverse(s);
    buckets[shortlex_less(si, s) ? si : s].push_back(g);
  }
  int best = 0;
  for (const auto& [key, gs] : buckets) {
    std::vector<Word> reps;
    for (const Word& g : gs) {
      const bool fresh = std::none_of(reps.begin(), reps.end(),
                                      [&](const Word& rep) { return h.contains(word_inverse(rep) + g); });
      if (fresh) reps.push_back(g);
    }
    best = std::max(best, static_cast<int>(reps.size()));
  }
  return best;
}

// ---------------------------------------------------------------------------
// JSON

namespace {
std::string vertex_name(int v) { return "v" + std::to_string(v); }
}  // namespace

nlohmann::json to_json(const FoldedGraph& z) {
  nlohmann::json j;
  j["rank"] = z.rank;
  j["vertices"] = nlohmann::json::array();
  for (int v = 0; v < z.size(); ++v) j["vertices"].push_back(vertex_name(v));
  j["edges"] = nlohmann::json::array();
  for (int v = 0; v < z.size(); ++v)
    for (int g = 0; g < z.rank; ++g)
      if (z.out[v][g] >= 0)
        j["edges"].push_back({{"from", vertex_name(v)}, {"to", vertex_name(z.out[v][g])}, {"label", g + 1}});
  j["base"] = vertex_name(z.base);
  return j;
}

FoldedGraph folded_graph_from_json(const nlohmann::json& j) {
  try {
    const int rank = j.at("rank").get<int>();
    std::map<std::string, int> index;
    for (const auto& v : j.at("vertices")) {
      const auto name = v.get<std::string>();
      if (!index.emplace(name, static_cast<int>(index.size())).second)
        throw InvalidInput("duplicate vertex '" + name + "'");
    }
    auto lookup = [&](const nlohmann::json& name) {
      auto it = index.find(name.get<std::string>());
      if (it == index.end()) throw InvalidInput("unknown vertex '" + name.get<std::string>() + "'");
      return it->second;
    };
    std::vector<std::array<int, 3>> edges;
    for (const auto& e : j.at("edges")) {
      const int label = e.at("label").get<int>();
      if (label <= 0) throw InvalidInput("edge labels must be positive generator indices");
      edges.push_back({lookup(e.at("from")), lookup(e.at("to")), label - 1});
    }
    return FoldedGraph::from_edges(rank, static_cast<int>(index.size()), lookup(j.at("base")), edges);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed graph: ") + e.what());
  }
}

nlohmann::json to_json(const PullbackComponent& c) {
  nlohmann::json j;
  j["tuples"] = c.tuples;
  j["vertices"] = c.tuples.size();
  j["edges"] = c.edges;
  j["off_diagonal"] = c.off_diagonal;
  j["projection_cycles"] = c.projection_cycles;
  j["cyclic"] = c.has_cycle();
  return j;
}

nlohmann::json to_json(const HeightCertificate& h) {
  nlohmann::json j;
  j["height"] = h.height;
  j["searched_to"] = h.searched_to;
  j["termination_checked"] = h.termination_checked;
  j["witness"] = h.witness ? to_json(*h.witness) : nlohmann::json(nullptr);
  if (h.conjugators) {
    const Conjugators& c = *h.conjugators;
    j["base"] = c.base;
    j["conjugators"] = c.g;
    j["intersections"] = c.a;
    j["loops"] = c.loops;
    j["conjugation_verified"] = c.conjugation_verified;
    j["cosets_distinct"] = c.cosets_distinct;
  }
  return j;
}

nlohmann::json to_json(const MalnormalVerdict& v) {
  nlohmann::json j;
  j["almost_malnormal"] = v.malnormal;
  if (v.witness)
    j["witness"] = {{"i", v.witness->i}, {"j", v.witness->j}, {"g", v.witness->g}, {"x", v.witness->x}};
  else
    j["witness"] = nullptr;
  return j;
}

}  // namespace vh
