// SPDX-License-Identifier: Apache-2.0
#include "vhtk/hierarchy.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "vhtk/error.hpp"
#include "vhtk/links.hpp"
#include "vhtk/signature.hpp"

namespace vh {

namespace {

const Polyhedron& model_of(const HierarchyContext& ctx, const PolyhedronCopy& c) {
  return ctx.catalog->models[static_cast<std::size_t>(c.polyhedron)];
}

std::vector<std::vector<std::pair<CubeId, int>>> coface_lists(const CubeComplex& x) {
  // (coface, 2 * axis + side)
  std::vector<std::vector<std::pair<CubeId, int>>> out(x.size());
  for (CubeId c = 0; c < x.size(); ++c)
    for (int a = 0; a < x.dim(c); ++a)
      for (int s = 0; s < 2; ++s) out[x.face(c, a, s).target].emplace_back(c, 2 * a + s);
  return out;
}

CubeMap compose(const CubeMap& second, const CubeMap& first) {
  CubeMap out;
  for (std::size_t c = 0; c < first.size(); ++c) {
    const CubeId mid = first.target[c];
    out.target.push_back(second.target[mid]);
    out.axes.push_back(second.axes[mid].after(first.axes[c]));
  }
  return out;
}

}  // namespace

std::vector<CubeId> HierarchyState::instance_cells(const HierarchyContext& ctx, std::size_t i) const {
  const FacetInstance& in = instances[i];
  const PolyhedronCopy& cp = copies[static_cast<std::size_t>(in.copy)];
  std::vector<CubeId> out;
  for (CubeId c : model_of(ctx, cp).pattern.strata[static_cast<std::size_t>(in.slot)].cells)
    out.push_back(from_base.target[cp.offset + c]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

HierarchyState assemble_base(const HierarchyContext& ctx, const std::vector<Integer>& omega) {
  const GluingSystem& sys = *ctx.system;
  const SplitCatalog& cat = *ctx.catalog;
  if (omega.size() != sys.variables.size()) throw InvalidInput("assemble_base: weight vector has the wrong length");
  if (std::all_of(omega.begin(), omega.end(), [](const Integer& w) { return w == 0; }))
    throw InvalidInput("assemble_base: zero weight vector");
  for (const auto& w : omega)
    if (w < 0) throw InvalidInput("assemble_base: negative weight");
  if (!sys.satisfied_by(omega)) throw InvalidInput("assemble_base: weights violate the gluing equations");

  HierarchyState s;
  s.level = sys.palette;
  s.palette = sys.palette;
  CubeComplex& v = s.v.complex;
  CubeMap nu;
  const CubeMap& split_to_sd = *cat.split.pattern.immersion;
  for (std::size_t var = 0; var < sys.variables.size(); ++var) {
    const auto& cls = sys.variables[var];
    for (Integer i = 0; i < omega[var]; ++i) {
      PolyhedronCopy cp{static_cast<int>(var), cls.polyhedron, cls.representative, static_cast<CubeId>(v.size())};
      const std::size_t copy_index = s.copies.size();
      const Polyhedron& model = cat.models[static_cast<std::size_t>(cls.polyhedron)];
      const CubeMap& lift = cat.lifts[static_cast<std::size_t>(cls.polyhedron)];
      const std::string prefix = "P" + std::to_string(copy_index) + ":";
      for (CubeId m = 0; m < model.complex().size(); ++m) {
        v.add_cube(prefix + model.complex().name(m), model.complex().dim(m));
        const CubeId sc = lift.target[m];
        nu.target.push_back(split_to_sd.target[sc]);
        nu.axes.push_back(split_to_sd.axes[sc].after(lift.axes[m]));
      }
      for (CubeId m = 0; m < model.complex().size(); ++m)
        for (int a = 0; a < model.complex().dim(m); ++a)
          for (int side = 0; side < 2; ++side) {
            const FaceRecord& f = model.complex().face(m, a, side);
            v.set_face(cp.offset + m, a, side, cp.offset + f.target, f.map);
          }
      const auto& slots = cat.slots[static_cast<std::size_t>(cls.polyhedron)];
      for (std::size_t sl = 0; sl < slots.size(); ++sl) {
        FacetInstance in;
        in.copy = static_cast<int>(copy_index);
        in.slot = static_cast<int>(sl);
        in.edge = slots[sl].edge;
        in.wall = slots[sl].wall;
        in.color = cp.coloring[static_cast<std::size_t>(in.wall)];
        in.up = slots[sl].up;
        in.key = cls.slot_keys[sl];
        s.instances.push_back(std::move(in));
      }
      s.copies.push_back(std::move(cp));
    }
  }
  v.validate();
  s.base_size = v.size();
  s.from_base = CubeMap::identity(v);
  s.v.immersion = std::move(nu);
  s.v.strata.resize(static_cast<std::size_t>(s.palette));
  for (int c = 1; c <= s.palette; ++c) s.v.strata[static_cast<std::size_t>(c - 1)].label = std::to_string(c);
  for (std::size_t i = 0; i < s.instances.size(); ++i) {
    auto cells = s.instance_cells(ctx, i);
    auto& st = s.v.strata[static_cast<std::size_t>(s.instances[i].color - 1)].cells;
    st.insert(st.end(), cells.begin(), cells.end());
  }
  for (auto& st : s.v.strata) {
    std::sort(st.cells.begin(), st.cells.end());
    st.cells.erase(std::unique(st.cells.begin(), st.cells.end()), st.cells.end());
  }
  s.v.install_collars();
  return s;
}

bool DegreeReport::zero() const {
  return std::all_of(classes.begin(), classes.end(), [](const DegreeEntry& e) { return e.degree() == 0; });
}

namespace {

// Connected components of stratum cells under the face relation.
std::vector<int> stratum_components(const CubeComplex& x, const Stratum& st, int* count) {
  std::vector<int> parent(x.size(), -1);
  for (CubeId c : st.cells) parent[c] = static_cast<int>(c);
  auto find = [&](int c) {
    while (parent[static_cast<std::size_t>(c)] != c) {
      parent[static_cast<std::size_t>(c)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(c)])];
      c = parent[static_cast<std::size_t>(c)];
    }
    return c;
  };
  for (CubeId c : st.cells)
    for (int a = 0; a < x.dim(c); ++a)
      for (int s = 0; s < 2; ++s) {
        const int r1 = find(static_cast<int>(c));
        const int r2 = find(static_cast<int>(x.face(c, a, s).target));
        if (r1 != r2) parent[static_cast<std::size_t>(std::max(r1, r2))] = std::min(r1, r2);
      }
  std::vector<int> comp(x.size(), -1);
  std::map<int, int> label;
  for (CubeId c : st.cells) {
    const int r = find(static_cast<int>(c));
    auto it = label.try_emplace(r, static_cast<int>(label.size())).first;
    comp[c] = it->second;
  }
  *count = static_cast<int>(label.size());
  return comp;
}

struct BoundaryView {
  std::vector<int> comp;                       // cell -> component or -1
  int components = 0;
  std::vector<std::vector<int>> comp_instances;  // component -> boundary instances of colour j
  std::vector<int> comp_bits;                  // bit 0: has down, bit 1: has up
};

BoundaryView boundary_view(const HierarchyContext& ctx, const HierarchyState& s, int j) {
  BoundaryView b;
  const Stratum& st = s.v.strata[static_cast<std::size_t>(j - 1)];
  b.comp = stratum_components(s.v.complex, st, &b.components);
  b.comp_instances.resize(static_cast<std::size_t>(b.components));
  b.comp_bits.assign(static_cast<std::size_t>(b.components), 0);
  for (std::size_t i = 0; i < s.instances.size(); ++i) {
    const auto& in = s.instances[i];
    if (in.color != j || in.partner >= 0) continue;
    const auto cells = s.instance_cells(ctx, i);
    const int k = b.comp[cells.front()];
    VHTK_CHECK(k >= 0, "boundary instance outside its stratum");
    b.comp_instances[static_cast<std::size_t>(k)].push_back(static_cast<int>(i));
    b.comp_bits[static_cast<std::size_t>(k)] |= in.up ? 2 : 1;
  }
  return b;
}

}  // namespace

DegreeReport boundary_degree(const HierarchyContext& ctx, const HierarchyState& s, int j) {
  DegreeReport r;
  r.level = j;
  if (j < 1 || j > s.level) return r;
  const BoundaryView b = boundary_view(ctx, s, j);
  std::map<std::string, DegreeEntry> by_key;
  for (int k = 0; k < b.components; ++k)
    for (int i : b.comp_instances[static_cast<std::size_t>(k)]) {
      const auto& in = s.instances[static_cast<std::size_t>(i)];
      auto& e = by_key[in.key];
      e.key = in.key;
      e.facet = ctx.catalog->facet_class(in.edge);
      if (b.comp_bits[static_cast<std::size_t>(k)] == 3) ++e.ambiguous;
      else if (in.up) ++e.up;
      else ++e.down;
    }
  for (auto& [k, e] : by_key) r.classes.push_back(std::move(e));
  return r;
}

ConditionReport check_conditions(const HierarchyContext& ctx, const HierarchyState& s, unsigned jobs) {
  ConditionReport r;
  const CubeComplex& v = s.v.complex;
  try {
    const auto conv = check_local_convexity(v, ctx.sd->complex, *s.v.immersion, jobs);
    if (!conv.locally_convex) {
      r.immersion = false;
      r.failures.push_back("(1) " + conv.failure);
    }
  } catch (const InvalidInput& e) {
    r.immersion = false;
    r.failures.push_back(std::string("(1) ") + e.what());
  }

  for (const auto& cp : s.copies) {
    const SignatureTable t(*ctx.gamma, cp.coloring);
    const std::string key = canonical(polyhedron_signature(*ctx.catalog, t, cp.polyhedron));
    if (key != ctx.system->variables[static_cast<std::size_t>(cp.variable)].key) {
      r.polyhedra = false;
      r.failures.push_back("(2) copy at " + v.name(s.from_base.target[cp.offset]) + " has the wrong class");
    }
  }
  for (std::size_t i = 0; i < s.instances.size(); ++i) {
    const auto& in = s.instances[i];
    if (in.partner < 0) continue;
    const auto& other = s.instances[static_cast<std::size_t>(in.partner)];
    if (other.partner != static_cast<int>(i) || other.key != in.key || other.up == in.up ||
        s.instance_cells(ctx, i) != s.instance_cells(ctx, static_cast<std::size_t>(in.partner))) {
      r.polyhedra = false;
      r.failures.push_back("(2) glued facet instance " + std::to_string(i) + " does not match its partner");
    }
  }

  std::vector<std::vector<CubeId>> expected(static_cast<std::size_t>(s.level));
  for (std::size_t i = 0; i < s.instances.size(); ++i) {
    const auto& in = s.instances[i];
    const bool boundary = in.partner < 0;
    if (boundary != (in.color <= s.level)) {
      r.boundary = false;
      r.failures.push_back("(3) facet instance " + std::to_string(i) + " of colour " + std::to_string(in.color) +
                           (boundary ? " is still boundary" : " is interior") + " at level " + std::to_string(s.level));
    }
    if (boundary && in.color <= s.level) {
      const auto cells = s.instance_cells(ctx, i);
      auto& e = expected[static_cast<std::size_t>(in.color - 1)];
      e.insert(e.end(), cells.begin(), cells.end());
    }
  }
  if (static_cast<int>(s.v.strata.size()) != s.level) {
    r.boundary = false;
    r.failures.push_back("(3) stratum count differs from the level");
  } else {
    for (std::size_t i = 0; i < expected.size(); ++i) {
      auto& e = expected[i];
      std::sort(e.begin(), e.end());
      e.erase(std::unique(e.begin(), e.end()), e.end());
      if (e != s.v.strata[i].cells) {
        r.boundary = false;
        r.failures.push_back("(3) stratum " + s.v.strata[i].label + " is not the union of its boundary facets");
      }
    }
  }

  std::vector<Integer> counts(ctx.system->variables.size(), 0);
  for (const auto& cp : s.copies) counts[static_cast<std::size_t>(cp.variable)] += 1;
  if (!ctx.system->satisfied_by(counts) || s.copies.empty()) {
    r.equations = false;
    r.failures.push_back("(4) class multiplicities violate the gluing equations");
  }

  const auto pc = check_pattern(s.v, jobs);
  if (!pc.ok) {
    r.pattern = false;
    r.failures.push_back("pattern: " + pc.failure);
  }
  return r;
}

HierarchyState doubled(const HierarchyContext& ctx, const HierarchyState& s) {
  (void)ctx;
  HierarchyState d;
  d.level = s.level;
  d.palette = s.palette;
  const CubeComplex* parts[] = {&s.v.complex, &s.v.complex};
  const std::string tags[] = {"0", "1"};
  d.v.complex = disjoint_union(parts, tags);
  const auto n = static_cast<CubeId>(s.v.complex.size());
  const auto nb = static_cast<CubeId>(s.base_size);
  CubeMap nu;
  for (int t = 0; t < 2; ++t)
    for (CubeId c = 0; c < n; ++c) {
      nu.target.push_back(s.v.immersion->target[c]);
      nu.axes.push_back(s.v.immersion->axes[c]);
    }
  d.v.immersion = std::move(nu);
  for (const auto& st : s.v.strata) {
    Stratum t;
    t.label = st.label;
    for (int k = 0; k < 2; ++k)
      for (CubeId c : st.cells) t.cells.push_back(c + static_cast<CubeId>(k) * n);
    d.v.strata.push_back(std::move(t));
  }
  d.v.install_collars();
  d.base_size = 2 * s.base_size;
  for (int k = 0; k < 2; ++k)
    for (CubeId c = 0; c < nb; ++c) {
      d.from_base.target.push_back(s.from_base.target[c] + static_cast<CubeId>(k) * n);
      d.from_base.axes.push_back(s.from_base.axes[c]);
    }
  const int nc = static_cast<int>(s.copies.size());
  const int ni = static_cast<int>(s.instances.size());
  for (int k = 0; k < 2; ++k) {
    for (auto cp : s.copies) {
      cp.offset += static_cast<CubeId>(k) * nb;
      d.copies.push_back(std::move(cp));
    }
  }
  for (int k = 0; k < 2; ++k)
    for (auto in : s.instances) {
      in.copy += k * nc;
      if (in.partner >= 0) in.partner += k * ni;
      d.instances.push_back(std::move(in));
    }
  return d;
}

namespace {

struct ComponentMap {
  std::map<CubeId, std::pair<CubeId, SignedMap>> image;
};

// Tries to build a cell bijection between two boundary components that
// commutes with the immersion and respects strata and facet classes.
std::optional<ComponentMap> match_components(const HierarchyState& s, const std::vector<CubeId>& from,
                                             const std::vector<CubeId>& to, const std::vector<int>& comp,
                                             const std::vector<std::uint64_t>& strata_mask,
                                             const std::vector<std::string>& cell_keys,
                                             const std::vector<std::vector<std::pair<CubeId, int>>>& cofaces) {
  if (from.size() != to.size()) return std::nullopt;
  const CubeComplex& v = s.v.complex;
  const CubeMap& nu = *s.v.immersion;
  const int cf = comp[from.front()];
  const int ct = comp[to.front()];
  auto compatible = [&](CubeId x, CubeId y) {
    return v.dim(x) == v.dim(y) && nu.target[x] == nu.target[y] && strata_mask[x] == strata_mask[y] &&
           cell_keys[x] == cell_keys[y] && comp[x] == cf && comp[y] == ct;
  };
  CubeId seed = from.front();
  for (CubeId c : from)
    if (v.dim(c) > v.dim(seed)) seed = c;
  for (CubeId y0 : to) {
    if (!compatible(seed, y0)) continue;
    ComponentMap m;
    std::set<CubeId> used;
    std::deque<std::pair<CubeId, CubeId>> queue;
    bool ok = true;
    auto assign = [&](CubeId x, CubeId y) {
      auto it = m.image.find(x);
      if (it != m.image.end()) return it->second.first == y;
      if (used.count(y) || !compatible(x, y)) return false;
      m.image.emplace(x, std::pair(y, nu.axes[y].inverse().after(nu.axes[x])));
      used.insert(y);
      queue.emplace_back(x, y);
      return true;
    };
    assign(seed, y0);
    while (ok && !queue.empty()) {
      const auto [x, y] = queue.front();
      queue.pop_front();
      const SignedMap a = m.image.at(x).second;
      for (int k = 0; ok && k < v.dim(x); ++k)
        for (int side = 0; ok && side < 2; ++side) {
          const AxisImage im = a.image[static_cast<std::size_t>(k)];
          ok = assign(v.face(x, k, side).target, v.face(y, im.axis, side ^ static_cast<int>(im.flip)).target);
        }
      for (const auto& [b, slot] : cofaces[x]) {
        if (!ok) break;
        if (comp[b] != cf) continue;
        bool found = false;
        for (const auto& [b2, slot2] : cofaces[y]) {
          if (comp[b2] != ct || nu.target[b2] != nu.target[b]) continue;
          const SignedMap ab = nu.axes[b2].inverse().after(nu.axes[b]);
          const AxisImage im = ab.image[static_cast<std::size_t>(slot / 2)];
          if (2 * im.axis + ((slot % 2) ^ static_cast<int>(im.flip)) != slot2) continue;
          if (assign(b, b2)) {
            found = true;
            break;
          }
        }
        ok = found;
      }
    }
    if (ok && m.image.size() == from.size()) return m;
  }
  return std::nullopt;
}

}  // namespace

GlueStepResult glue_step(const HierarchyContext& ctx, const HierarchyState& input, unsigned jobs) {
  const int j = input.level;
  if (j < 1) throw InvalidInput("glue_step: level is already 0");
  GlueStepResult out;
  out.degree = boundary_degree(ctx, input, j);
  for (const auto& e : out.degree.classes)
    if (e.degree() != 0)
      throw Infeasible("glue_step: facet class " + std::to_string(e.facet) + " has degree " + std::to_string(e.degree()) +
                       " at level " + std::to_string(j));

  HierarchyState s = input;
  BoundaryView b = boundary_view(ctx, s, j);
  bool ambiguous = std::find(b.comp_bits.begin(), b.comp_bits.end(), 3) != b.comp_bits.end();
  if (ambiguous) {
    s = doubled(ctx, s);
    b = boundary_view(ctx, s, j);
    out.doubled = true;
  }
  const CubeComplex& v = s.v.complex;
  const Stratum& st = s.v.strata[static_cast<std::size_t>(j - 1)];

  std::vector<std::uint64_t> mask(v.size(), 0);
  for (std::size_t i = 0; i < s.v.strata.size(); ++i)
    for (CubeId c : s.v.strata[i].cells) mask[c] |= std::uint64_t{1} << i;
  std::vector<std::set<std::string>> key_sets(v.size());
  std::map<std::vector<CubeId>, int> instance_by_cells;
  for (int k = 0; k < b.components; ++k)
    for (int i : b.comp_instances[static_cast<std::size_t>(k)]) {
      const auto cells = s.instance_cells(ctx, static_cast<std::size_t>(i));
      for (CubeId c : cells) key_sets[c].insert(s.instances[static_cast<std::size_t>(i)].key);
      instance_by_cells.emplace(cells, i);
    }
  std::vector<std::string> cell_keys(v.size());
  for (CubeId c = 0; c < v.size(); ++c)
    for (const auto& k : key_sets[c]) cell_keys[c] += k + "\n";

  std::vector<std::vector<CubeId>> comp_cells(static_cast<std::size_t>(b.components));
  for (CubeId c : st.cells) comp_cells[static_cast<std::size_t>(b.comp[c])].push_back(c);
  // Components sorted by their class signature, then by first cell.
  auto comp_signature = [&](int k) {
    std::vector<std::string> keys;
    for (int i : b.comp_instances[static_cast<std::size_t>(k)]) keys.push_back(s.instances[static_cast<std::size_t>(i)].key);
    std::sort(keys.begin(), keys.end());
    std::string sig;
    for (const auto& key : keys) sig += key + "\n";
    return sig;
  };
  std::vector<int> ups, downs, twins;
  for (int k = 0; k < b.components; ++k) {
    const int bits = b.comp_bits[static_cast<std::size_t>(k)];
    if (bits == 2) ups.push_back(k);
    else if (bits == 1) downs.push_back(k);
    else if (bits == 3) twins.push_back(k);
  }
  std::vector<std::string> sigs(static_cast<std::size_t>(b.components));
  for (int k = 0; k < b.components; ++k) sigs[static_cast<std::size_t>(k)] = comp_signature(k);
  auto by_sig = [&](int p, int q) {
    return std::tie(sigs[static_cast<std::size_t>(p)], comp_cells[static_cast<std::size_t>(p)].front()) <
           std::tie(sigs[static_cast<std::size_t>(q)], comp_cells[static_cast<std::size_t>(q)].front());
  };
  std::sort(ups.begin(), ups.end(), by_sig);
  std::sort(downs.begin(), downs.end(), by_sig);

  const auto cofaces = coface_lists(v);
  CellInvolution tau;
  auto add_pair = [&](CubeId x, CubeId y, const SignedMap& a) {
    tau.cells.push_back(x);
    tau.image.push_back(y);
    tau.axes.push_back(a);
    tau.cells.push_back(y);
    tau.image.push_back(x);
    tau.axes.push_back(a.inverse());
  };
  std::vector<char> taken(static_cast<std::size_t>(b.components), 0);
  for (int u : ups) {
    bool matched = false;
    for (int d : downs) {
      if (taken[static_cast<std::size_t>(d)] || sigs[static_cast<std::size_t>(d)] != sigs[static_cast<std::size_t>(u)]) continue;
      auto m = match_components(s, comp_cells[static_cast<std::size_t>(u)], comp_cells[static_cast<std::size_t>(d)],
                                b.comp, mask, cell_keys, cofaces);
      if (!m) continue;
      taken[static_cast<std::size_t>(d)] = 1;
      for (const auto& [x, ya] : m->image) add_pair(x, ya.first, ya.second);
      out.matches.push_back({comp_cells[static_cast<std::size_t>(u)], comp_cells[static_cast<std::size_t>(d)], false});
      matched = true;
      break;
    }
    if (!matched)
      throw Infeasible("glue_step: boundary component at " + v.name(comp_cells[static_cast<std::size_t>(u)].front()) +
                       " has no partner at level " + std::to_string(j));
  }
  for (int d : downs)
    if (!taken[static_cast<std::size_t>(d)])
      throw Infeasible("glue_step: boundary component at " + v.name(comp_cells[static_cast<std::size_t>(d)].front()) +
                       " has no partner at level " + std::to_string(j));
  // Side-exchanging components are glued to their twin in the other half.
  const auto half = static_cast<CubeId>(v.size() / 2);
  for (int k : twins) {
    const auto& cells = comp_cells[static_cast<std::size_t>(k)];
    if (cells.front() >= half) continue;
    std::vector<CubeId> partner;
    for (CubeId c : cells) {
      add_pair(c, c + half, SignedMap::identity(v.dim(c)));
      partner.push_back(c + half);
    }
    out.matches.push_back({cells, partner, true});
  }

  // Pair up the facet instances before the cells move.
  std::map<CubeId, CubeId> image_of;
  for (std::size_t i = 0; i < tau.cells.size(); ++i) image_of[tau.cells[i]] = tau.image[i];
  std::vector<std::pair<int, int>> instance_pairs;
  for (const auto& [cells, i] : instance_by_cells) {
    std::vector<CubeId> img;
    for (CubeId c : cells) img.push_back(image_of.at(c));
    std::sort(img.begin(), img.end());
    auto it = instance_by_cells.find(img);
    if (it == instance_by_cells.end())
      throw InternalError("glue_step: a facet instance is not carried onto a facet instance");
    instance_pairs.emplace_back(i, it->second);
  }

  GlueResult g = glue_pattern(s.v, static_cast<std::size_t>(j - 1), tau);
  HierarchyState next;
  next.level = j - 1;
  next.palette = s.palette;
  next.copies = s.copies;
  next.instances = s.instances;
  next.base_size = s.base_size;
  next.from_base = compose(g.quotient, s.from_base);
  next.v = std::move(g.glued);
  for (auto [a, c] : instance_pairs) {
    next.instances[static_cast<std::size_t>(a)].partner = c;
    next.instances[static_cast<std::size_t>(a)].glued_at = j;
  }
  out.conditions = check_conditions(ctx, next, jobs);
  if (!out.conditions.ok()) {
    std::string msg = "glue_step: conditions fail after gluing level " + std::to_string(j) + ":";
    for (const auto& f : out.conditions.failures) msg += " " + f + ";";
    throw InternalError(msg);
  }
  out.next = std::move(next);
  return out;
}

CoverReport verify_cover(const CubeComplex& v, const CubeComplex& x, const CubeMap& nu) {
  CoverReport r;
  if (nu.size() != v.size()) {
    r.failure = "map size differs from the complex";
    return r;
  }
  if (auto d = combinatorial_defect(v, x, nu); !d.empty()) {
    r.failure = "not combinatorial: " + d;
    return r;
  }
  std::vector<int> fibre(x.size(), 0);
  for (CubeId c = 0; c < v.size(); ++c) ++fibre[nu.target[c]];
  if (x.size() > 0) {
    for (CubeId c = 0; c < x.size(); ++c)
      if (fibre[c] != fibre[0]) {
        r.failure = "fibre over " + x.name(c) + " has " + std::to_string(fibre[c]) + " cubes, over " + x.name(0) +
                    " " + std::to_string(fibre[0]);
        return r;
      }
    r.degree = fibre[0];
  }
  if (r.degree < 1) {
    r.failure = "empty fibres";
    return r;
  }
  const auto vl = all_vertex_links(v);
  const auto xl = all_vertex_links(x);
  std::vector<int> xslot(x.size(), -1);
  for (std::size_t i = 0; i < xl.size(); ++i) xslot[xl[i].base] = static_cast<int>(i);
  for (const auto& lv : vl) {
    const auto& lx = xl[static_cast<std::size_t>(xslot[nu.target[lv.base]])];
    std::vector<int> vmap;
    std::vector<char> hit(lx.vertices.size(), 0);
    bool ok = lv.vertices.size() == lx.vertices.size();
    for (const auto& u : lv.vertices) {
      const LinkVertex img{nu.target[u.edge], u.end ^ static_cast<int>(nu.axes[u.edge].image[0].flip)};
      const int idx = lx.index_of(img);
      if (idx < 0 || hit[static_cast<std::size_t>(idx)]) ok = false;
      else hit[static_cast<std::size_t>(idx)] = 1;
      vmap.push_back(idx);
    }
    if (ok) {
      for (std::size_t d = 0; d < std::max(lv.simplices.size(), lx.simplices.size()); ++d) {
        std::vector<std::vector<int>> a, b;
        if (d < lv.simplices.size())
          for (const auto& s : lv.simplices[d]) {
            std::vector<int> t;
            for (int i : s.vertices) t.push_back(vmap[static_cast<std::size_t>(i)]);
            std::sort(t.begin(), t.end());
            a.push_back(t);
          }
        if (d < lx.simplices.size())
          for (const auto& s : lx.simplices[d]) {
            std::vector<int> t = s.vertices;
            std::sort(t.begin(), t.end());
            b.push_back(t);
          }
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        ok = ok && a == b;
      }
    }
    if (!ok) {
      r.failure = "link at " + v.name(lv.base) + " does not map isomorphically";
      r.degree = 0;
      return r;
    }
  }
  r.ok = true;
  return r;
}

nlohmann::json to_json(const DegreeReport& r) {
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& e : r.classes)
    classes.push_back({{"facet", e.facet},
                       {"signature", nlohmann::json::parse(e.key)},
                       {"up", e.up},
                       {"down", e.down},
                       {"ambiguous", e.ambiguous},
                       {"degree", e.degree()}});
  return {{"level", r.level}, {"zero", r.zero()}, {"classes", classes}};
}

nlohmann::json to_json(const ConditionReport& r) {
  return {{"immersion", r.immersion}, {"polyhedra", r.polyhedra}, {"boundary", r.boundary},
          {"equations", r.equations}, {"pattern", r.pattern},     {"failures", r.failures}};
}

nlohmann::json summary_json(const HierarchyState& s) {
  nlohmann::json dims = nlohmann::json::array();
  const CubeComplex& v = s.v.complex;
  for (int d = 0; d <= std::max(0, v.max_dim()); ++d) dims.push_back(v.cubes_of_dim(d).size());
  nlohmann::json strata = nlohmann::json::array();
  for (const auto& st : s.v.strata) strata.push_back({{"label", st.label}, {"cells", st.cells.size()}});
  int glued = 0;
  for (const auto& in : s.instances) glued += in.partner >= 0 ? 1 : 0;
  return {{"level", s.level},
          {"cells_by_dim", dims},
          {"strata", strata},
          {"copies", s.copies.size()},
          {"facet_instances", s.instances.size()},
          {"glued_instances", glued}};
}

}  // namespace vh
