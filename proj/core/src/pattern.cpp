// SPDX-License-Identifier: Apache-2.0
#include "vhtk/pattern.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>

#include "vhtk/error.hpp"
#include "vhtk/links.hpp"

namespace vh {

bool Stratum::contains(CubeId c) const { return std::binary_search(cells.begin(), cells.end(), c); }

namespace {

struct Coface {
  CubeId cube;
  int axis;
  int side;
};

std::vector<std::vector<Coface>> coface_index(const CubeComplex& x) {
  std::vector<std::vector<Coface>> out(x.size());
  for (CubeId c = 0; c < x.size(); ++c)
    for (int a = 0; a < x.dim(c); ++a)
      for (int s = 0; s < 2; ++s) out[x.face(c, a, s).target].push_back({c, a, s});
  return out;
}

std::vector<CollarRecord> collars_for(const CubeComplex& x, const std::vector<CubeId>& cells,
                                      const std::vector<std::vector<Coface>>& cofaces, const std::string& label) {
  std::vector<char> inside(x.size(), 0);
  for (CubeId c : cells) inside[c] = 1;
  std::vector<CollarRecord> out;
  for (CubeId c : cells) {
    std::optional<CollarRecord> found;
    for (const auto& cf : cofaces[c]) {
      if (inside[cf.cube]) continue;
      if (found)
        throw InvalidInput("stratum " + label + ": cell " + x.name(c) + " has more than one collar");
      found = CollarRecord{c, cf.cube, cf.axis, cf.side};
    }
    if (!found) throw InvalidInput("stratum " + label + ": cell " + x.name(c) + " has no collar");
    out.push_back(*found);
  }
  return out;
}

bool closed_under_faces(const CubeComplex& x, const std::vector<char>& inside, CubeId* witness) {
  for (CubeId c = 0; c < x.size(); ++c) {
    if (!inside[c]) continue;
    for (int a = 0; a < x.dim(c); ++a)
      for (int s = 0; s < 2; ++s)
        if (!inside[x.face(c, a, s).target]) {
          *witness = c;
          return false;
        }
  }
  return true;
}

// Enumerates all 3^d restriction patterns of a d-cube.
std::vector<Pattern> all_patterns(int d) {
  std::vector<Pattern> out;
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    Pattern p(static_cast<std::size_t>(d));
    std::size_t t = code;
    for (int i = 0; i < d; ++i, t /= 3) {
      const int digit = static_cast<int>(t % 3);
      p[static_cast<std::size_t>(i)] = digit == 2 ? kFree : static_cast<std::int8_t>(digit);
    }
    out.push_back(std::move(p));
  }
  return out;
}

// Face p of a cube lies inside face q.
bool face_within(const Pattern& p, const Pattern& q) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (q[i] != kFree && p[i] != q[i]) return false;
  return true;
}

std::string at_most_one_face(const CubeComplex& x, const std::vector<char>& inside) {
  std::map<int, std::vector<Pattern>> cache;
  for (CubeId c = 0; c < x.size(); ++c) {
    const int d = x.dim(c);
    auto it = cache.find(d);
    if (it == cache.end()) it = cache.emplace(d, all_patterns(d)).first;
    std::vector<const Pattern*> hits;
    for (const auto& p : it->second)
      if (inside[x.resolve(c, p).cube]) hits.push_back(&p);
    if (hits.empty()) continue;
    int maximal = 0;
    for (const Pattern* p : hits) {
      bool covered = false;
      for (const Pattern* q : hits)
        if (q != p && face_within(*p, *q)) covered = true;
      maximal += covered ? 0 : 1;
    }
    if (maximal != 1) return "cube " + x.name(c) + " meets the stratum in more than one face";
  }
  return {};
}

// One level of the recursive check: `cells` (ambient ids) is the
// intersection of the strata in `mask`; every other stratum is restricted.
std::string check_level(const PatternedComplex& p, std::uint64_t mask, std::set<std::uint64_t>& seen,
                        unsigned jobs) {
  if (!seen.insert(mask).second) return {};
  const CubeComplex& ambient = p.complex;
  std::vector<char> base(ambient.size(), 1);
  std::string where = "complex";
  for (std::size_t i = 0; i < p.strata.size(); ++i) {
    if (!(mask >> i & 1U)) continue;
    std::vector<char> in(ambient.size(), 0);
    for (CubeId c : p.strata[i].cells) in[c] = 1;
    for (CubeId c = 0; c < ambient.size(); ++c) base[c] &= in[c];
  }
  if (mask) {
    where = "trace";
    for (std::size_t i = 0; i < p.strata.size(); ++i)
      if (mask >> i & 1U) where += " " + p.strata[i].label;
  }
  std::vector<CubeId> base_cells;
  for (CubeId c = 0; c < ambient.size(); ++c)
    if (base[c]) base_cells.push_back(c);
  const Subcomplex b = extract_subcomplex(ambient, base_cells);
  const auto cofaces = coface_index(b.complex);
  for (std::size_t i = 0; i < p.strata.size(); ++i) {
    if (mask >> i & 1U) continue;
    const Stratum& st = p.strata[i];
    std::vector<CubeId> local;
    for (CubeId c : st.cells)
      if (base[c]) local.push_back(b.local[c]);
    if (local.empty()) continue;
    std::sort(local.begin(), local.end());
    const std::string label = st.label + " in " + where;
    std::vector<char> inside(b.complex.size(), 0);
    for (CubeId c : local) inside[c] = 1;
    CubeId witness = kNoCube;
    if (!closed_under_faces(b.complex, inside, &witness))
      return "stratum " + label + " is not closed under faces at " + b.complex.name(witness);
    const Subcomplex a = extract_subcomplex(b.complex, local);
    const auto conv = check_local_convexity(a.complex, b.complex, a.inclusion, jobs);
    if (!conv.locally_convex) return "stratum " + label + " is not locally convex: " + conv.failure;
    try {
      (void)collars_for(b.complex, local, cofaces, label);
    } catch (const InvalidInput& e) {
      return e.what();
    }
    if (auto msg = at_most_one_face(b.complex, inside); !msg.empty()) return "stratum " + label + ": " + msg;
    if (auto msg = check_level(p, mask | (std::uint64_t{1} << i), seen, jobs); !msg.empty()) return msg;
  }
  return {};
}

// Drops axis k of the source and its image from a signed map.
SignedMap restrict_map(const SignedMap& t, int k) {
  const int dropped = t.image[static_cast<std::size_t>(k)].axis;
  SignedMap out;
  for (int b = 0; b < t.size(); ++b) {
    if (b == k) continue;
    AxisImage im = t.image[static_cast<std::size_t>(b)];
    if (im.axis > dropped) --im.axis;
    out.image.push_back(im);
  }
  return out;
}

}  // namespace

std::vector<CollarRecord> PatternedComplex::compute_collars(std::size_t i) const {
  return collars_for(complex, strata.at(i).cells, coface_index(complex), strata.at(i).label);
}

void PatternedComplex::install_collars() {
  const auto cofaces = coface_index(complex);
  for (auto& st : strata) st.collars = collars_for(complex, st.cells, cofaces, st.label);
}

PatternCheck check_pattern(const PatternedComplex& p, unsigned jobs) {
  if (p.strata.size() > 63) throw InvalidInput("check_pattern: more than 63 strata");
  for (const auto& st : p.strata) {
    if (!std::is_sorted(st.cells.begin(), st.cells.end()) ||
        std::adjacent_find(st.cells.begin(), st.cells.end()) != st.cells.end())
      return {false, "stratum " + st.label + ": cells not strictly ascending"};
    for (CubeId c : st.cells)
      if (c >= p.complex.size()) return {false, "stratum " + st.label + ": cell out of range"};
  }
  std::set<std::uint64_t> seen;
  try {
    const std::string msg = check_level(p, 0, seen, jobs);
    if (!msg.empty()) return {false, msg};
  } catch (const InvalidInput& e) {
    return {false, e.what()};
  }
  return {};
}

Quotient quotient_complex(const CubeComplex& x,
                          const std::vector<std::tuple<CubeId, CubeId, SignedMap>>& pairs) {
  const std::size_t n = x.size();
  std::vector<CubeId> parent(n);
  std::iota(parent.begin(), parent.end(), CubeId{0});
  std::vector<SignedMap> to_parent(n);
  for (CubeId c = 0; c < n; ++c) to_parent[c] = SignedMap::identity(x.dim(c));

  // Returns the root of c with the axis map c -> root, compressing the path.
  auto find = [&](CubeId c) {
    std::vector<CubeId> path;
    while (parent[c] != c) {
      path.push_back(c);
      c = parent[c];
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      const CubeId up = parent[*it];
      if (up != c) {
        to_parent[*it] = to_parent[up].after(to_parent[*it]);
        parent[*it] = c;
      }
    }
    return c;
  };

  for (const auto& [a, b, m] : pairs) {
    if (a >= n || b >= n) throw InvalidInput("quotient: cell out of range");
    if (x.dim(a) != x.dim(b) || m.size() != x.dim(a) || !m.is_permutation())
      throw InvalidInput("quotient: identification of " + x.name(a) + " with " + x.name(b) + " is not a cube isometry");
    const CubeId ra = find(a);
    const CubeId rb = find(b);
    const SignedMap ta = to_parent[a];
    const SignedMap tb = to_parent[b];
    if (ra == rb) {
      if (tb.after(m) != ta)
        throw InvalidInput("quotient: identification folds cell " + x.name(a) + " onto itself");
      continue;
    }
    if (ra < rb) {
      parent[rb] = ra;
      to_parent[rb] = ta.after(m.inverse()).after(tb.inverse());
    } else {
      parent[ra] = rb;
      to_parent[ra] = tb.after(m).after(ta.inverse());
    }
  }

  std::vector<CubeId> root(n);
  std::vector<CubeId> new_id(n, kNoCube);
  Quotient q;
  for (CubeId c = 0; c < n; ++c) {
    root[c] = find(c);
    if (root[c] == c) new_id[c] = q.complex.add_cube(x.name(c), x.dim(c));
  }
  q.map.target.resize(n);
  q.map.axes.resize(n);
  for (CubeId c = 0; c < n; ++c) {
    q.map.target[c] = new_id[root[c]];
    q.map.axes[c] = to_parent[c];
  }
  for (CubeId c = 0; c < n; ++c) {
    if (root[c] != c) continue;
    for (int a = 0; a < x.dim(c); ++a)
      for (int s = 0; s < 2; ++s) {
        const FaceRecord& f = x.face(c, a, s);
        q.complex.set_face(new_id[c], a, s, q.map.target[f.target], to_parent[f.target].after(f.map));
      }
  }
  for (CubeId c = 0; c < n; ++c) {
    if (root[c] == c) continue;
    const SignedMap& t = to_parent[c];
    for (int a = 0; a < x.dim(c); ++a)
      for (int s = 0; s < 2; ++s) {
        const FaceRecord& f = x.face(c, a, s);
        const AxisImage im = t.image[static_cast<std::size_t>(a)];
        const FaceRecord& rf = q.complex.face(new_id[root[c]], im.axis, s ^ static_cast<int>(im.flip));
        const SignedMap direct = to_parent[f.target].after(f.map);
        const SignedMap via_root = rf.map.after(restrict_map(t, a));
        if (rf.target != q.map.target[f.target] || direct != via_root)
          throw InvalidInput("quotient: identification of " + x.name(c) + " does not respect its face (" +
                             std::to_string(a + 1) + "," + std::to_string(s) + ")");
      }
  }
  q.complex.validate();
  return q;
}

GlueResult glue_pattern(const PatternedComplex& p, std::size_t n, const CellInvolution& tau) {
  if (n >= p.strata.size()) throw InvalidInput("glue_pattern: no such stratum");
  const CubeComplex& x = p.complex;
  const Stratum& st = p.strata[n];
  if (tau.cells.size() != tau.image.size() || tau.cells.size() != tau.axes.size())
    throw InvalidInput("glue_pattern: involution tables have different lengths");
  std::vector<int> slot(x.size(), -1);
  for (std::size_t i = 0; i < tau.cells.size(); ++i) {
    const CubeId c = tau.cells[i];
    if (c >= x.size() || !st.contains(c)) throw InvalidInput("glue_pattern: involution acts outside the stratum");
    if (slot[c] >= 0) throw InvalidInput("glue_pattern: cell " + x.name(c) + " listed twice");
    slot[c] = static_cast<int>(i);
  }
  for (CubeId c : st.cells)
    if (slot[c] < 0) throw InvalidInput("glue_pattern: involution undefined on " + x.name(c));
  for (std::size_t i = 0; i < tau.cells.size(); ++i) {
    const CubeId c = tau.cells[i];
    const CubeId t = tau.image[i];
    if (t >= x.size() || !st.contains(t)) throw InvalidInput("glue_pattern: image of " + x.name(c) + " leaves the stratum");
    if (t == c) throw InvalidInput("glue_pattern: involution fixes cell " + x.name(c));
    const auto& back = tau.axes[static_cast<std::size_t>(slot[t])];
    if (tau.image[static_cast<std::size_t>(slot[t])] != c ||
        back.after(tau.axes[i]) != SignedMap::identity(x.dim(c)))
      throw InvalidInput("glue_pattern: map is not an involution at " + x.name(c));
    for (std::size_t j = 0; j < p.strata.size(); ++j)
      if (j != n && p.strata[j].contains(c) != p.strata[j].contains(t))
        throw InvalidInput("glue_pattern: involution moves " + x.name(c) + " across the trace of stratum " +
                           p.strata[j].label);
  }

  std::vector<CollarRecord> collars = st.collars;
  if (collars.size() != st.cells.size()) collars = p.compute_collars(n);
  std::vector<int> collar_of(x.size(), -1);
  for (std::size_t i = 0; i < collars.size(); ++i) collar_of[collars[i].cell] = static_cast<int>(i);

  if (p.immersion) {
    const CubeMap& nu = *p.immersion;
    for (std::size_t i = 0; i < tau.cells.size(); ++i) {
      const CubeId c = tau.cells[i];
      const CubeId t = tau.image[i];
      if (nu.target[c] != nu.target[t] || nu.axes[t].after(tau.axes[i]) != nu.axes[c])
        throw InvalidInput("glue_pattern: involution does not commute with the immersion at " + x.name(c));
      auto side_of = [&](CubeId cell) {
        const CollarRecord& r = collars[static_cast<std::size_t>(collar_of[cell])];
        const AxisImage im = nu.axes[r.collar].image[static_cast<std::size_t>(r.axis)];
        return std::tuple(nu.target[r.collar], im.axis, r.side ^ static_cast<int>(im.flip));
      };
      if (side_of(c) == side_of(t))
        throw InvalidInput("glue_pattern: involution preserves co-orientation at " + x.name(c));
    }
  }

  std::vector<std::tuple<CubeId, CubeId, SignedMap>> pairs;
  for (std::size_t i = 0; i < tau.cells.size(); ++i)
    if (tau.cells[i] < tau.image[i]) pairs.emplace_back(tau.cells[i], tau.image[i], tau.axes[i]);
  Quotient q = quotient_complex(x, pairs);

  GlueResult out;
  out.quotient = q.map;
  out.glued.complex = std::move(q.complex);
  for (std::size_t j = 0; j < p.strata.size(); ++j) {
    if (j == n) continue;
    Stratum s;
    s.label = p.strata[j].label;
    for (CubeId c : p.strata[j].cells) s.cells.push_back(out.quotient.target[c]);
    std::sort(s.cells.begin(), s.cells.end());
    s.cells.erase(std::unique(s.cells.begin(), s.cells.end()), s.cells.end());
    out.glued.strata.push_back(std::move(s));
  }
  if (p.immersion) {
    const CubeMap& nu = *p.immersion;
    CubeMap down;
    down.target.assign(out.glued.complex.size(), kNoCube);
    down.axes.resize(out.glued.complex.size());
    for (CubeId c = 0; c < x.size(); ++c) {
      const CubeId r = out.quotient.target[c];
      // nu(c) = nu_down(r) after (c -> r), so nu_down(r) = nu(c) after (c -> r)^-1.
      const SignedMap m = nu.axes[c].after(out.quotient.axes[c].inverse());
      if (down.target[r] == kNoCube) {
        down.target[r] = nu.target[c];
        down.axes[r] = m;
      } else if (down.target[r] != nu.target[c] || down.axes[r] != m) {
        throw InvalidInput("glue_pattern: immersion does not descend at " + x.name(c));
      }
    }
    out.glued.immersion = std::move(down);
  }
  out.glued.install_collars();
  return out;
}

nlohmann::json to_json(const PatternedComplex& p) {
  nlohmann::json strata = nlohmann::json::array();
  for (const auto& st : p.strata) {
    nlohmann::json cells = nlohmann::json::array();
    for (CubeId c : st.cells) cells.push_back(p.complex.name(c));
    nlohmann::json collars = nlohmann::json::array();
    for (const auto& r : st.collars)
      collars.push_back({{"cell", p.complex.name(r.cell)},
                         {"collar", p.complex.name(r.collar)},
                         {"axis", r.axis + 1},
                         {"side", r.side}});
    strata.push_back({{"label", st.label}, {"cells", cells}, {"collars", collars}});
  }
  nlohmann::json out = {{"complex", p.complex.to_json()}, {"strata", strata}};
  if (p.immersion) {
    nlohmann::json im = nlohmann::json::array();
    for (CubeId c = 0; c < p.immersion->size(); ++c) {
      nlohmann::json perm = nlohmann::json::array(), flips = nlohmann::json::array();
      for (const auto& a : p.immersion->axes[c].image) {
        perm.push_back(a.axis + 1);
        flips.push_back(a.flip ? 1 : 0);
      }
      im.push_back({{"cell", p.complex.name(c)}, {"target", p.immersion->target[c]}, {"perm", perm}, {"flips", flips}});
    }
    out["immersion"] = im;
  }
  return out;
}

}  // namespace vh
