// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <numeric>
#include <queue>

#include "test_helpers.hpp"
#include "vhtk/error.hpp"
#include "vhtk/polyhedra.hpp"
#include "vhtk/samples.hpp"
#include "vhtk/signature.hpp"

using namespace vh;

namespace {

using Edges = std::vector<std::pair<int, int>>;

bool is_clique(int n, const Edges& e, unsigned set) {
  std::set<std::pair<int, int>> es(e.begin(), e.end());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if ((set >> a & 1u) && (set >> b & 1u) && !es.count({a, b}) && !es.count({b, a})) return false;
  return true;
}

Edges mask_edges(int v, unsigned mask) {
  Edges e;
  int bit = 0;
  for (int a = 0; a < v; ++a)
    for (int b = a + 1; b < v; ++b, ++bit)
      if (mask & (1u << bit)) e.emplace_back(a, b);
  return e;
}

std::map<int, int> dim_counts(const CubeComplex& x) {
  std::map<int, int> m;
  for (CubeId c = 0; c < x.size(); ++c) ++m[x.dim(c)];
  return m;
}

// Connected components of a set of cells through shared faces.
int components(const CubeComplex& x, const std::vector<CubeId>& cells) {
  std::map<CubeId, CubeId> parent;
  for (CubeId c : cells) parent[c] = c;
  std::function<CubeId(CubeId)> root = [&](CubeId c) { return parent[c] == c ? c : parent[c] = root(parent[c]); };
  for (CubeId c : cells)
    for (int a = 0; a < x.dim(c); ++a)
      for (int s = 0; s < 2; ++s) {
        const CubeId t = x.face(c, a, s).target;
        if (parent.count(t)) parent[root(c)] = root(t);
      }
  std::set<CubeId> roots;
  for (CubeId c : cells) roots.insert(root(c));
  return static_cast<int>(roots.size());
}

// The involution pairing the two preimages of each stratum cell under the
// immersion.
CellInvolution deck_involution(const PatternedComplex& p, std::size_t n) {
  const CubeMap& nu = *p.immersion;
  std::map<CubeId, std::vector<CubeId>> over;
  for (CubeId c : p.strata[n].cells) over[nu.target[c]].push_back(c);
  CellInvolution tau;
  for (const auto& [t, cs] : over) {
    EXPECT_EQ(cs.size(), 2u);
    for (std::size_t i = 0; i < 2; ++i) {
      const CubeId a = cs[i], b = cs[1 - i];
      tau.cells.push_back(a);
      tau.image.push_back(b);
      tau.axes.push_back(nu.axes[b].inverse().after(nu.axes[a]));
    }
  }
  return tau;
}

// Relational ≃ written from the definition.
bool equivalent(const SymmetricGraph& g, int v, const Assignment& c, const Assignment& d) {
  const int cv = c[static_cast<std::size_t>(v)], dv = d[static_cast<std::size_t>(v)];
  if (cv != dv) return false;
  for (int u : g.neighbors(v)) {
    const bool lc = c[static_cast<std::size_t>(u)] < cv, ld = d[static_cast<std::size_t>(u)] < dv;
    if (lc != ld) return false;
    if (lc && !equivalent(g, u, c, d)) return false;
  }
  return true;
}

std::vector<int> bfs_ball(const SymmetricGraph& g, int v, int r) {
  std::vector<int> dist(static_cast<std::size_t>(g.size()), -1);
  std::queue<int> q;
  dist[static_cast<std::size_t>(v)] = 0;
  q.push(v);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int w : g.neighbors(u))
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
        q.push(w);
      }
  }
  std::vector<int> out;
  for (int u = 0; u < g.size(); ++u)
    if (dist[static_cast<std::size_t>(u)] >= 0 && dist[static_cast<std::size_t>(u)] <= r) out.push_back(u);
  return out;
}

nlohmann::json rename_vertices(const nlohmann::json& s, const std::vector<int>& perm) {
  nlohmann::json low = nlohmann::json::array();
  std::vector<std::pair<int, nlohmann::json>> items;
  for (const auto& p : s["lower"])
    items.emplace_back(perm[p[0].get<std::size_t>()], rename_vertices(p[1], perm));
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [u, sig] : items) low.push_back({u, sig});
  return {{"v", perm[s["v"].get<std::size_t>()]}, {"c", s["c"]}, {"lower", low}};
}

std::vector<std::string> splittable_samples() { return {"torus", "rose", "t1", "t2", "t3", "cube1", "cube2", "cube3", "point"}; }

}  // namespace

TEST(Polyhedron, SingleVertexIsInterval) {
  const Polyhedron p = polyhedron_from_graph(1, {});
  EXPECT_EQ(dim_counts(p.complex()), (std::map<int, int>{{0, 2}, {1, 1}}));
  ASSERT_EQ(p.pattern.strata.size(), 1u);
  EXPECT_EQ(p.pattern.strata[0].cells.size(), 1u);
  EXPECT_EQ(p.complex().dim(p.apex), 0);
}

TEST(Polyhedron, EdgeIsSquare) {
  const Polyhedron p = polyhedron_from_graph(2, {{0, 1}});
  EXPECT_EQ(dim_counts(p.complex()), (std::map<int, int>{{0, 4}, {1, 4}, {2, 1}}));
  for (const auto& s : p.pattern.strata) EXPECT_EQ(s.cells.size(), 3u);  // an interval
  EXPECT_EQ(p.face({0, 1}).size(), 1u);                                  // they meet in a point
}

TEST(Polyhedron, TwoIsolatedVerticesShareApex) {
  const Polyhedron p = polyhedron_from_graph(2, {});
  EXPECT_EQ(dim_counts(p.complex()), (std::map<int, int>{{0, 3}, {1, 2}}));
  EXPECT_TRUE(p.face({0, 1}).empty());
  for (const auto& s : p.pattern.strata) EXPECT_EQ(s.cells.size(), 1u);
}

TEST(Polyhedron, RejectsNonSimpleGraphs) {
  EXPECT_THROW(polyhedron_from_graph(2, {{0, 0}}), InvalidInput);
  EXPECT_THROW(polyhedron_from_graph(2, {{0, 1}, {1, 0}}), InvalidInput);
  EXPECT_THROW(polyhedron_from_graph(2, {{0, 2}}), InvalidInput);
}

TEST(Polyhedron, CliqueLatticeOnAllSmallGraphs) {
  for (int n = 1; n <= 4; ++n)
    for (unsigned mask = 0; mask < (1u << (n * (n - 1) / 2)); ++mask) {
      const Edges e = mask_edges(n, mask);
      const Polyhedron p = polyhedron_from_graph(n, e);
      // Oracle: one cell per clique K and subset T of K, of dimension |K - T|.
      std::map<int, int> want;
      for (unsigned k = 0; k < (1u << n); ++k) {
        if (!is_clique(n, e, k)) continue;
        for (unsigned t = k;; t = (t - 1) & k) {
          ++want[std::popcount(k) - std::popcount(t)];
          if (t == 0) break;
        }
      }
      EXPECT_EQ(dim_counts(p.complex()), want) << n << " " << mask;
      EXPECT_NO_THROW(p.complex().validate());
      // Faces are nonempty exactly over cliques.
      for (unsigned k = 1; k < (1u << n); ++k) {
        std::vector<int> vs;
        for (int v = 0; v < n; ++v)
          if (k >> v & 1u) vs.push_back(v);
        EXPECT_EQ(!p.face(vs).empty(), is_clique(n, e, k));
      }
      // The apex is the low corner of every maximal cube.
      for (CubeId c = 0; c < p.complex().size(); ++c) {
        if (!p.pinned_set[c].empty()) continue;
        const Pattern zeros(static_cast<std::size_t>(p.complex().dim(c)), 0);
        EXPECT_EQ(p.complex().corner(c, zeros), p.apex);
      }
      const PatternCheck chk = check_pattern(p.pattern);
      EXPECT_TRUE(chk.ok) << chk.failure;
    }
}

TEST(Polyhedron, FacetIsPolyhedronOfLink) {
  // Facet of v in P(path a-b-c) at b is P(a, c isolated): 5 cells.
  const Polyhedron p = polyhedron_from_graph(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(p.pattern.strata[1].cells.size(), 5u);
  EXPECT_EQ(p.pattern.strata[0].cells.size(), 3u);
}

TEST(Split, TorusAlongOneWall) {
  const CubeComplex x = samples::torus();
  const WallSystem ws = wall_complex(x);
  const Subdivision sd = barycentric_subdivide(x);
  const SplitResult r = split_along_walls(x, ws, sd, {{0}});
  const auto counts = dim_counts(r.pattern.complex);
  EXPECT_EQ(counts.at(2), 4);
  ASSERT_EQ(r.pattern.strata.size(), 1u);
  const Stratum& st = r.pattern.strata[0];
  EXPECT_EQ(components(r.pattern.complex, st.cells), 2);
  int v = 0, e = 0;
  for (CubeId c : st.cells) (r.pattern.complex.dim(c) == 0 ? v : e)++;
  EXPECT_EQ(v, 4);
  EXPECT_EQ(e, 4);
  const PatternCheck chk = check_pattern(r.pattern);
  EXPECT_TRUE(chk.ok) << chk.failure;
}

TEST(Split, RejectsOneSidedWall) {
  const CubeComplex x = samples::klein();
  const WallSystem ws = wall_complex(x);
  const Subdivision sd = barycentric_subdivide(x);
  int bad = -1;
  for (const auto& w : ws.walls)
    if (!w.two_sided) bad = w.id;
  ASSERT_GE(bad, 0);
  EXPECT_THROW(split_along_walls(x, ws, sd, {{bad}}), InvalidInput);
  EXPECT_THROW(split_all(x, ws, sd), InvalidInput);
}

TEST(Split, GlueRoundTripRecoversSubdivision) {
  for (const std::string name : {"torus", "rose", "t2"}) {
    const CubeComplex x = samples::by_name(name);
    const WallSystem ws = wall_complex(x);
    const Subdivision sd = barycentric_subdivide(x);
    for (std::size_t w = 0; w < ws.size(); ++w) {
      const SplitResult r = split_along_walls(x, ws, sd, {{static_cast<int>(w)}});
      const GlueResult g = glue_pattern(r.pattern, 0, deck_involution(r.pattern, 0));
      ASSERT_TRUE(g.glued.immersion.has_value());
      EXPECT_TRUE(is_isomorphism(g.glued.complex, sd.complex, *g.glued.immersion)) << name << " W" << w;
      EXPECT_TRUE(g.glued.strata.empty());
    }
  }
}

TEST(Split, GlueRejectsBadInvolutions) {
  const CubeComplex x = samples::torus();
  const WallSystem ws = wall_complex(x);
  const Subdivision sd = barycentric_subdivide(x);
  const SplitResult r = split_along_walls(x, ws, sd, {{0}});
  CellInvolution tau = deck_involution(r.pattern, 0);
  CellInvolution fixed = tau;
  fixed.image[0] = fixed.cells[0];
  EXPECT_THROW(glue_pattern(r.pattern, 0, fixed), InvalidInput);
  CellInvolution partial = tau;
  partial.cells.pop_back();
  partial.image.pop_back();
  partial.axes.pop_back();
  EXPECT_THROW(glue_pattern(r.pattern, 0, partial), InvalidInput);
  EXPECT_THROW(glue_pattern(r.pattern, 3, tau), InvalidInput);
}

TEST(Catalog, CountsMatchVerticesAndEdges) {
  for (const auto& name : splittable_samples()) {
    const CubeComplex x = samples::by_name(name);
    const WallSystem ws = wall_complex(x);
    const Subdivision sd = barycentric_subdivide(x);
    const SplitCatalog cat = split_all(x, ws, sd);
    EXPECT_EQ(cat.models.size(), x.cubes_of_dim(0).size()) << name;
    EXPECT_EQ(cat.facets.size(), x.cubes_of_dim(1).size()) << name;
    // Each facet class has one slot per edge end.
    std::map<int, int> uses;
    for (const auto& slots : cat.slots)
      for (const auto& s : slots) ++uses[cat.facet_class(s.edge)];
    for (std::size_t f = 0; f < cat.facets.size(); ++f) EXPECT_EQ(uses[static_cast<int>(f)], 2) << name;
    for (std::size_t p = 0; p < cat.models.size(); ++p) {
      EXPECT_EQ(cat.slots[p].size(), cat.links[p].vertices.size()) << name;
      EXPECT_EQ(cat.models[p].pattern.strata.size(), cat.links[p].vertices.size()) << name;
      EXPECT_TRUE(is_isomorphism(cat.models[p].complex(), cat.split.pattern.complex, cat.lifts[p]) ||
                  combinatorial_defect(cat.models[p].complex(), cat.split.pattern.complex, cat.lifts[p]).empty())
          << name;
    }
    std::size_t cells = 0;
    for (const auto& cs : cat.cells) cells += cs.size();
    EXPECT_EQ(cells, cat.split.pattern.complex.size()) << name;
    const PatternCheck chk = check_pattern(cat.split.pattern);
    EXPECT_TRUE(chk.ok) << name << ": " << chk.failure;
  }
}

TEST(Catalog, TorusAndRose) {
  for (const std::string name : {"torus", "rose"}) {
    const CubeComplex x = samples::by_name(name);
    const WallSystem ws = wall_complex(x);
    const Subdivision sd = barycentric_subdivide(x);
    const SplitCatalog cat = split_all(x, ws, sd);
    ASSERT_EQ(cat.models.size(), 1u);
    EXPECT_EQ(cat.facets.size(), 2u);
    EXPECT_EQ(cat.slots[0].size(), 4u);
  }
  // The torus star is a square, the rose star a cone on four points.
  const CubeComplex t = samples::torus();
  const Subdivision sdt = barycentric_subdivide(t);
  const SplitCatalog ct = split_all(t, wall_complex(t), sdt);
  EXPECT_EQ(dim_counts(ct.models[0].complex()), (std::map<int, int>{{0, 9}, {1, 12}, {2, 4}}));
  const CubeComplex r = samples::rose(2);
  const Subdivision sdr = barycentric_subdivide(r);
  const SplitCatalog cr = split_all(r, wall_complex(r), sdr);
  EXPECT_EQ(dim_counts(cr.models[0].complex()), (std::map<int, int>{{0, 5}, {1, 4}}));
}

TEST(Signature, TorusExample) {
  const SymmetricGraph k2(2, {{0, 1}});
  const SignatureTable c(k2, {1, 2}), d(k2, {2, 1});
  EXPECT_EQ(c.wall(1), nlohmann::json::parse(R"({"v":1,"c":2,"lower":[[0,{"v":0,"c":1,"lower":[]}]]})"));
  EXPECT_EQ(c.wall(0), nlohmann::json::parse(R"({"v":0,"c":1,"lower":[]})"));
  EXPECT_NE(c.wall_key(1), d.wall_key(1));
  EXPECT_THROW(SignatureTable(k2, {1, 1}), InvalidInput);
}

TEST(Signature, MatchesRelationalDefinition) {
  for (int n = 1; n <= 4; ++n)
    for (unsigned mask = 0; mask < (1u << (n * (n - 1) / 2)); ++mask) {
      const SymmetricGraph g(n, mask_edges(n, mask));
      const auto cs = proper_colorings(g, g.max_degree() + 1);
      std::vector<SignatureTable> tables;
      for (const auto& c : cs) tables.emplace_back(g, c);
      for (std::size_t a = 0; a < cs.size(); ++a)
        for (std::size_t b = 0; b < cs.size(); ++b)
          for (int v = 0; v < n; ++v)
            ASSERT_EQ(tables[a].wall_key(v) == tables[b].wall_key(v), equivalent(g, v, cs[a], cs[b]));
    }
}

TEST(Signature, EqualSignaturesHaveEqualColours) {
  for (int n = 1; n <= 5; ++n)
    for (unsigned mask = 0; mask < (1u << (n * (n - 1) / 2)); ++mask) {
      const SymmetricGraph g(n, mask_edges(n, mask));
      for (int palette = 1; palette <= std::min(5, g.max_degree() + 2); ++palette) {
        std::vector<std::map<std::string, int>> colour_of(static_cast<std::size_t>(n));
        for (const auto& c : proper_colorings(g, palette)) {
          const SignatureTable t(g, c);
          for (int v = 0; v < n; ++v) {
            auto [it, fresh] = colour_of[static_cast<std::size_t>(v)].emplace(t.wall_key(v), c[static_cast<std::size_t>(v)]);
            ASSERT_EQ(it->second, c[static_cast<std::size_t>(v)]);
          }
        }
      }
    }
}

TEST(Signature, Locality) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const SymmetricGraph g = vh::testing::random_graph(6, 0.4, rng);
    const auto cs = proper_colorings(g, g.max_degree() + 1);
    for (int v = 0; v < g.size(); ++v) {
      std::map<std::vector<int>, std::string> by_ball;
      for (const auto& c : cs) {
        const auto ball_v = bfs_ball(g, v, c[static_cast<std::size_t>(v)] - 1);
        ASSERT_EQ(ball(g, v, c[static_cast<std::size_t>(v)] - 1), ball_v);
        std::vector<int> restricted{c[static_cast<std::size_t>(v)]};
        for (int u : ball_v) restricted.push_back(c[static_cast<std::size_t>(u)]);
        const std::string key = SignatureTable(g, c).wall_key(v);
        auto [it, fresh] = by_ball.emplace(restricted, key);
        ASSERT_EQ(it->second, key);
      }
    }
  }
}

TEST(Signature, Equivariance) {
  std::vector<std::pair<int, Edges>> graphs = {
      {5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}}, {4, {{0, 1}, {1, 2}, {2, 3}}}, {3, {{0, 1}, {1, 2}, {0, 2}}}};
  for (const auto& [n, e] : graphs) {
    // All automorphisms by brute force.
    std::set<std::pair<int, int>> es;
    for (auto [a, b] : e) es.insert({std::min(a, b), std::max(a, b)});
    std::vector<std::vector<int>> autos;
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    do {
      bool ok = true;
      for (auto [a, b] : e) {
        const int x = p[static_cast<std::size_t>(a)], y = p[static_cast<std::size_t>(b)];
        ok = ok && es.count({std::min(x, y), std::max(x, y)});
      }
      if (ok) autos.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    const SymmetricGraph g(n, e, autos);
    for (const auto& c : proper_colorings(g, g.max_degree() + 1)) {
      const SignatureTable t(g, c);
      for (const auto& perm : autos) {
        const SignatureTable moved(g, act(perm, c));
        for (int v = 0; v < n; ++v) {
          EXPECT_EQ(moved.wall(perm[static_cast<std::size_t>(v)]), rename_vertices(t.wall(v), perm));
          EXPECT_EQ(orbit_normal_form(g, act(perm, c), perm[static_cast<std::size_t>(v)]), orbit_normal_form(g, c, v));
        }
      }
    }
  }
}

TEST(Signature, FacetAndPolyhedronClassesOnTorus) {
  const CubeComplex x = samples::torus();
  const WallSystem ws = wall_complex(x);
  const Subdivision sd = barycentric_subdivide(x);
  const SplitCatalog cat = split_all(x, ws, sd);
  const SymmetricGraph g = crossing_symmetric_graph(crossing_graph(x, ws, 0));
  const SignatureTable c(g, {1, 2}), d(g, {2, 1});
  for (std::size_t f = 0; f < cat.facets.size(); ++f) {
    const int w = cat.facet_wall[f];
    EXPECT_EQ(facet_signature(cat, c, static_cast<int>(f)) == facet_signature(cat, d, static_cast<int>(f)),
              c.wall_key(w) == d.wall_key(w));
  }
  EXPECT_NE(canonical(polyhedron_signature(cat, c, 0)), canonical(polyhedron_signature(cat, d, 0)));
  EXPECT_EQ(canonical(polyhedron_signature(cat, c, 0)), canonical(polyhedron_signature(cat, SignatureTable(g, {1, 2}), 0)));
}
