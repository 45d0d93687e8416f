// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <queue>

#include "test_helpers.hpp"
#include "vhtk/error.hpp"
#include "vhtk/links.hpp"
#include "vhtk/samples.hpp"
#include "vhtk/subdivision.hpp"

using namespace vh;
using nlohmann::json;

namespace {

// Simple graph view of a link 1-skeleton.
struct LinkGraph {
  int n = 0;
  std::set<std::pair<int, int>> edges;
};

LinkGraph skeleton(const SimplicialLink& l) {
  LinkGraph g;
  g.n = static_cast<int>(l.vertices.size());
  if (!l.simplices.empty())
    for (const auto& s : l.simplices[0])
      g.edges.insert({std::min(s.vertices[0], s.vertices[1]), std::max(s.vertices[0], s.vertices[1])});
  return g;
}

bool connected(const LinkGraph& g) {
  if (g.n == 0) return true;
  std::vector<bool> seen(static_cast<std::size_t>(g.n));
  std::queue<int> q;
  q.push(0);
  seen[0] = true;
  int count = 1;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (auto [a, b] : g.edges) {
      const int w = a == v ? b : b == v ? a : -1;
      if (w >= 0 && !seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        ++count;
        q.push(w);
      }
    }
  }
  return count == g.n;
}

std::size_t count_dim(const CubeComplex& x, int d) { return x.cubes_of_dim(d).size(); }

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

json square_doc() { return samples::standard_cube(2).to_json(); }

}  // namespace

TEST(Validate, SinglePointIsValid) {
  const CubeComplex x = CubeComplex::from_json(json::parse(R"({"cubes":[{"id":"p","dim":0}],"faces":[]})"));
  EXPECT_EQ(x.size(), 1u);
}

TEST(Validate, TorusIsValid) {
  const CubeComplex x = CubeComplex::from_json(samples::torus().to_json());
  EXPECT_EQ(count_dim(x, 0), 1u);
  EXPECT_EQ(count_dim(x, 1), 2u);
  EXPECT_EQ(count_dim(x, 2), 1u);
}

TEST(Validate, FaceDimensionMismatch) {
  json doc = square_doc();
  for (auto& f : doc["faces"])
    if (f["cube"] == "**" && f["axis"] == 1 && f["side"] == 0) {
      f["target"] = "00";
      f["perm"] = json::array();
      f["flips"] = json::array();
    }
  try {
    CubeComplex::from_json(doc);
    FAIL() << "accepted a face of the wrong dimension";
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("face dimension mismatch"), std::string::npos) << e.what();
  }
}

TEST(Validate, DanglingTarget) {
  json doc = square_doc();
  doc["faces"][0]["target"] = "nowhere";
  EXPECT_THROW(CubeComplex::from_json(doc), InvalidInput);
}

TEST(Validate, CubicalIdentityViolationNamesBothPaths) {
  // Edge *0 starts at vertex 00 but the square's other side claims 10.
  json doc = square_doc();
  for (auto& f : doc["faces"])
    if (f["cube"] == "*0" && f["side"] == 0) f["target"] = "10";
  try {
    CubeComplex::from_json(doc);
    FAIL() << "accepted an inconsistent square";
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("cubical identity"), std::string::npos) << e.what();
  }
}

TEST(Validate, ParseErrors) {
  EXPECT_THROW(CubeComplex::from_json(json::parse("[]")), InvalidInput);
  EXPECT_THROW(CubeComplex::from_json(json::parse(R"({"cubes":[{"id":"p"}]})")), InvalidInput);
  EXPECT_THROW(CubeComplex::from_json(json::parse(R"({"cubes":[{"id":"p","dim":0},{"id":"p","dim":0}]})")),
               InvalidInput);
}

TEST(Validate, DimensionLimitIsConfigurable) {
  const json doc = samples::standard_cube(3).to_json();
  EXPECT_THROW(CubeComplex::from_json(doc, ValidationOptions{2}), InvalidInput);
  EXPECT_NO_THROW(CubeComplex::from_json(doc, ValidationOptions{3}));
}

TEST(Validate, JsonRoundTrip) {
  for (const auto& name : samples::complex_names()) {
    const CubeComplex x = samples::by_name(name);
    EXPECT_EQ(CubeComplex::from_json(x.to_json()).to_json(), x.to_json()) << name;
  }
}

// Face maps along two axis orders agree for every cube and pair of fixed axes.
TEST(Validate, IteratedFacesCommuteOnAllSamples) {
  for (const auto& name : samples::complex_names()) {
    const CubeComplex x = samples::by_name(name);
    for (CubeId c = 0; c < x.size(); ++c) {
      const int d = x.dim(c);
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
          for (int si = 0; si < 2; ++si)
            for (int sj = 0; sj < 2; ++sj) {
              Pattern p(static_cast<std::size_t>(d), kFree);
              p[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(si);
              p[static_cast<std::size_t>(j)] = static_cast<std::int8_t>(sj);
              const std::vector<int> ij{i, j}, ji{j, i};
              EXPECT_EQ(x.resolve_ordered(c, p, ij), x.resolve_ordered(c, p, ji)) << name << " " << x.name(c);
            }
    }
  }
}

TEST(Link, TorusVertexIsFourCycle) {
  const CubeComplex x = samples::torus();
  const SimplicialLink l = vertex_link(x, *x.find("v"));
  const LinkGraph g = skeleton(l);
  ASSERT_EQ(g.n, 4);
  EXPECT_EQ(g.edges.size(), 4u);
  std::vector<int> degree(4, 0);
  for (auto [a, b] : g.edges) ++degree[static_cast<std::size_t>(a)], ++degree[static_cast<std::size_t>(b)];
  for (int d : degree) EXPECT_EQ(d, 2);
  EXPECT_TRUE(connected(g));
  // Each edge end appears once: a0, a1, b0, b1.
  std::set<std::pair<std::string, int>> ends;
  for (const auto& lv : l.vertices) ends.insert({x.name(lv.edge), lv.end});
  EXPECT_EQ(ends, (std::set<std::pair<std::string, int>>{{"a", 0}, {"a", 1}, {"b", 0}, {"b", 1}}));
  // Opposite ends of one edge are never adjacent.
  for (auto [p, q] : g.edges)
    EXPECT_NE(l.vertices[static_cast<std::size_t>(p)].edge, l.vertices[static_cast<std::size_t>(q)].edge);
}

TEST(Link, RoseVertexIsFourPoints) {
  const CubeComplex x = samples::rose(2);
  const SimplicialLink l = vertex_link(x, *x.find("v"));
  EXPECT_EQ(l.vertices.size(), 4u);
  EXPECT_TRUE(skeleton(l).edges.empty());
}

TEST(Link, CubeCornerIsSimplex) {
  for (int n = 1; n <= 4; ++n) {
    const CubeComplex x = samples::standard_cube(n);
    const SimplicialLink l = vertex_link(x, *x.find(std::string(static_cast<std::size_t>(n), '0')));
    ASSERT_EQ(static_cast<int>(l.vertices.size()), n);
    for (int k = 1; k < n; ++k) {
      const std::size_t have = static_cast<std::size_t>(k - 1) < l.simplices.size()
                                   ? l.simplices[static_cast<std::size_t>(k - 1)].size()
                                   : 0;
      EXPECT_EQ(static_cast<long>(have), binomial(n, k + 1)) << "n=" << n << " k=" << k;
    }
  }
}

TEST(Link, RejectsNonVertex) {
  const CubeComplex x = samples::torus();
  EXPECT_THROW(vertex_link(x, *x.find("s")), InvalidInput);
}

TEST(Link, AllLinksMatchSingleLinks) {
  for (const auto& name : samples::complex_names()) {
    const CubeComplex x = samples::by_name(name);
    const auto all = all_vertex_links(x);
    const auto verts = x.vertices();
    ASSERT_EQ(all.size(), verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) {
      const SimplicialLink one = vertex_link(x, verts[i]);
      EXPECT_EQ(one.vertices, all[i].vertices) << name;
      EXPECT_EQ(one.simplices.size(), all[i].simplices.size()) << name;
    }
  }
}

TEST(Npc, TorusIsNpc) { EXPECT_TRUE(check_npc(samples::torus()).npc); }

TEST(Npc, PointIsNpc) { EXPECT_TRUE(check_npc(samples::point()).npc); }

TEST(Npc, EmptyTriangleFailsFlag) {
  const CubeComplex x = samples::empty_triangle();
  const NpcReport r = check_npc(x);
  ASSERT_FALSE(r.npc);
  ASSERT_TRUE(r.first_failure.has_value());
  const VertexVerdict& v = r.vertices[*r.first_failure];
  EXPECT_TRUE(v.simplicial);
  EXPECT_FALSE(v.flag);
  ASSERT_EQ(v.missing_clique.size(), 3u);
  // Independent check: the three link vertices are pairwise adjacent and
  // no 2-simplex has exactly these vertices.
  const SimplicialLink l = vertex_link(x, v.vertex);
  const LinkGraph g = skeleton(l);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      EXPECT_TRUE(g.edges.count({std::min(v.missing_clique[i], v.missing_clique[j]),
                                 std::max(v.missing_clique[i], v.missing_clique[j])}));
  std::set<int> clique(v.missing_clique.begin(), v.missing_clique.end());
  if (l.simplices.size() > 1) {
    for (const auto& s : l.simplices[1]) EXPECT_NE(std::set<int>(s.vertices.begin(), s.vertices.end()), clique);
  }
}

TEST(Npc, OverallIsConjunction) {
  for (const auto& name : samples::complex_names()) {
    const NpcReport r = check_npc(samples::by_name(name));
    bool all = true;
    for (const auto& v : r.vertices) all = all && v.simplicial && v.flag;
    EXPECT_EQ(r.npc, all) << name;
  }
}

TEST(Npc, InvariantUnderRelabelling) {
  for (const auto& name : samples::complex_names()) {
    const CubeComplex x = samples::by_name(name);
    const NpcReport a = check_npc(x);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const NpcReport b = check_npc(vh::testing::relabelled(x, seed));
      EXPECT_EQ(a.npc, b.npc) << name;
      auto failures = [](const NpcReport& r) {
        return std::count_if(r.vertices.begin(), r.vertices.end(), [](const auto& v) { return !v.flag || !v.simplicial; });
      };
      EXPECT_EQ(failures(a), failures(b)) << name;
    }
  }
}

TEST(Npc, JobsDoNotChangeReport) {
  const CubeComplex x = samples::ntorus(4);
  EXPECT_EQ(to_json(x, check_npc(x, 1)), to_json(x, check_npc(x, 8)));
}

TEST(Subdivision, Counts) {
  struct Case {
    std::string name;
    std::size_t top, vertices;
    int dim;
  };
  for (const Case& c : {Case{"cube2", 4, 9, 2}, Case{"torus", 4, 4, 2}, Case{"cube1", 2, 3, 1}}) {
    const Subdivision sd = barycentric_subdivide(samples::by_name(c.name));
    EXPECT_EQ(count_dim(sd.complex, c.dim), c.top) << c.name;
    EXPECT_EQ(count_dim(sd.complex, 0), c.vertices) << c.name;
  }
}

TEST(Subdivision, PerParentCountsAreTwoToTheD) {
  for (const auto& name : samples::complex_names()) {
    const CubeComplex x = samples::by_name(name);
    const Subdivision sd = barycentric_subdivide(x);
    std::map<CubeId, std::size_t> top;
    for (CubeId c = 0; c < sd.complex.size(); ++c) {
      const CellKey& k = sd.keys[c];
      if (sd.complex.dim(c) == x.dim(k.parent)) ++top[k.parent];
    }
    std::size_t total_top = 0;
    for (CubeId p = 0; p < x.size(); ++p) {
      EXPECT_EQ(top[p], std::size_t{1} << x.dim(p)) << name << " " << x.name(p);
      EXPECT_EQ(sd.per_parent[p], std::size_t{1} << x.dim(p));
      total_top += top[p];
    }
    // Every d-cube of the subdivision has a parent of dimension >= d.
    for (int d = 0; d <= x.max_dim(); ++d) {
      std::size_t expected = 0;
      for (CubeId p = 0; p < x.size(); ++p)
        if (x.dim(p) >= d)
          expected += static_cast<std::size_t>(binomial(x.dim(p), d)) << d;
      EXPECT_EQ(count_dim(sd.complex, d), expected) << name << " d=" << d;
    }
    (void)total_top;
  }
}

TEST(Subdivision, OutputValidatesAndStaysNpc) {
  for (const auto& name : samples::complex_names()) {
    const CubeComplex x = samples::by_name(name);
    const Subdivision sd = barycentric_subdivide(x);
    EXPECT_NO_THROW(sd.complex.validate()) << name;
    if (check_npc(x).npc) {
      EXPECT_TRUE(check_npc(sd.complex).npc) << name;
    }
  }
}

TEST(Subdivision, BarycentersAreDistinctVertices) {
  const CubeComplex x = samples::ntorus(3);
  const Subdivision sd = barycentric_subdivide(x);
  std::set<CubeId> seen(sd.barycenter.begin(), sd.barycenter.end());
  EXPECT_EQ(seen.size(), x.size());
  for (CubeId b : sd.barycenter) EXPECT_EQ(sd.complex.dim(b), 0);
}

TEST(Convexity, TorusEdgeIsLocallyConvex) {
  const CubeComplex x = samples::torus();
  const std::vector<CubeId> cells{*x.find("v"), *x.find("a")};
  const Subcomplex y = extract_subcomplex(x, cells);
  EXPECT_TRUE(check_local_convexity(y.complex, x, y.inclusion).locally_convex);
}

TEST(Convexity, LShapeInSquareIsNot) {
  const CubeComplex x = samples::standard_cube(2);
  std::vector<CubeId> cells;
  for (const char* n : {"00", "01", "10", "0*", "*0"}) cells.push_back(*x.find(n));
  const Subcomplex y = extract_subcomplex(x, cells);
  const ConvexityReport r = check_local_convexity(y.complex, x, y.inclusion);
  EXPECT_FALSE(r.locally_convex);
  EXPECT_FALSE(r.failure.empty());
}

TEST(Convexity, IdentityIsLocallyConvex) {
  for (const auto& name : {"torus", "rose", "t3", "cube3"}) {
    const CubeComplex x = samples::by_name(name);
    EXPECT_TRUE(check_local_convexity(x, x, CubeMap::identity(x)).locally_convex) << name;
  }
}

TEST(Convexity, NonCombinatorialMapRejected) {
  const CubeComplex x = samples::standard_cube(1);
  CubeMap f = CubeMap::identity(x);
  std::swap(f.target[*x.find("0")], f.target[*x.find("*")]);
  EXPECT_THROW(check_local_convexity(x, x, f), InvalidInput);
}

TEST(DisjointUnion, NamesArePrefixed) {
  const CubeComplex a = samples::torus();
  const CubeComplex* parts[] = {&a, &a};
  const std::string tags[] = {"L", "R"};
  const CubeComplex u = disjoint_union(parts, tags);
  EXPECT_EQ(u.size(), 2 * a.size());
  EXPECT_TRUE(u.find("L:s").has_value());
  EXPECT_TRUE(u.find("R:v").has_value());
  EXPECT_NO_THROW(u.validate());
}
