// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <map>
#include <numeric>

#include "test_helpers.hpp"
#include "vhtk/error.hpp"
#include "vhtk/samples.hpp"
#include "vhtk/walls.hpp"

using namespace vh;

namespace {

// Two-colours the midcubes of one wall along its gluings, from scratch.
bool two_colourable(const WallSystem& ws, const Wall& w) {
  std::map<int, int> colour;
  colour[w.midcubes.front()] = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& g : w.gluings) {
      auto a = colour.find(g.from), b = colour.find(g.to);
      const int flip = g.flip ? 1 : 0;
      if (a != colour.end() && b == colour.end()) {
        colour[g.to] = a->second ^ flip;
        changed = true;
      } else if (b != colour.end() && a == colour.end()) {
        colour[g.from] = b->second ^ flip;
        changed = true;
      } else if (a != colour.end() && b != colour.end() && (a->second ^ b->second) != flip) {
        return false;
      }
    }
  }
  (void)ws;
  return true;
}

int total_dim(const CubeComplex& x) {
  int s = 0;
  for (CubeId c = 0; c < x.size(); ++c) s += x.dim(c);
  return s;
}

std::vector<std::string> npc_samples() {
  std::vector<std::string> out;
  for (const auto& n : samples::complex_names())
    if (n != "empty-triangle") out.push_back(n);
  return out;
}

}  // namespace

TEST(Walls, TorusHasTwoTwoSidedCircles) {
  const CubeComplex x = samples::torus();
  const WallSystem ws = wall_complex(x);
  ASSERT_EQ(ws.size(), 2u);
  for (const auto& w : ws.walls) {
    EXPECT_TRUE(w.two_sided);
    EXPECT_EQ(w.dim, 1);
    // One midcube of the square and one of an edge: a circle.
    EXPECT_EQ(w.midcubes.size(), 2u);
  }
}

TEST(Walls, RoseHasTwoPointWalls) {
  const WallSystem ws = wall_complex(samples::rose(2));
  ASSERT_EQ(ws.size(), 2u);
  for (const auto& w : ws.walls) {
    EXPECT_TRUE(w.two_sided);
    EXPECT_EQ(w.dim, 0);
    EXPECT_TRUE(w.gluings.empty());
  }
}

TEST(Walls, KleinHasExactlyOneOneSidedWall) {
  const CubeComplex x = samples::klein();
  const WallSystem ws = wall_complex(x);
  ASSERT_EQ(ws.size(), 2u);
  int one_sided = 0;
  for (const auto& w : ws.walls) {
    if (w.two_sided) continue;
    ++one_sided;
    ASSERT_FALSE(w.obstruction.empty());
    EXPECT_TRUE(obstruction_is_inconsistent(ws, w));
    // Transport the sign along the reported cycle by hand.
    int parity = 0;
    for (int gi : w.obstruction) parity ^= w.gluings[static_cast<std::size_t>(gi)].flip ? 1 : 0;
    EXPECT_EQ(parity, 1);
    EXPECT_FALSE(two_colourable(ws, w));
  }
  EXPECT_EQ(one_sided, 1);
}

TEST(Walls, NTorusHasNWalls) {
  for (int n = 1; n <= 3; ++n) {
    const WallSystem ws = wall_complex(samples::ntorus(n));
    EXPECT_EQ(ws.size(), static_cast<std::size_t>(n)) << n;
    for (const auto& w : ws.walls) EXPECT_TRUE(w.two_sided);
  }
}

TEST(Walls, RejectsNonNpc) { EXPECT_THROW(wall_complex(samples::empty_triangle()), InvalidInput); }

TEST(Walls, MidcubesPartitioned) {
  for (const auto& name : npc_samples()) {
    const CubeComplex x = samples::by_name(name);
    const WallSystem ws = wall_complex(x);
    std::size_t sum = 0;
    for (const auto& w : ws.walls) sum += w.midcubes.size();
    EXPECT_EQ(sum, static_cast<std::size_t>(total_dim(x))) << name;
    EXPECT_EQ(ws.midcubes.size(), sum) << name;
    std::vector<int> seen(ws.midcubes.size(), 0);
    for (const auto& w : ws.walls)
      for (int m : w.midcubes) ++seen[static_cast<std::size_t>(m)];
    for (int s : seen) EXPECT_EQ(s, 1) << name;
  }
}

TEST(Walls, SidednessMatchesIndependentTwoColouring) {
  for (const auto& name : npc_samples()) {
    const WallSystem ws = wall_complex(samples::by_name(name));
    for (const auto& w : ws.walls) {
      EXPECT_EQ(w.two_sided, two_colourable(ws, w)) << name << " W" << w.id;
      if (w.two_sided) {
        for (const auto& g : w.gluings)
          EXPECT_EQ(ws.sign[static_cast<std::size_t>(g.to)], ws.sign[static_cast<std::size_t>(g.from)] ^ (g.flip ? 1 : 0));
      } else {
        EXPECT_TRUE(obstruction_is_inconsistent(ws, w));
      }
    }
  }
}

TEST(Walls, GluingRelationFollowsFaceRecords) {
  // m(c,i) ~ m(c',i') exactly when a face of c along j != i lands on c' and
  // carries axis i to i'.
  for (const auto& name : npc_samples()) {
    const CubeComplex x = samples::by_name(name);
    const WallSystem ws = wall_complex(x);
    for (CubeId c = 0; c < x.size(); ++c)
      for (int i = 0; i < x.dim(c); ++i)
        for (int j = 0; j < x.dim(c); ++j) {
          if (j == i) continue;
          for (int s = 0; s < 2; ++s) {
            const FaceRecord& f = x.face(c, j, s);
            const int slot = i < j ? i : i - 1;
            const int i2 = f.map.image[static_cast<std::size_t>(slot)].axis;
            EXPECT_EQ(ws.wall_at(c, i), ws.wall_at(f.target, i2)) << name;
          }
        }
  }
}

TEST(Walls, JobsDoNotChangeWalls) {
  const CubeComplex x = samples::ntorus(4);
  EXPECT_EQ(to_json(x, wall_complex(x, true, 1)), to_json(x, wall_complex(x, true, 8)));
}

TEST(Walls, BarycenterSpannedEqualsWallImages) {
  for (const auto& name : npc_samples()) {
    const CubeComplex x = samples::by_name(name);
    const WallSystem ws = wall_complex(x);
    const Subdivision sd = barycentric_subdivide(x);
    std::set<CubeId> images;
    for (std::size_t w = 0; w < ws.size(); ++w)
      for (CubeId c : wall_image(sd, ws, static_cast<int>(w))) images.insert(c);
    const auto spanned = barycenter_spanned(sd, x);
    const std::set<CubeId> got(spanned.begin(), spanned.end());
    EXPECT_EQ(images, got) << name;
  }
}

TEST(Special, TorusIsSpecialWithIndirectOsculation) {
  const CubeComplex x = samples::torus();
  const SpecialnessReport r = specialness_report(x);
  EXPECT_TRUE(r.special);
  EXPECT_TRUE(r.direct_self_osculations.empty());
  // a0/a1 and b0/b1 meet at the vertex without crossing, with opposite
  // co-orientations.
  EXPECT_EQ(r.indirect_self_osculations.size(), 2u);
  for (const auto& o : r.indirect_self_osculations) EXPECT_FALSE(o.direct);
}

TEST(Special, KleinIsNotSpecial) {
  const SpecialnessReport r = specialness_report(samples::klein());
  EXPECT_FALSE(r.special);
  EXPECT_EQ(r.one_sided.size(), 1u);
}

TEST(Special, CubesAreSpecial) {
  for (int n = 0; n <= 4; ++n) EXPECT_TRUE(specialness_report(samples::standard_cube(n)).special) << n;
}

TEST(Special, VerdictIsListConjunction) {
  for (const auto& name : npc_samples()) {
    const SpecialnessReport r = specialness_report(samples::by_name(name));
    const bool clean = r.self_crossings.empty() && r.one_sided.empty() && r.direct_self_osculations.empty() &&
                       r.inter_osculations.empty();
    EXPECT_EQ(r.special, clean) << name;
    if (r.special) {
      EXPECT_TRUE(r.self_crossings.empty()) << name;
    }
  }
}

TEST(Special, GlobalFlipLeavesWitnessesUnchanged) {
  for (const auto& name : npc_samples()) {
    const CubeComplex x = samples::by_name(name);
    const WallSystem ws = wall_complex(x);
    std::vector<int> all(ws.size());
    std::iota(all.begin(), all.end(), 0);
    const SpecialnessReport a = specialness_report(x, ws);
    const SpecialnessReport b = specialness_report(x, ws, all);
    EXPECT_EQ(a.special, b.special) << name;
    EXPECT_EQ(a.direct_self_osculations.size(), b.direct_self_osculations.size()) << name;
    EXPECT_EQ(a.indirect_self_osculations.size(), b.indirect_self_osculations.size()) << name;
    EXPECT_EQ(a.inter_osculations.size(), b.inter_osculations.size()) << name;
  }
}

TEST(Crossing, RadiusZeroExamples) {
  struct Case {
    std::string name;
    int walls;
    std::size_t edges;
  };
  for (const Case& c : {Case{"torus", 2, 1}, Case{"rose", 2, 0}, Case{"t3", 3, 3}}) {
    const CubeComplex x = samples::by_name(c.name);
    const CrossingGraph g = crossing_graph(x, wall_complex(x), 0);
    EXPECT_EQ(g.walls, c.walls) << c.name;
    EXPECT_EQ(g.edges.size(), c.edges) << c.name;
  }
}

TEST(Crossing, RadiusZeroMeansSharingACube) {
  for (const auto& name : npc_samples()) {
    const CubeComplex x = samples::by_name(name);
    const WallSystem ws = wall_complex(x);
    std::set<std::pair<int, int>> expected;
    for (CubeId c = 0; c < x.size(); ++c)
      for (int i = 0; i < x.dim(c); ++i)
        for (int j = 0; j < x.dim(c); ++j) {
          const int a = ws.wall_at(c, i), b = ws.wall_at(c, j);
          if (a < b) expected.insert({a, b});
        }
    const CrossingGraph g = crossing_graph(x, ws, 0);
    const std::set<std::pair<int, int>> got(g.edges.begin(), g.edges.end());
    EXPECT_EQ(got, expected) << name;
  }
}

TEST(Crossing, MonotoneInRadiusAndLoopFree) {
  for (const auto& name : npc_samples()) {
    const CubeComplex x = samples::by_name(name);
    const WallSystem ws = wall_complex(x);
    std::set<std::pair<int, int>> prev;
    for (int r = 0; r <= 3; ++r) {
      const CrossingGraph g = crossing_graph(x, ws, r);
      std::set<std::pair<int, int>> cur(g.edges.begin(), g.edges.end());
      for (const auto& e : prev) EXPECT_TRUE(cur.count(e)) << name << " R=" << r;
      for (auto [u, v] : g.edges) EXPECT_LT(u, v);
      prev = cur;
    }
  }
}

TEST(Crossing, SymmetriesAreAutomorphisms) {
  for (const auto& name : npc_samples()) {
    const CubeComplex x = samples::by_name(name);
    const CrossingGraph g = crossing_graph(x, wall_complex(x), 0);
    std::set<std::pair<int, int>> edges(g.edges.begin(), g.edges.end());
    for (const auto& perm : g.symmetry) {
      ASSERT_EQ(static_cast<int>(perm.size()), g.walls);
      for (auto [u, v] : g.edges) {
        const int a = perm[static_cast<std::size_t>(u)], b = perm[static_cast<std::size_t>(v)];
        EXPECT_TRUE(edges.count({std::min(a, b), std::max(a, b)})) << name;
      }
    }
  }
}
