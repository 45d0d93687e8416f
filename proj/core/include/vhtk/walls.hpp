// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vhtk/cube_complex.hpp"
#include "vhtk/subdivision.hpp"

namespace vh {

/// Midcube (cube, axis): the cube cut in half perpendicular to `axis`.
struct Midcube {
  CubeId cube = kNoCube;
  int axis = 0;
  friend auto operator<=>(const Midcube&, const Midcube&) = default;
};

/// (from) is glued to (to) through the face (face_axis, face_side) of the
/// cube carrying `from`; `flip` reverses the dual coordinate.
struct WallGluing {
  int from = 0;
  int to = 0;
  int face_axis = 0;
  int face_side = 0;
  bool flip = false;
};

struct Wall {
  int id = 0;
  std::vector<int> midcubes;  // global midcube indices, ascending
  std::vector<WallGluing> gluings;
  bool two_sided = true;
  /// Closed sequence of gluing indices whose flips XOR to 1 (one-sided only).
  std::vector<int> obstruction;
  int dim = 0;
  std::vector<CubeId> carrier;  // cubes of X containing a midcube of this wall
};

struct WallSystem {
  std::vector<Midcube> midcubes;
  std::vector<int> first;  // per cube: index of its axis-0 midcube
  std::vector<int> wall_of;
  std::vector<std::int8_t> sign;  // co-orientation per midcube, zeroed on one-sided walls
  std::vector<Wall> walls;

  int midcube(CubeId c, int axis) const { return first[c] + axis; }
  int wall_at(CubeId c, int axis) const { return wall_of[static_cast<std::size_t>(midcube(c, axis))]; }
  std::size_t size() const { return walls.size(); }
  /// The wall dual to an edge of X.
  int dual_wall(CubeId edge) const { return wall_at(edge, 0); }
};

/// Wall components, gluing records, and co-orientations. Rejects non-NPC
/// input with InvalidInput when `require_npc` is set.
WallSystem wall_complex(const CubeComplex& x, bool require_npc = true, unsigned jobs = 1);

/// True when the flips along the obstruction cycle XOR to 1.
bool obstruction_is_inconsistent(const WallSystem& ws, const Wall& w);

/// Cells of the subdivision lying on the wall (its immersed image).
std::vector<CubeId> wall_image(const Subdivision& sd, const WallSystem& ws, int wall);

struct Osculation {
  CubeId vertex = kNoCube;
  CubeId edge1 = kNoCube;
  int end1 = 0;
  CubeId edge2 = kNoCube;
  int end2 = 0;
  int wall1 = 0;
  int wall2 = 0;
  bool direct = false;
};

struct SelfCrossing {
  int wall = 0;
  CubeId cube = kNoCube;
  int axis1 = 0;
  int axis2 = 0;
};

struct InterOsculation {
  int wall1 = 0;
  int wall2 = 0;
  CubeId crossing_cube = kNoCube;
  Osculation osculation;
};

struct SpecialnessReport {
  std::vector<SelfCrossing> self_crossings;
  std::vector<int> one_sided;
  std::vector<Osculation> direct_self_osculations;
  std::vector<Osculation> indirect_self_osculations;  // informational
  std::vector<InterOsculation> inter_osculations;
  bool special = true;
};

/// `flip_walls` reverses the co-orientation of the listed walls before the
/// direct/indirect classification.
SpecialnessReport specialness_report(const CubeComplex& x, const WallSystem& ws,
                                     const std::vector<int>& flip_walls = {});
SpecialnessReport specialness_report(const CubeComplex& x);

/// Crossing graph on walls at radius R.
struct CrossingGraph {
  int walls = 0;
  int radius = 0;
  std::vector<std::pair<int, int>> edges;  // u < v, sorted
  std::vector<std::vector<int>> symmetry;  // wall permutations

  std::vector<std::vector<int>> adjacency() const;
  int max_degree() const;
};

CrossingGraph crossing_graph(const CubeComplex& x, const WallSystem& ws, int radius,
                             const Subdivision* sd = nullptr);

nlohmann::json to_json(const CubeComplex& x, const WallSystem& ws);
nlohmann::json to_json(const CubeComplex& x, const WallSystem& ws, const SpecialnessReport& r);
nlohmann::json to_json(const CrossingGraph& g);

}  // namespace vh
