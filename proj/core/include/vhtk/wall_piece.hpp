// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vhtk/coloring.hpp"
#include "vhtk/polyhedra.hpp"
#include "vhtk/walls.hpp"

namespace vh {

/// A wall as a cube complex: one cube per midcube of the wall, faces taken
/// from the faces of the carrying cubes. `cells` receives the midcube of X
/// behind every cube.
CubeComplex wall_as_complex(const CubeComplex& x, const WallSystem& ws, int wall,
                            std::vector<Midcube>* cells = nullptr);

/// w^c: the wall cut open along its intersections with the walls of colours
/// 1..c(w)-1, with stratum i the cut along colour i. Built on the
/// subdivision of the wall, so colour 1 gives the subdivided wall with no
/// strata.
struct WallPiece {
  int wall = 0;
  int color = 0;
  std::string key;          // class signature of (w, c)
  std::size_t stabilizer = 1;  // symmetries of the crossing graph fixing the class
  CubeComplex wall_complex;
  SplitResult split;
};

/// With `use_action`, the stabiliser of the class under the crossing
/// graph's symmetry group is counted. Throws InvalidInput on an improper
/// colouring.
WallPiece induced_wall_piece(const CubeComplex& x, const WallSystem& ws, int wall, const SymmetricGraph& gamma,
                             const Assignment& c, bool use_action = false);

/// One piece per class [(w, c)] with c(w) = level, over all proper
/// colourings with `palette` colours.
struct YCatalogEntry {
  Assignment representative;
  WallPiece piece;
};
std::vector<YCatalogEntry> y_catalog(const CubeComplex& x, const WallSystem& ws, const SymmetricGraph& gamma,
                                     int palette, int level, std::size_t bound = kDefaultAtomBound, unsigned jobs = 1);

nlohmann::json to_json(const WallPiece& p);

}  // namespace vh
