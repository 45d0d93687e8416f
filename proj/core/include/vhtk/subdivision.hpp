// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "vhtk/cube_complex.hpp"

namespace vh {

/// Position of a subdivided cell along one axis of its parent cube.
inline constexpr std::int8_t kLow = 0;   // [0, 1/2]
inline constexpr std::int8_t kHigh = 1;  // [1/2, 1]
inline constexpr std::int8_t kMid = 2;   // {1/2}
inline constexpr std::int8_t kNoSide = -1;

/// A cell of the subdivided (and possibly cut) complex: the parent cube that
/// carries it in its interior, the per-axis position, and for every cut
/// midcube axis the side (in parent coordinates) the cell was separated to.
struct CellKey {
  CubeId parent = kNoCube;
  std::vector<std::int8_t> part;
  std::vector<std::int8_t> side;  // kNoSide unless part == kMid on a cut axis
  friend auto operator<=>(const CellKey&, const CellKey&) = default;

  int dim() const;
  /// Same cell with every side forgotten.
  CellKey uncut() const;
};

std::string cell_suffix(const CellKey& key);

/// The barycentric subdivision of X cut open along a family of midcubes.
/// With an empty cut family this is the plain subdivision.
struct CutComplex {
  CubeComplex complex;
  std::vector<CellKey> keys;
  std::map<CellKey, CubeId> index;

  CubeId find(const CellKey& key) const;
  /// Corner of the parent cube nearest to the cell, when every axis is
  /// determined (all l/h, or cut).
  std::optional<Pattern> parent_corner(CubeId cell) const;
};

using MidcubePredicate = std::function<bool(CubeId cube, int axis)>;
using CellPredicate = std::function<bool(const CellKey& key)>;

/// Builds cells (parent, part, side) for every cube of `x`, keeping those
/// accepted by `keep` (which must describe a subcomplex), and cuts along the
/// midcubes selected by `cut`. The cut family must be a union of walls.
CutComplex cut_subdivision(const CubeComplex& x, const MidcubePredicate& cut,
                           const CellPredicate& keep = {});

/// Plain barycentric subdivision with correspondence tables.
struct Subdivision : CutComplex {
  std::vector<CubeId> barycenter;  // cube of X -> its barycenter vertex
  std::vector<std::size_t> per_parent;  // top-dimensional cells per parent cube
};

Subdivision barycentric_subdivide(const CubeComplex& x);

/// Sends each cell of a cut complex to the uncut cell of the subdivision.
CubeMap uncut_map(const CutComplex& cut, const Subdivision& sd);

/// Cells whose vertices are all barycenters of positive-dimensional cubes.
std::vector<CubeId> barycenter_spanned(const Subdivision& sd, const CubeComplex& x);

}  // namespace vh
