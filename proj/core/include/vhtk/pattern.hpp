// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vhtk/cube_complex.hpp"

namespace vh {

/// `cell` is the (axis, side) face of `collar`, the cube of one higher
/// dimension that gives the product neighbourhood.
struct CollarRecord {
  CubeId cell = kNoCube;
  CubeId collar = kNoCube;
  int axis = 0;
  int side = 0;
};

struct Stratum {
  std::string label;
  std::vector<CubeId> cells;  // ascending, closed under faces
  std::vector<CollarRecord> collars;

  bool contains(CubeId c) const;
};

/// A cube complex with an ordered boundary pattern and an optional
/// combinatorial immersion into a reference complex.
struct PatternedComplex {
  CubeComplex complex;
  std::vector<Stratum> strata;
  std::optional<CubeMap> immersion;

  /// Collars for stratum i: for each cell the unique codimension-one coface
  /// outside the stratum. Throws InvalidInput when missing or ambiguous.
  std::vector<CollarRecord> compute_collars(std::size_t i) const;
  void install_collars();
};

struct PatternCheck {
  bool ok = true;
  std::string failure;
};

/// Boundary-pattern axioms: strata are subcomplexes, locally convex, collared,
/// meet every cube in at most one face, and restrict recursively.
PatternCheck check_pattern(const PatternedComplex& p, unsigned jobs = 1);

/// A cellular involution of a stratum: image cell and axis map per cell.
struct CellInvolution {
  std::vector<CubeId> cells;
  std::vector<CubeId> image;
  std::vector<SignedMap> axes;  // axes of cells[i] -> axes of image[i]
};

struct GlueResult {
  PatternedComplex glued;
  CubeMap quotient;  // input cells -> glued cells
};

/// Quotient by an involution of stratum n. The remaining strata descend.
/// Preconditions on tau are checked; violations throw InvalidInput.
GlueResult glue_pattern(const PatternedComplex& p, std::size_t n, const CellInvolution& tau);

/// Quotient of a complex by an arbitrary cell identification: pairs (a, b,
/// map from a's axes to b's axes). Faces of identified cells must agree.
struct Quotient {
  CubeComplex complex;
  CubeMap map;
};
Quotient quotient_complex(const CubeComplex& x, const std::vector<std::tuple<CubeId, CubeId, SignedMap>>& pairs);

nlohmann::json to_json(const PatternedComplex& p);

}  // namespace vh
