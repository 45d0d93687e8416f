// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

namespace vh {

using CubeId = std::uint32_t;
inline constexpr CubeId kNoCube = static_cast<CubeId>(-1);

/// Image of one source axis under a signed permutation: the target axis
/// (0-based) and whether the coordinate is reversed (x -> 1 - x).
struct AxisImage {
  int axis = 0;
  bool flip = false;
  friend bool operator==(const AxisImage&, const AxisImage&) = default;
  friend auto operator<=>(const AxisImage&, const AxisImage&) = default;
};

/// A signed permutation between the axes of two cubes of equal dimension.
/// image[k] is where source axis k lands.
struct SignedMap {
  std::vector<AxisImage> image;

  static SignedMap identity(int dim);
  int size() const { return static_cast<int>(image.size()); }
  bool is_permutation() const;
  SignedMap inverse() const;
  /// (this after first): apply `first`, then `*this`.
  SignedMap after(const SignedMap& first) const;
  friend bool operator==(const SignedMap&, const SignedMap&) = default;
  friend auto operator<=>(const SignedMap&, const SignedMap&) = default;
};

/// Attaching data for one codimension-one face of a cube: the cube it is
/// glued to and how the remaining axes (ascending, skipping the face axis)
/// map onto the target's axes.
struct FaceRecord {
  CubeId target = kNoCube;
  SignedMap map;
  friend bool operator==(const FaceRecord&, const FaceRecord&) = default;
};

/// Restriction pattern on the axes of a cube: 0 or 1 fixes the coordinate,
/// kFree leaves it free. A pattern with every entry fixed names a corner.
inline constexpr std::int8_t kFree = -1;
using Pattern = std::vector<std::int8_t>;

/// Result of following face records down to the cube that carries a face.
struct ResolvedFace {
  CubeId cube = kNoCube;
  SignedMap map;  // free axes of the pattern (ascending) -> axes of `cube`
  friend bool operator==(const ResolvedFace&, const ResolvedFace&) = default;
};

struct ValidationOptions {
  int max_dim = 8;
};

/// A finite cube complex presented by cubes and face gluings. Self-gluings
/// are allowed, so one square with its sides identified is a torus.
///
/// Every cube of dimension d >= 1 carries 2d face records indexed by
/// (axis, side). The complex is immutable once validated; builders mutate a
/// fresh instance and then call validate().
class CubeComplex {
 public:
  struct Cube {
    std::string name;
    int dim = 0;
    std::vector<FaceRecord> faces;  // index 2 * axis + side
  };

  CubeComplex() = default;

  /// Parses the JSON interchange format and validates it.
  static CubeComplex from_json(const nlohmann::json& doc, const ValidationOptions& opts = {});
  nlohmann::json to_json() const;

  CubeId add_cube(std::string name, int dim);
  void set_face(CubeId cube, int axis, int side, CubeId target, SignedMap map);

  /// Throws InvalidInput naming the first violated invariant.
  void validate(const ValidationOptions& opts = {}) const;

  std::size_t size() const { return cubes_.size(); }
  const Cube& cube(CubeId id) const { return cubes_.at(id); }
  int dim(CubeId id) const { return cubes_[id].dim; }
  const std::string& name(CubeId id) const { return cubes_[id].name; }
  const FaceRecord& face(CubeId id, int axis, int side) const {
    return cubes_[id].faces[static_cast<std::size_t>(2 * axis + side)];
  }
  std::optional<CubeId> find(std::string_view name) const;
  int max_dim() const;
  std::vector<CubeId> cubes_of_dim(int d) const;
  std::vector<CubeId> vertices() const { return cubes_of_dim(0); }

  /// Follows face records for the fixed entries of `pattern`, in ascending
  /// axis order.
  ResolvedFace resolve(CubeId cube, std::span<const std::int8_t> pattern) const;
  /// Same, fixing axes in the given order (used to test the cubical identity).
  ResolvedFace resolve_ordered(CubeId cube, std::span<const std::int8_t> pattern,
                               std::span<const int> order) const;
  CubeId corner(CubeId cube, std::span<const std::int8_t> bits) const {
    return resolve(cube, bits).cube;
  }

 private:
  std::vector<Cube> cubes_;
  std::unordered_map<std::string, CubeId> by_name_;
};

/// A cellular map between cube complexes: each source cube goes to a target
/// cube of the same dimension through a signed axis map.
struct CubeMap {
  std::vector<CubeId> target;
  std::vector<SignedMap> axes;

  std::size_t size() const { return target.size(); }
  static CubeMap identity(const CubeComplex& x);
};

/// Returns an empty string when `f` commutes with every face record of
/// `source`, otherwise a description of the first disagreement.
std::string combinatorial_defect(const CubeComplex& source, const CubeComplex& target,
                                 const CubeMap& f);

/// A combinatorial map that is bijective on cubes.
bool is_isomorphism(const CubeComplex& source, const CubeComplex& target, const CubeMap& f);

/// The subcomplex on `cubes` (must be closed under faces) with its inclusion.
struct Subcomplex {
  CubeComplex complex;
  CubeMap inclusion;          // new ids -> ambient ids
  std::vector<CubeId> local;  // ambient id -> new id or kNoCube
};
Subcomplex extract_subcomplex(const CubeComplex& ambient, std::span<const CubeId> cubes);

/// Disjoint union; cube names get "<tag>:" prefixes when tags are given.
CubeComplex disjoint_union(std::span<const CubeComplex* const> parts,
                           std::span<const std::string> tags = {});

/// All 2^d corner bit patterns of a d-cube, in lexicographic order.
std::vector<Pattern> corner_patterns(int dim);

}  // namespace vh
