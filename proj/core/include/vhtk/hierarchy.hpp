// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vhtk/gluing_system.hpp"
#include "vhtk/pattern.hpp"
#include "vhtk/polyhedra.hpp"
#include "vhtk/subdivision.hpp"
#include "vhtk/walls.hpp"

namespace vh {

/// Everything the hierarchy needs to know about X. Holds references only.
struct HierarchyContext {
  const CubeComplex* x = nullptr;
  const WallSystem* walls = nullptr;
  const Subdivision* sd = nullptr;
  const SplitCatalog* catalog = nullptr;
  const SymmetricGraph* gamma = nullptr;
  const GluingSystem* system = nullptr;
};

/// A copy of a model polyhedron inside V, with its representative colouring.
struct PolyhedronCopy {
  int variable = 0;
  int polyhedron = 0;
  Assignment coloring;
  CubeId offset = 0;  // first cell of the copy in the base complex
};

/// A facet of one copy: its slot, colour and class, and the instance it was
/// glued to (or -1 while it is boundary).
struct FacetInstance {
  int copy = 0;
  int slot = 0;
  CubeId edge = kNoCube;
  int wall = 0;
  int color = 0;
  int up = 0;
  std::string key;  // facet class
  int partner = -1;
  int glued_at = 0;  // level whose step glued it, 0 while boundary
};

/// V_j with its strata 1..j (labelled by colour), the immersion into the
/// subdivision, and the bookkeeping that ties cells back to polyhedron copies.
struct HierarchyState {
  int level = 0;
  int palette = 0;
  PatternedComplex v;
  std::vector<PolyhedronCopy> copies;
  std::vector<FacetInstance> instances;
  std::size_t base_size = 0;
  CubeMap from_base;  // cells of V_{k+1} -> cells of V_j

  /// Current cells of an instance, ascending and without repeats.
  std::vector<CubeId> instance_cells(const HierarchyContext& ctx, std::size_t i) const;
};

/// Omega(P, c) copies of each class, no gluing. Throws InvalidInput on a
/// zero or mis-sized weight vector.
HierarchyState assemble_base(const HierarchyContext& ctx, const std::vector<Integer>& omega);

/// Up and down counts per facet class among the boundary instances of
/// colour j. Ambiguous instances belong to boundary components that contain
/// both co-orientations.
struct DegreeEntry {
  std::string key;
  int facet = 0;
  int up = 0;
  int down = 0;
  int ambiguous = 0;
  int degree() const { return up - down; }
};
struct DegreeReport {
  int level = 0;
  std::vector<DegreeEntry> classes;
  bool zero() const;
};
DegreeReport boundary_degree(const HierarchyContext& ctx, const HierarchyState& s, int j);

struct ConditionReport {
  bool immersion = true;  // (1)
  bool polyhedra = true;  // (2)
  bool boundary = true;   // (3)
  bool equations = true;  // (4)
  bool pattern = true;    // strata form a boundary pattern
  std::vector<std::string> failures;
  bool ok() const { return immersion && polyhedra && boundary && equations && pattern; }
};
ConditionReport check_conditions(const HierarchyContext& ctx, const HierarchyState& s, unsigned jobs = 1);

/// Two disjoint copies of the state; every instance keeps a twin.
HierarchyState doubled(const HierarchyContext& ctx, const HierarchyState& s);

/// One matching of a boundary component of colour j with a partner.
struct ComponentMatch {
  std::vector<CubeId> up_cells;
  std::vector<CubeId> down_cells;
  bool twin = false;
};

struct GlueStepResult {
  HierarchyState next;
  std::vector<ComponentMatch> matches;
  DegreeReport degree;
  ConditionReport conditions;
  bool doubled = false;
};

/// Glues V_j along its colour-j stratum. Throws Infeasible on a nonzero
/// degree or when some component has no partner, and InternalError when
/// the result fails a condition.
GlueStepResult glue_step(const HierarchyContext& ctx, const HierarchyState& s, unsigned jobs = 1);

struct CoverReport {
  bool ok = false;
  int degree = 0;
  std::string failure;
};
/// Checks that `nu` is a covering map: link isomorphisms at every vertex and
/// constant fibre size over the cubes of `x`.
CoverReport verify_cover(const CubeComplex& v, const CubeComplex& x, const CubeMap& nu);

nlohmann::json to_json(const DegreeReport& r);
nlohmann::json to_json(const ConditionReport& r);
nlohmann::json summary_json(const HierarchyState& s);

}  // namespace vh
