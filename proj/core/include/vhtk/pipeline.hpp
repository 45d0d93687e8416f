// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vhtk/coloring.hpp"
#include "vhtk/gluing_system.hpp"
#include "vhtk/hierarchy.hpp"
#include "vhtk/links.hpp"
#include "vhtk/polyhedra.hpp"
#include "vhtk/signature.hpp"
#include "vhtk/subdivision.hpp"
#include "vhtk/walls.hpp"

namespace vh {

struct PipelineOptions {
  int radius = 0;
  int palette = 0;  // 0 selects max degree + 1
  std::size_t bound = kDefaultAtomBound;
  unsigned jobs = 1;
  std::string solve = "counting";  // or "integer"
  std::optional<std::vector<Integer>> omega;  // overrides `solve`
};

/// Weights from the chosen solver, checked against every equation.
IntegerSolution solve_with(const GluingSystem& s, const std::string& solve);

/// Every stage from X to the cover V_0 -> subdivision. Stages after a
/// failure stay empty; `stopped` names the failing stage.
struct PipelineRun {
  CubeComplex x;
  NpcReport npc;
  std::optional<WallSystem> walls;
  std::optional<SpecialnessReport> special;
  std::optional<Subdivision> sd;
  std::optional<CrossingGraph> crossing;
  std::optional<SymmetricGraph> gamma;
  int palette = 0;
  std::optional<SplitCatalog> catalog;
  std::optional<GluingSystem> system;
  std::optional<IntegerSolution> solution;
  std::vector<HierarchyState> levels;  // V_palette down to V_0
  std::vector<DegreeReport> degrees;   // per glued level
  std::vector<std::size_t> wall_pieces;  // Y catalog size per level 1..palette
  std::optional<CoverReport> cover;
  std::string stopped;

  HierarchyContext context() const;
};

/// Runs the full pipeline. Returns normally when a stage gives a negative
/// verdict (not NPC, not special, nonzero degree); rethrows other errors.
std::unique_ptr<PipelineRun> run_pipeline(const CubeComplex& x, const PipelineOptions& opts = {});

nlohmann::json to_json(const PipelineRun& run);

}  // namespace vh
