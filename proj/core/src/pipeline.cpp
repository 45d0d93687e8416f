// SPDX-License-Identifier: Apache-2.0
#include "vhtk/pipeline.hpp"

#include "vhtk/error.hpp"
#include "vhtk/wall_piece.hpp"

namespace vh {

HierarchyContext PipelineRun::context() const {
  HierarchyContext ctx;
  ctx.x = &x;
  ctx.walls = walls ? &*walls : nullptr;
  ctx.sd = sd ? &*sd : nullptr;
  ctx.catalog = catalog ? &*catalog : nullptr;
  ctx.gamma = gamma ? &*gamma : nullptr;
  ctx.system = system ? &*system : nullptr;
  return ctx;
}

IntegerSolution solve_with(const GluingSystem& s, const std::string& solve) {
  IntegerSolution sol;
  if (solve == "counting") {
    sol = {counting_solution(s), "counting"};
  } else if (solve == "integer") {
    sol = solve_system(s);
  } else {
    throw Error(ErrorKind::Usage, "unknown solver '" + solve + "' (counting or integer)");
  }
  VHTK_CHECK(s.satisfied_by(sol.weights), "solution fails the gluing equations");
  return sol;
}

std::unique_ptr<PipelineRun> run_pipeline(const CubeComplex& x, const PipelineOptions& opts) {
  auto run = std::make_unique<PipelineRun>();
  PipelineRun& r = *run;
  r.x = x;
  r.npc = check_npc(r.x, opts.jobs);
  if (!r.npc.npc) {
    r.stopped = "npc";
    return run;
  }
  r.walls = wall_complex(r.x, true, opts.jobs);
  r.special = specialness_report(r.x, *r.walls);
  if (!r.special->special) {
    r.stopped = "special";
    return run;
  }
  r.sd = barycentric_subdivide(r.x);
  r.crossing = crossing_graph(r.x, *r.walls, opts.radius, &*r.sd);
  r.gamma = crossing_symmetric_graph(*r.crossing);
  r.palette = opts.palette > 0 ? opts.palette : r.gamma->max_degree() + 1;
  if (r.palette < r.gamma->max_degree() + 1)
    throw InvalidInput("palette " + std::to_string(r.palette) + " is below max degree + 1");
  r.catalog = split_all(r.x, *r.walls, *r.sd);
  r.system = build_gluing_system(*r.catalog, *r.gamma, r.palette, opts.bound, opts.jobs);
  if (opts.omega) {
    if (!r.system->satisfied_by(*opts.omega)) throw InvalidInput("omega does not satisfy the gluing equations");
    r.solution = IntegerSolution{*opts.omega, "given"};
  } else {
    r.solution = solve_with(*r.system, opts.solve);
  }
  for (int level = 1; level <= r.palette; ++level)
    r.wall_pieces.push_back(y_catalog(r.x, *r.walls, *r.gamma, r.palette, level, opts.bound, opts.jobs).size());

  const HierarchyContext ctx = r.context();
  r.levels.push_back(assemble_base(ctx, r.solution->weights));
  while (r.levels.back().level > 0) {
    const DegreeReport degree = boundary_degree(ctx, r.levels.back(), r.levels.back().level);
    r.degrees.push_back(degree);
    if (!degree.zero()) {
      r.stopped = "degree";
      return run;
    }
    GlueStepResult step = glue_step(ctx, r.levels.back(), opts.jobs);
    r.levels.push_back(std::move(step.next));
  }
  const HierarchyState& v0 = r.levels.back();
  r.cover = verify_cover(v0.v.complex, r.sd->complex, *v0.v.immersion);
  if (!r.cover->ok) r.stopped = "cover";
  return run;
}

nlohmann::json to_json(const PipelineRun& r) {
  nlohmann::json j;
  j["cubes"] = r.x.size();
  j["npc"] = r.npc.npc;
  if (r.walls) j["walls"] = r.walls->size();
  if (r.special) j["special"] = to_json(r.x, *r.walls, *r.special);
  if (r.crossing) j["crossing_graph"] = to_json(*r.crossing);
  if (r.palette) j["palette"] = r.palette;
  if (r.catalog) j["polyhedra"] = r.catalog->models.size();
  if (r.system) {
    const std::vector<Integer>* w = r.solution ? &r.solution->weights : nullptr;
    j["gluing_system"] = to_json(*r.system, w, r.solution ? r.solution->method : std::string{});
  }
  if (!r.wall_pieces.empty()) j["wall_pieces"] = r.wall_pieces;
  j["levels"] = nlohmann::json::array();
  for (const auto& s : r.levels) j["levels"].push_back(summary_json(s));
  j["degrees"] = nlohmann::json::array();
  for (const auto& d : r.degrees) j["degrees"].push_back(to_json(d));
  if (r.cover)
    j["cover"] = {{"ok", r.cover->ok}, {"degree", r.cover->degree}, {"failure", r.cover->failure}};
  j["stopped"] = r.stopped.empty() ? nlohmann::json(nullptr) : nlohmann::json(r.stopped);
  return j;
}

}  // namespace vh
