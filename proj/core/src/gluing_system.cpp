// SPDX-License-Identifier: Apache-2.0
#include "vhtk/gluing_system.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "vhtk/error.hpp"
#include "vhtk/parallel.hpp"
#include "vhtk/signature.hpp"

namespace vh {

IntMatrix GluingSystem::matrix() const {
  IntMatrix a;
  for (const auto& e : equations) {
    std::vector<Integer> row(variables.size(), 0);
    for (int v : e.lhs) row[static_cast<std::size_t>(v)] += 1;
    for (int v : e.rhs) row[static_cast<std::size_t>(v)] -= 1;
    a.push_back(std::move(row));
  }
  return a;
}

bool GluingSystem::satisfied_by(const std::vector<Integer>& w) const {
  return w.size() == variables.size() && satisfies(matrix(), w);
}

int GluingSystem::variable_index(const std::string& key) const {
  auto it = std::lower_bound(variables.begin(), variables.end(), key,
                             [](const PolyhedronClass& c, const std::string& k) { return c.key < k; });
  return it != variables.end() && it->key == key ? static_cast<int>(it - variables.begin()) : -1;
}

GluingSystem build_gluing_system(const SplitCatalog& cat, const SymmetricGraph& gamma, int palette,
                                 std::size_t bound, unsigned jobs) {
  if (palette < 1) throw InvalidInput("gluing system: palette must be positive");
  const auto colorings = proper_colorings(gamma, palette, bound, jobs);
  if (colorings.empty()) throw Infeasible("no proper colouring with " + std::to_string(palette) + " colours");

  struct PerColoring {
    std::vector<std::string> poly_keys;
    std::vector<std::vector<std::string>> slot_keys;
  };
  const std::size_t np = cat.vertices.size();
  std::vector<PerColoring> per(colorings.size());
  parallel_for(colorings.size(), jobs, [&](std::size_t i) {
    const SignatureTable t(gamma, colorings[i]);
    auto& out = per[i];
    std::vector<std::string> facet_keys(cat.facets.size());
    for (std::size_t f = 0; f < cat.facets.size(); ++f) facet_keys[f] = canonical(facet_signature(cat, t, static_cast<int>(f)));
    for (std::size_t p = 0; p < np; ++p) {
      out.poly_keys.push_back(canonical(polyhedron_signature(cat, t, static_cast<int>(p))));
      std::vector<std::string> slots;
      for (const auto& s : cat.slots[p]) slots.push_back(facet_keys[static_cast<std::size_t>(cat.facet_class(s.edge))]);
      out.slot_keys.push_back(std::move(slots));
    }
  });

  GluingSystem sys;
  sys.palette = palette;
  sys.colorings = colorings.size();
  std::map<std::string, PolyhedronClass> classes;
  for (std::size_t i = 0; i < colorings.size(); ++i)
    for (std::size_t p = 0; p < np; ++p) {
      auto [it, fresh] = classes.try_emplace(per[i].poly_keys[p]);
      if (fresh) {
        it->second.polyhedron = static_cast<int>(p);
        it->second.key = per[i].poly_keys[p];
        it->second.representative = colorings[i];
        it->second.slot_keys = per[i].slot_keys[p];
      }
      ++it->second.count;
    }
  for (auto& [k, c] : classes) sys.variables.push_back(std::move(c));

  // Facet classes realised by some colouring, with the variables on each side.
  std::map<std::string, FacetEquation> eqs;
  for (std::size_t v = 0; v < sys.variables.size(); ++v) {
    const auto& cls = sys.variables[v];
    const auto& slots = cat.slots[static_cast<std::size_t>(cls.polyhedron)];
    for (std::size_t s = 0; s < slots.size(); ++s) {
      auto [it, fresh] = eqs.try_emplace(cls.slot_keys[s]);
      if (fresh) {
        it->second.facet = cat.facet_class(slots[s].edge);
        it->second.key = cls.slot_keys[s];
      }
      auto& side = slots[s].end == 0 ? it->second.lhs : it->second.rhs;
      side.push_back(static_cast<int>(v));
    }
  }
  for (auto& [k, e] : eqs) {
    for (auto* side : {&e.lhs, &e.rhs}) {
      std::sort(side->begin(), side->end());
      side->erase(std::unique(side->begin(), side->end()), side->end());
    }
    sys.equations.push_back(std::move(e));
  }
  return sys;
}

std::vector<Integer> counting_solution(const GluingSystem& s) {
  std::vector<Integer> w;
  for (const auto& c : s.variables) w.emplace_back(c.count);
  VHTK_CHECK(s.satisfied_by(w), "counting solution violates a gluing equation");
  return w;
}

IntegerSolution solve_system(const GluingSystem& s) {
  auto sol = solve_nonnegative_integer(s.matrix(), s.variables.size());
  VHTK_CHECK(s.satisfied_by(sol.weights), "solver output violates a gluing equation");
  return sol;
}

nlohmann::json to_json(const GluingSystem& s, const std::vector<Integer>* solution, const std::string& method) {
  nlohmann::json vars = nlohmann::json::array();
  for (std::size_t v = 0; v < s.variables.size(); ++v) {
    const auto& c = s.variables[v];
    nlohmann::json rep = c.representative;
    vars.push_back({{"index", v},
                    {"polyhedron", c.polyhedron},
                    {"signature", nlohmann::json::parse(c.key)},
                    {"representative", rep},
                    {"count", c.count}});
  }
  nlohmann::json eqs = nlohmann::json::array();
  for (const auto& e : s.equations)
    eqs.push_back({{"facet", e.facet}, {"signature", nlohmann::json::parse(e.key)}, {"lhs", e.lhs}, {"rhs", e.rhs}});
  nlohmann::json out = {{"palette", s.palette}, {"colorings", s.colorings}, {"variables", vars}, {"equations", eqs}};
  if (solution) {
    nlohmann::json sol = nlohmann::json::object();
    nlohmann::json weights = nlohmann::json::array();
    for (std::size_t v = 0; v < s.variables.size(); ++v) {
      sol[s.variables[v].key] = (*solution)[v].convert_to<long long>();
      weights.push_back((*solution)[v].convert_to<long long>());
    }
    out["solution"] = sol;
    out["weights"] = weights;
    if (!method.empty()) out["method"] = method;
  }
  return out;
}

}  // namespace vh
