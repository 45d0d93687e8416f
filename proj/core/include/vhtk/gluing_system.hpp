// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vhtk/coloring.hpp"
#include "vhtk/linear.hpp"
#include "vhtk/polyhedra.hpp"

namespace vh {

/// One variable: a class [(P, c)] of coloured polyhedra.
struct PolyhedronClass {
  int polyhedron = 0;
  std::string key;               // canonical polyhedron signature
  Assignment representative;     // lexicographically first colouring in the class
  std::vector<std::string> slot_keys;  // facet class key per facet slot
  std::size_t count = 0;         // colourings realising the class
};

/// One equation: a facet class [(F, c)]. The left side sums the variables
/// whose polyhedron meets F from end 0 of its edge, the right side end 1.
struct FacetEquation {
  int facet = 0;
  std::string key;
  std::vector<int> lhs;
  std::vector<int> rhs;
};

struct GluingSystem {
  int palette = 0;
  std::size_t colorings = 0;
  std::vector<PolyhedronClass> variables;  // sorted by key
  std::vector<FacetEquation> equations;    // sorted by key

  IntMatrix matrix() const;
  bool satisfied_by(const std::vector<Integer>& w) const;
  int variable_index(const std::string& key) const;
};

/// Enumerates all proper colourings of `gamma` with `palette` colours.
/// Throws Infeasible when there are none and BoundExceeded past `bound`.
GluingSystem build_gluing_system(const SplitCatalog& cat, const SymmetricGraph& gamma, int palette,
                                 std::size_t bound = kDefaultAtomBound, unsigned jobs = 1);

/// Weight of each class = number of colourings realising it.
std::vector<Integer> counting_solution(const GluingSystem& s);

IntegerSolution solve_system(const GluingSystem& s);

nlohmann::json to_json(const GluingSystem& s, const std::vector<Integer>* solution = nullptr,
                       const std::string& method = {});

}  // namespace vh
