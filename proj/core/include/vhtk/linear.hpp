// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "vhtk/rational.hpp"

namespace vh {

using IntMatrix = std::vector<std::vector<Integer>>;

struct IntegerSolution {
  std::vector<Integer> weights;
  std::string method;  // "fourier-motzkin" or "simplex"
};

/// A nonzero nonnegative integer vector w with A w = 0, scaled to be
/// primitive. Uses Fourier-Motzkin elimination up to `fm_limit` variables
/// and an exact phase-one simplex beyond. Throws Infeasible when none exists.
IntegerSolution solve_nonnegative_integer(const IntMatrix& a, std::size_t variables, std::size_t fm_limit = 12);

/// Same search, forcing one method (used to cross-check them).
IntegerSolution solve_by_fourier_motzkin(const IntMatrix& a, std::size_t variables);
IntegerSolution solve_by_simplex(const IntMatrix& a, std::size_t variables);

bool satisfies(const IntMatrix& a, const std::vector<Integer>& w);

}  // namespace vh
