// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vhtk/rational.hpp"

namespace vh {

/// Finite simple graph with a finite symmetry group given by generators
/// (vertex permutations that are automorphisms).
class SymmetricGraph {
 public:
  SymmetricGraph() = default;
  /// Validates: no loops, endpoints in range, generators are automorphisms.
  SymmetricGraph(int n, std::vector<std::pair<int, int>> edges,
                 std::vector<std::vector<int>> generators = {}, std::vector<std::string> names = {});

  static SymmetricGraph from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;

  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<std::vector<int>>& generators() const { return generators_; }
  const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  bool adjacent(int u, int v) const;
  int max_degree() const { return max_degree_; }
  /// Edge indices, one per orbit of the symmetry group on edges.
  const std::vector<int>& orbit_representatives() const { return orbit_reps_; }
  int edge_orbits() const { return static_cast<int>(orbit_reps_.size()); }
  /// Same graph, trivial symmetry group.
  SymmetricGraph without_symmetry() const;
  /// Every element of the group generated by the generators (identity first).
  std::vector<std::vector<int>> group_elements() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> generators_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> orbit_reps_;
  int max_degree_ = 0;
};

/// Colours are 1..n.
using Assignment = std::vector<int>;

bool is_proper(const SymmetricGraph& g, const Assignment& c);
/// (g . c)(g(v)) = c(v), i.e. c composed with the inverse permutation.
Assignment act(const std::vector<int>& perm, const Assignment& c);

/// Smallest colour unused by earlier neighbours, vertices taken in `order`
/// (natural order when empty).
Assignment greedy_coloring(const SymmetricGraph& g, const std::vector<int>& order = {});

/// p_n is defined at c when every vertex coloured n has a colour in
/// {1..n-1} unused by its neighbours.
bool projection_defined(const SymmetricGraph& g, const Assignment& c, int n);
/// One step p_n. Throws InvalidInput when undefined at c.
Assignment project_step(const SymmetricGraph& g, const Assignment& c, int n);
/// p_{k+2} o ... o p_n. Requires n > k+1.
Assignment project_chain(const SymmetricGraph& g, const Assignment& c, int n);

inline constexpr std::size_t kDefaultAtomBound = 2'000'000;

/// Probability distribution on [n]^V with exact rational masses, either
/// explicit (finitely many atoms) or a product of per-vertex marginals.
struct Distribution {
  int palette = 1;
  int vertices = 0;
  bool product = false;
  std::map<Assignment, Rational> atoms;
  std::vector<std::vector<Rational>> marginals;  // product form: [v][colour-1]

  Rational total_mass() const;
  std::size_t explicit_size() const;
};

Distribution uniform_product(const SymmetricGraph& g, int n);
Distribution point_mass(const Assignment& c, int n);
/// Throws BoundExceeded past `bound` atoms.
Distribution to_explicit(const Distribution& d, std::size_t bound = kDefaultAtomBound);

using AssignmentMap = std::function<Assignment(const Assignment&)>;
/// Exact pushforward. `op` must be total on the support.
Distribution pushforward(const Distribution& d, const AssignmentMap& op, int out_palette,
                         std::size_t bound = kDefaultAtomBound, unsigned jobs = 1);

/// Sum over edge-orbit representatives of the mass of monochromatic assignments.
Rational weight(const SymmetricGraph& g, const Distribution& d);

struct WeightEstimate {
  double value = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};
/// Monte Carlo estimate of weight(op_* d) for a product-form d. Approximate.
WeightEstimate sample_weight(const SymmetricGraph& g, const Distribution& d, const AssignmentMap& op,
                             std::size_t samples, std::uint64_t seed);

/// All proper n-colourings in lexicographic order.
std::vector<Assignment> proper_colorings(const SymmetricGraph& g, int n,
                                         std::size_t bound = kDefaultAtomBound, unsigned jobs = 1);
/// Uniform measure on proper n-colourings. Throws Infeasible when there are none.
Distribution proper_coloring_measure(const SymmetricGraph& g, int n,
                                     std::size_t bound = kDefaultAtomBound, unsigned jobs = 1);
/// Exact check that every generator fixes the distribution.
bool is_invariant(const SymmetricGraph& g, const Distribution& d);

nlohmann::json to_json(const Distribution& d);
std::string assignment_string(const Assignment& c);

}  // namespace vh
