// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vhtk/words.hpp"

namespace vh {

inline constexpr std::size_t kDefaultTupleBound = 10'000'000;

/// A folded graph immersing into the rose with `rank` petals. Vertex 0 is the
/// basepoint after `fold_and_core`; `out[v][g]` and `in[v][g]` give the
/// endpoint of the g-edge leaving or entering v, or -1.
struct FoldedGraph {
  int rank = 0;
  int base = 0;
  std::vector<std::vector<int>> out;
  std::vector<std::vector<int>> in;

  int size() const { return static_cast<int>(out.size()); }
  std::size_t edge_count() const;
  bool has_cycle() const { return edge_count() >= out.size(); }

  /// Endpoint of the path reading w from `from`, if it exists.
  std::optional<int> read(int from, const Word& w) const;
  /// Membership of the (not necessarily reduced) word in the subgroup.
  bool contains(const Word& w) const;

  bool is_connected() const;
  bool is_core() const;
  /// Tree path sigma_v from the basepoint to each vertex, breadth first with
  /// letters in the order a, A, b, B, ...
  std::vector<Word> tree_paths() const;
  /// A free basis: one loop per edge outside the spanning tree.
  std::vector<Word> generators() const;

  /// Builds from (from, to, generator) triples, checking foldedness.
  static FoldedGraph from_edges(int rank, int vertices, int base,
                                const std::vector<std::array<int, 3>>& edges);
};

/// The core Stallings graph of the subgroup generated by `words`. Unreduced
/// words are reduced first and a notice is appended.
FoldedGraph fold_and_core(int rank, const std::vector<Word>& words,
                          std::vector<std::string>* notices = nullptr);

/// One component of a pullback over the rose.
struct PullbackComponent {
  std::vector<std::vector<int>> tuples;  // ascending
  std::size_t edges = 0;
  bool off_diagonal = false;
  std::vector<bool> projection_cycles;

  bool has_cycle() const { return edges >= tuples.size(); }
  bool all_projections_cyclic() const;
};

/// All components of the n-fold pullback of z, ordered by their smallest
/// tuple. Throws BoundExceeded when |V|^n exceeds `bound`.
std::vector<PullbackComponent> fiber_product(const FoldedGraph& z, int n,
                                             std::size_t bound = kDefaultTupleBound);
/// Only the components off the fat diagonal (S_n), enumerating injective
/// tuples alone.
std::vector<PullbackComponent> off_diagonal_components(const FoldedGraph& z, int n,
                                                       std::size_t bound = kDefaultTupleBound);
/// Components of the pullback of two graphs.
std::vector<PullbackComponent> mixed_pullback(const FoldedGraph& a, const FoldedGraph& b,
                                              std::size_t bound = kDefaultTupleBound);

struct Conjugators {
  std::vector<int> base;                  // basepoint tuple p
  std::vector<std::vector<Word>> g;       // g[i][j]
  std::vector<std::vector<Word>> a;       // generators of A_i
  std::vector<Word> loops;                // generators of pi_1(C, p) as words
  bool conjugation_verified = false;      // both inclusions, every pair
  bool cosets_distinct = false;
};
/// Requires z to be the graph the component was built from. The basepoint
/// tuple minimises (g_{1,2}, ..., g_{1,n}) in shortlex order.
Conjugators conjugators_and_intersections(const PullbackComponent& c, const FoldedGraph& z);

struct HeightCertificate {
  int height = 0;
  std::optional<PullbackComponent> witness;
  std::optional<Conjugators> conjugators;
  int searched_to = 0;          // largest n whose S_n was computed
  bool termination_checked = false;  // S_{|V|+1} found empty
};
HeightCertificate multiplicity_height(const FoldedGraph& z, std::size_t bound = kDefaultTupleBound);

struct MalnormalWitness {
  int i = 0;
  int j = 0;
  Word g;  // g x g^-1 lies in H_j
  Word x;  // nontrivial element of H_i
};
struct MalnormalVerdict {
  bool malnormal = true;
  std::optional<MalnormalWitness> witness;
};
MalnormalVerdict check_almost_malnormal(const std::vector<FoldedGraph>& subgroups,
                                        std::size_t bound = kDefaultTupleBound);
/// Rank of the intersection of the two subgroups.
std::size_t intersection_rank(const FoldedGraph& a, const FoldedGraph& b);
/// Re-checks a witness by membership and by intersecting H_i with g^-1 H_j g.
bool verify_malnormal_witness(const std::vector<FoldedGraph>& subgroups, const MalnormalWitness& w);

/// Height of the cyclic subgroup <w> by enumerating cosets gH with |g| <=
/// max_len and comparing roots of conjugates.
int brute_force_cyclic_height(int rank, const Word& w, int max_len = 8);

nlohmann::json to_json(const FoldedGraph& z);
FoldedGraph folded_graph_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PullbackComponent& c);
nlohmann::json to_json(const HeightCertificate& h);
nlohmann::json to_json(const MalnormalVerdict& v);

}  // namespace vh
