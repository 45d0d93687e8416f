// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vhtk/coloring.hpp"
#include "vhtk/polyhedra.hpp"
#include "vhtk/walls.hpp"

namespace vh {

/// The crossing graph as a symmetric graph on walls named W0, W1, ...
SymmetricGraph crossing_symmetric_graph(const CrossingGraph& g);

/// Class signatures of every wall under one proper colouring:
/// sig(v) = {"v": v, "c": c(v), "lower": [[u, sig(u)] for neighbours u with c(u) < c(v)]}.
/// Two pairs (v, c), (v, d) are equivalent iff their canonical dumps agree.
class SignatureTable {
 public:
  /// Throws InvalidInput when `c` is not a proper colouring of `g`.
  SignatureTable(const SymmetricGraph& g, const Assignment& c);

  const nlohmann::json& wall(int v) const { return sigs_[static_cast<std::size_t>(v)]; }
  /// Canonical serialisation (sorted keys, no whitespace).
  const std::string& wall_key(int v) const { return keys_[static_cast<std::size_t>(v)]; }

 private:
  std::vector<nlohmann::json> sigs_;
  std::vector<std::string> keys_;
};

/// Lexicographically least key of sig(g v, c o g^-1) over the symmetry group.
std::string orbit_normal_form(const SymmetricGraph& g, const Assignment& c, int v);

/// Facet class: the facet (edge of X) with the signature of its wall.
nlohmann::json facet_signature(const SplitCatalog& cat, const SignatureTable& t, int facet);
/// Polyhedron class: the polyhedron with the wall signature at every facet slot.
nlohmann::json polyhedron_signature(const SplitCatalog& cat, const SignatureTable& t, int polyhedron);

/// Vertices within graph distance `radius` of v, ascending.
std::vector<int> ball(const SymmetricGraph& g, int v, int radius);

std::string canonical(const nlohmann::json& j);

}  // namespace vh
