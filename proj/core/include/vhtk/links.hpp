// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vhtk/cube_complex.hpp"

namespace vh {

/// An edge-end at the base vertex. A loop contributes both of its ends.
struct LinkVertex {
  CubeId edge = kNoCube;
  int end = 0;  // which endpoint of the edge (0 or 1) sits at the base vertex
  friend auto operator<=>(const LinkVertex&, const LinkVertex&) = default;
};

/// One corner of a (k+1)-cube at the base vertex, seen as a k-simplex.
struct LinkSimplex {
  CubeId cube = kNoCube;
  Pattern corner;
  std::vector<int> vertices;  // indices into SimplicialLink::vertices, one per axis
};

struct SimplicialLink {
  CubeId base = kNoCube;
  std::vector<LinkVertex> vertices;
  std::vector<std::vector<LinkSimplex>> simplices;  // by dimension, [0] holds edges

  int index_of(const LinkVertex& lv) const;
  /// Adjacency lists of the 1-skeleton (sorted, may contain repeats when the
  /// link is not simplicial).
  std::vector<std::vector<int>> adjacency() const;
};

/// The link vertex reached from corner `corner` of `cube` along `axis`.
LinkVertex link_vertex_at(const CubeComplex& x, CubeId cube, const Pattern& corner, int axis);

SimplicialLink vertex_link(const CubeComplex& x, CubeId v);
/// Links of every vertex in ascending vertex order, built in one pass.
std::vector<SimplicialLink> all_vertex_links(const CubeComplex& x);

struct VertexVerdict {
  CubeId vertex = kNoCube;
  bool simplicial = true;
  bool flag = true;
  std::string simplicial_failure;  // empty when simplicial
  std::vector<int> missing_clique;  // link vertex indices, empty when flag
};

struct NpcReport {
  std::vector<VertexVerdict> vertices;
  bool npc = true;
  std::optional<std::size_t> first_failure;  // index into vertices
};

/// Simplicial and flag checks on every vertex link.
VertexVerdict check_link(const SimplicialLink& link);
NpcReport check_npc(const CubeComplex& x, unsigned jobs = 1);

struct ConvexityReport {
  bool locally_convex = true;
  bool source_npc = true;
  std::string failure;
};

/// Local convexity of a combinatorial map Y -> X: Y is NPC and every link
/// map is injective with very full image. Throws InvalidInput when the map
/// does not respect face records.
ConvexityReport check_local_convexity(const CubeComplex& y, const CubeComplex& x, const CubeMap& f,
                                      unsigned jobs = 1);

nlohmann::json to_json(const CubeComplex& x, const SimplicialLink& link);
nlohmann::json to_json(const CubeComplex& x, const NpcReport& report);

}  // namespace vh
