// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vhtk/cube_complex.hpp"
#include "vhtk/links.hpp"
#include "vhtk/pattern.hpp"
#include "vhtk/subdivision.hpp"
#include "vhtk/walls.hpp"

namespace vh {

/// The cubical polyhedron P(G) of a simple graph G. A cell is a pair (S, T)
/// of disjoint vertex sets whose union is a clique: S lists the free axes,
/// T the vertices whose coordinate is pinned to 1. The apex is (∅, ∅) and
/// the facet of v is {x_v = 1}.
struct Polyhedron {
  int graph_size = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::string> labels;
  PatternedComplex pattern;  // one stratum per graph vertex
  std::vector<std::vector<int>> free_set;    // S per cell, ascending
  std::vector<std::vector<int>> pinned_set;  // T per cell, ascending
  CubeId apex = kNoCube;

  const CubeComplex& complex() const { return pattern.complex; }
  CubeId find(const std::vector<int>& s, const std::vector<int>& t) const;
  /// Cells lying in every listed facet (a face of P).
  std::vector<CubeId> face(const std::vector<int>& vertices) const;
};

/// Rejects loops, duplicate edges and out-of-range endpoints.
Polyhedron polyhedron_from_graph(int n, const std::vector<std::pair<int, int>>& edges,
                                 std::vector<std::string> labels = {});

/// The 1-skeleton of a simplicial link as a graph on its vertex indices.
std::vector<std::pair<int, int>> link_graph(const SimplicialLink& link);

/// X cut open along the given walls, as a patterned complex on the cut
/// subdivision. Each family becomes one stratum (both sides of every wall in
/// it); the immersion goes to the plain subdivision `sd`.
struct SplitResult {
  CutComplex cut;
  PatternedComplex pattern;
};
SplitResult split_along_walls(const CubeComplex& x, const WallSystem& ws, const Subdivision& sd,
                              const std::vector<std::vector<int>>& families);

/// A boundary facet of a vertex-star polyhedron: the link vertex (edge, end)
/// of X it comes from.
struct FacetSlot {
  int polyhedron = 0;
  int link_index = 0;
  CubeId edge = kNoCube;
  int end = 0;
  int wall = 0;
  /// Which side of the wall the polyhedron lies on, in the wall's
  /// co-orientation: 1 for the positive side.
  int up = 0;
};

/// X split along every wall: one polyhedron per vertex, one facet class per
/// edge, with lifts of the model polyhedra into the split complex.
struct SplitCatalog {
  SplitResult split;  // one stratum per wall
  std::vector<CubeId> vertices;                  // polyhedron -> vertex of X
  std::vector<SimplicialLink> links;             // polyhedron -> link of its vertex
  std::vector<Polyhedron> models;                // P(link)
  std::vector<std::vector<CubeId>> cells;        // polyhedron -> split cells
  std::vector<CubeMap> lifts;                    // model cells -> split cells
  std::vector<std::vector<FacetSlot>> slots;     // polyhedron -> slot per link vertex
  std::vector<CubeId> facets;                    // facet class -> edge of X
  std::vector<int> facet_wall;                   // facet class -> wall
  std::vector<std::pair<int, int>> incidence;    // facet class -> (polyhedron at end 0, at end 1)
  std::vector<int> polyhedron_of_cell;           // split cell -> polyhedron

  int facet_class(CubeId edge) const;
};

/// Requires every wall to be two-sided and free of self-crossings.
SplitCatalog split_all(const CubeComplex& x, const WallSystem& ws, const Subdivision& sd);

nlohmann::json to_json(const Polyhedron& p);
nlohmann::json to_json(const CubeComplex& x, const SplitCatalog& cat);

}  // namespace vh
