#pragma once

#include <optional>
#include <vector>

#include "cyclepack/planar.hpp"

namespace cyclepack {

/// Exact independent set of size k on an adjacency-list graph via
/// branch-and-reduce; returns a witness or nullopt. Exact for any input;
/// intended for desk-scale k.
std::optional<std::vector<int>> exact_independent_set(
    const std::vector<std::vector<int>>& adj, int k);

/// Map graph over a plane embedding: nodes are a subset of faces, two nodes
/// adjacent iff their frontiers share a vertex (sharing an edge implies
/// sharing its endpoints). Adjacency is derived from the embedding, never
/// stored independently.
struct MapGraph {
  const PlaneEmbedding* emb = nullptr;
  std::vector<FaceId> nodes;

  std::vector<std::vector<int>> adjacency() const;
};

MapGraph make_map_graph(const PlaneEmbedding& emb, std::vector<FaceId> nodes);

/// k pairwise non-adjacent map nodes (faces with disjoint frontiers), or
/// nullopt. Exact search standing in for the map-graph IS subroutine.
std::optional<std::vector<FaceId>> map_independent_set(const MapGraph& m,
                                                       int k);

/// Exact independent-set witness on a planar simple graph; by the four-color
/// theorem it always succeeds when vertex_count >= 4k.
std::optional<std::vector<Vertex>> planar_quarter_is(const WeightedGraph& g,
                                                     int k);

}  // namespace cyclepack
