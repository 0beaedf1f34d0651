#pragma once

#include <optional>
#include <vector>

#include "cyclepack/graph.hpp"

namespace cyclepack {

/// Single-source shortest paths with exact rational weights. dist entries are
/// nullopt for unreachable vertices; parent_edge reconstructs one
/// deterministic shortest path (ties broken toward the smaller edge id).
struct ShortestPaths {
  std::vector<std::optional<Rat>> dist;
  std::vector<EdgeId> parent_edge;  // -1 at source / unreachable

  std::optional<VertexPath> path_to(const WeightedGraph& g, Vertex t) const;
};

/// edge_mask, when given, restricts traversal to edges with mask[e] == true.
ShortestPaths dijkstra(const WeightedGraph& g, Vertex source,
                       const std::vector<bool>* edge_mask = nullptr);

/// Minimum weight of a cycle; nullopt iff g is a forest.
std::optional<Rat> girth(const WeightedGraph& g);

/// A minimum-weight cycle containing e, or nullopt if e is a bridge.
/// Deterministic: ties resolved by canonical cycle order.
std::optional<Cycle> shortest_cycle_through_edge(const WeightedGraph& g,
                                                 EdgeId e);

/// A minimum-weight cycle overall (deterministic tie-break); nullopt for
/// forests. When budget is given, only cycles of weight <= budget qualify.
std::optional<Cycle> min_weight_cycle(const WeightedGraph& g,
                                      const std::optional<Rat>& budget = {});

/// Subgraph keeping exactly the vertices/edges that lie on some shortest
/// cycle; empty for forests. Idempotent; preserves girth when nonempty.
struct CleanResult {
  WeightedGraph graph;
  std::vector<Vertex> orig_vertex;
  std::vector<EdgeId> orig_edge;
};
CleanResult clean(const WeightedGraph& g);

/// The exact set of all cycles of weight girth(g), deduplicated up to
/// rotation/reflection (multigraph-aware: loops and parallel pairs count).
/// Throws on forest input.
std::vector<Cycle> all_shortest_cycles(const WeightedGraph& g);

}  // namespace cyclepack
