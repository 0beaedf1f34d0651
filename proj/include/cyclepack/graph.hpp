#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cyclepack/rational.hpp"

namespace cyclepack {

using Vertex = int;
using EdgeId = int;

struct Edge {
  Vertex a = -1;
  Vertex b = -1;
  Rat weight;

  Vertex other(Vertex v) const { return v == a ? b : a; }
  bool is_loop() const { return a == b; }
};

/// Simple (optionally multi-) undirected graph with strictly positive edge
/// weights. Vertex ids are dense in [0, vertex_count). Loops and parallel
/// edges are permitted only when multi_allowed is set; they occur as
/// intermediate states of the edge-disjoint kernelizer and in dual graphs.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  explicit WeightedGraph(int n, bool multi_allowed = false)
      : n_(n), multi_(multi_allowed), adj_(n) {}

  int vertex_count() const { return n_; }
  int edge_count() const { return (int)edges_.size(); }
  bool multi_allowed() const { return multi_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }

  EdgeId add_edge(Vertex u, Vertex v, Rat w);

  /// Incident edge ids in insertion order; loops appear once.
  const std::vector<EdgeId>& incident(Vertex v) const { return adj_.at(v); }
  /// Degree with loops counted twice.
  int degree(Vertex v) const;

  /// Edge id connecting u and v, if any (first match). Simple-graph helper.
  std::optional<EdgeId> find_edge(Vertex u, Vertex v) const;

  bool is_forest() const;
  bool connected() const;
  std::vector<std::vector<Vertex>> components() const;

  struct Subgraph induced(const std::vector<bool>& keep_vertex,
                          const std::vector<bool>& keep_edge) const;
  struct Subgraph induced_on(const std::vector<Vertex>& vertices) const;

 private:
  int n_ = 0;
  bool multi_ = false;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> adj_;
};

/// Subgraph on kept vertices/edges with densely relabeled vertex ids.
/// orig_vertex/orig_edge map new ids back to the host graph's ids.
struct Subgraph {
  WeightedGraph graph;
  std::vector<Vertex> orig_vertex;
  std::vector<EdgeId> orig_edge;
  std::vector<Vertex> new_vertex;  // old id -> new id or -1
};

/// Path as an ordered sequence of distinct vertices; a single vertex is the
/// trivial path of weight 0. edge_ids[i] joins vertices[i] and vertices[i+1].
struct VertexPath {
  std::vector<Vertex> vertices;
  std::vector<EdgeId> edge_ids;
  Rat weight;

  bool trivial() const { return vertices.size() == 1; }
  Vertex front() const { return vertices.front(); }
  Vertex back() const { return vertices.back(); }
  VertexPath reversed() const;
};

VertexPath make_path(const WeightedGraph& g, std::vector<Vertex> vs);

/// Cycle in canonical form: the vertex sequence is rotated so the minimum
/// vertex id comes first and oriented toward the smaller second id.
/// edge_ids[i] joins vertices[i] and vertices[(i+1) % size]. Identity is the
/// edge set, so parallel copies are distinct cycles. Loops are single-vertex
/// cycles, parallel pairs two-vertex ones (multigraphs only).
struct Cycle {
  std::vector<Vertex> vertices;
  std::vector<EdgeId> edge_ids;
  Rat weight;

  int size() const { return (int)vertices.size(); }
  std::vector<EdgeId> sorted_edges() const;
  bool contains_vertex(Vertex v) const;
  bool contains_edge(EdgeId e) const;

  friend bool operator==(const Cycle& x, const Cycle& y) {
    return x.sorted_edges() == y.sorted_edges();
  }
  /// Deterministic order: (length, canonical vertices, edge ids).
  friend bool operator<(const Cycle& x, const Cycle& y);

  std::string str() const;
};

/// Builds a canonical cycle from a vertex sequence (consecutive pairs must be
/// adjacent; the closing edge is implied). For multigraphs pass explicit edge
/// ids aligned with the sequence.
Cycle make_cycle(const WeightedGraph& g, std::vector<Vertex> vs);
Cycle make_cycle(const WeightedGraph& g, std::vector<Vertex> vs,
                 std::vector<EdgeId> es);

enum class DisjointMode { Vertex, Edge };

struct CyclePacking {
  std::vector<Cycle> cycles;
  DisjointMode mode = DisjointMode::Vertex;
  Rat total_weight;
};

CyclePacking make_packing(std::vector<Cycle> cycles, DisjointMode mode);

/// Independent disjointness + membership checker used by every solver before
/// returning a witness. Never trusts cached weights: recomputes from g.
bool packing_valid(const WeightedGraph& g, const CyclePacking& p,
                   std::string* why = nullptr);

}  // namespace cyclepack
