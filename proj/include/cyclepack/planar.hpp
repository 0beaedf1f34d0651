#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cyclepack/graph.hpp"

namespace cyclepack {

using FaceId = int;
using Dart = int;  // directed edge: edge e gives darts 2e (a->b), 2e+1 (b->a)

inline Dart twin(Dart d) { return d ^ 1; }
inline EdgeId dart_edge(Dart d) { return d >> 1; }

struct NonPlanarError : std::runtime_error {
  NonPlanarError() : std::runtime_error("graph is not planar") {}
};

/// Combinatorial plane embedding: a rotation system (cyclic order of
/// outgoing darts per vertex) plus a designated outer face. Faces are the
/// orbits of the traversal d -> rotation-successor of twin(d). Disconnected
/// graphs embed per component with one shared outer face, so Euler reads
/// n - m + f = 1 + #components.
class PlaneEmbedding {
 public:
  const WeightedGraph& host() const { return *host_; }
  const std::vector<std::vector<Dart>>& rotation() const { return rotation_; }
  FaceId outer_face() const { return outer_; }
  int face_count() const { return (int)face_darts_.size(); }

  FaceId face_of_dart(Dart d) const { return dart_face_.at(d); }
  const std::vector<Dart>& face_darts(FaceId f) const {
    return face_darts_.at(f);
  }
  std::vector<Vertex> face_vertices(FaceId f) const;
  std::vector<EdgeId> face_edges(FaceId f) const;
  Rat face_frontier_weight(FaceId f) const;
  /// The face frontier as a cycle, when the boundary walk is simple.
  std::optional<Cycle> face_cycle(FaceId f) const;
  /// Faces on both sides of an edge (equal for bridges).
  std::pair<FaceId, FaceId> edge_faces(EdgeId e) const;

  /// Same rotation system with the outer face moved to the face bounded by
  /// C. Throws if C is not facial.
  PlaneEmbedding reroot_outer(const Cycle& c) const;

  /// Plane subgraph: inherited rotation on kept vertices/edges, faces
  /// recomputed; the new outer face is the one containing outer_hint (a
  /// surviving dart of the old outer walk).
  PlaneEmbedding restricted(const std::vector<bool>& keep_vertex,
                            const std::vector<bool>& keep_edge,
                            Dart outer_hint) const;
  /// A dart of the current outer face walk (for restriction hints).
  Dart outer_dart() const { return face_darts_.at(outer_).front(); }

  /// Rebuilds faces from an explicit rotation system (used by embed()).
  static PlaneEmbedding from_rotation(const WeightedGraph& g,
                                      std::vector<std::vector<Dart>> rotation,
                                      std::optional<FaceId> outer = {});

  std::string to_text() const;  // "r v: n1 n2 ..." lines plus "outer f"

 private:
  const WeightedGraph* host_ = nullptr;
  std::vector<std::vector<Dart>> rotation_;
  std::vector<std::vector<Dart>> face_darts_;
  std::vector<FaceId> dart_face_;
  FaceId outer_ = 0;

  void build_faces();
};

/// Planarity test + combinatorial embedding (Boyer-Myrvold via Boost.Graph
/// behind this interface). Throws NonPlanarError when no embedding exists.
/// The outer face defaults to a maximum-frontier face (deterministic).
PlaneEmbedding embed(const WeightedGraph& g);

bool is_planar(const WeightedGraph& g);

/// Interior of a cycle: faces unreachable from the outer face in the dual
/// after cutting C's dual edges, plus the strictly inside vertices/edges.
struct CycleInterior {
  std::vector<bool> inside_face;
  std::vector<bool> inside_vertex;  // strictly inside (excludes V(C))
  std::vector<bool> inside_edge;    // strictly inside (excludes E(C))
};
CycleInterior cycle_interior(const PlaneEmbedding& emb, const Cycle& c);

enum class CycleOrder {
  LessEq,        // C1 <= C2 (and neither <v nor <e applies)
  LessVertex,    // C1 <v C2: C1 <= C2 with disjoint vertex sets
  LessEdge,      // C1 <e C2: C1 <= C2 with disjoint edge sets
  Incomparable,  // neither contains the other, no crossing
  Crossing,      // each has an edge strictly inside the other
};

/// Most specific relation of C1 with respect to C2.
CycleOrder cycle_order(const PlaneEmbedding& emb, const Cycle& c1,
                       const Cycle& c2);

inline bool order_le(CycleOrder o) {
  return o == CycleOrder::LessEq || o == CycleOrder::LessVertex ||
         o == CycleOrder::LessEdge;
}

/// Dual graph: one vertex per face, one (multi-)edge e* per live primal edge
/// with mirrored weight; bridges become loops. primal_edge maps dual edge ids
/// back (the identity on full embeddings).
struct DualGraph {
  WeightedGraph graph;  // multi_allowed
  std::vector<std::pair<FaceId, FaceId>> sides;  // per dual edge
  std::vector<EdgeId> primal_edge;               // per dual edge
};
DualGraph dual(const PlaneEmbedding& emb);

std::string dual_dot(const PlaneEmbedding& emb);

}  // namespace cyclepack
