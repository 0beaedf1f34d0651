#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cyclepack/planar.hpp"

namespace cyclepack {

/// How two shortest cycles of one graph meet: along a (possibly trivial)
/// shared path, in exactly the two poles with four g/2 paths between them,
/// or not at all.
struct Touching {
  VertexPath shared;  // the common path (may be a single vertex)
};
struct TwoPoleCrossing {
  Vertex s, t;
  VertexPath p1, p2;  // the two s-t arcs of the first cycle
  VertexPath q1, q2;  // of the second
};
struct DisjointCycles {};
using TouchResult = std::variant<Touching, TwoPoleCrossing, DisjointCycles>;

TouchResult touch_classify(const WeightedGraph& g, const Cycle& c1,
                           const Cycle& c2);

enum class LsctKind { Leaf, SNode, UNode };

struct LsctNode {
  int id = -1;
  Cycle cycle;
  LsctKind kind = LsctKind::Leaf;
  int parent = -1;
  std::vector<int> children;  // node ids, in construction order
  // S-nodes only:
  Vertex pole_s = -1, pole_t = -1;
  std::vector<VertexPath> path_family;  // P_0..P_l, clockwise from pole_s
};

/// Rooted tree of shortest cycles: the root bounds the outer face, leaves
/// bound internal faces, S-node children tile pole-path slices, U-node
/// children are the maximal inner shortest cycles.
struct LsctTree {
  std::vector<LsctNode> nodes;  // nodes[0] is the root
  int root = 0;

  const LsctNode& node(int id) const { return nodes.at(id); }
  std::vector<int> leaves() const;
  bool is_descendant(int a, int b) const;  // a descendant of b (or equal)
  std::optional<int> find_cycle(const Cycle& c) const;
  std::string to_dot() const;
  std::string to_json_lines() const;
};

/// Poles of a splittable shortest cycle: the unique vertex pair on C at arc
/// distance g/2 joined by a third interior path of weight g/2; nullopt when
/// unsplittable. Throws (internal error) if uniqueness fails.
std::optional<std::pair<Vertex, Vertex>> find_poles(const PlaneEmbedding& emb,
                                                    const Cycle& c,
                                                    const Rat& g_weight);

/// The inclusion-maximal family of internally vertex-disjoint weight-g/2
/// s-t-paths in G_C, sorted clockwise from s; first and last are C's arcs.
std::vector<VertexPath> s_node_paths(const PlaneEmbedding& emb, const Cycle& c,
                                     Vertex s, Vertex t, const Rat& g_weight);

/// Maximal shortest cycles of G_C distinct from C (the U-node children).
/// Throws if C is splittable or facial.
std::vector<Cycle> u_node_children(const PlaneEmbedding& emb, const Cycle& c,
                                   const Rat& g_weight);

/// Builds the Laminar Shortest Cycle Tree for a clean, connected, non-forest
/// graph: re-embeds so a shortest cycle bounds the outer face, then
/// recursively classifies nodes.
struct LsctBuild {
  PlaneEmbedding embedding;
  LsctTree tree;
  Rat girth;
};
LsctBuild build_lsct(const WeightedGraph& g_clean);

/// Rewrites a packing into the shape T-maximal solutions have: every
/// non-facial member without a packing member below it is replaced by a
/// shortest facial cycle strictly inside it. Preserves validity and size.
CyclePacking postprocess_tmax(const PlaneEmbedding& emb,
                              const std::vector<Cycle>& shortest_facials,
                              CyclePacking packing);

}  // namespace cyclepack
