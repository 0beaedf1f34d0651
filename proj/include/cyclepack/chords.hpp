#pragma once

#include <optional>
#include <vector>

#include "cyclepack/graph.hpp"

namespace cyclepack {

/// Decomposition of a path P relative to a cycle C: E(P) splits into shared
/// edges (E(P) & E(C)), chords (maximal subpaths with endpoints on C, interior
/// off C, edges off C) and at most two tails. Chord endpoints are reported as
/// positions (s, t), s < t, in the cyclic indexing of C's canonical order.
struct ChordDecomposition {
  VertexPath host_path;
  Cycle host_cycle;
  std::vector<VertexPath> chords;
  std::vector<VertexPath> tails;
  std::vector<EdgeId> shared_edges;
  std::vector<std::pair<int, int>> endpoints_on_cycle;  // per chord
  int intersection_components = 0;
};

/// Throws if P and C are vertex-disjoint.
ChordDecomposition chord_decompose(const WeightedGraph& g, const VertexPath& p,
                                   const Cycle& c);

enum class ChordRelation { Consecutive, Crossing, Parallel };

/// Relation of two vertex-disjoint chords given their (s, t) position pairs
/// with s(a) < s(b). Throws if the positions overlap.
ChordRelation classify_chord_pair(std::pair<int, int> a, std::pair<int, int> b);

/// A monotone subsequence of length r, if one exists (always, when the input
/// has more than (r-1)^2 entries). Returns indices into seq. Entries must be
/// distinct. Searches increasing first, then decreasing.
std::optional<std::vector<int>> monotone_subsequence(
    const std::vector<Rat>& seq, int r);

/// Constructive half of the chord bound: when the decomposition yields a
/// same-relation vertex-disjoint chord family of size >= 4k (found via
/// every-second-chord thinning, the touching-count greedy for consecutive
/// families, and Erdos-Szekeres for crossing/parallel ones), builds k
/// vertex-disjoint cycles of total weight <= ell from E(P) | E(C).
/// k = 1 needs only a single chord. Returns nullopt when the best
/// same-relation family is smaller than 4k.
std::optional<CyclePacking> extract_k_cycles_from_chords(
    const WeightedGraph& g, const VertexPath& p, const Cycle& c, int k,
    const Rat& ell);

}  // namespace cyclepack
