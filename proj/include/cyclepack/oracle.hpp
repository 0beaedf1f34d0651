#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclepack/graph.hpp"

namespace cyclepack::oracle {

/// Ground-truth brute-force solvers. These deliberately do not reuse the
/// solver-side enumeration or shortest-path code: only graphcore types are
/// shared, so a bug on either side shows up as a disagreement.

/// Every simple cycle of weight <= bound (multigraph-aware), via exhaustive
/// DFS with weight pruning. Deduplicated, sorted canonically.
std::vector<Cycle> all_cycles_up_to(const WeightedGraph& g, const Rat& bound);

/// Second, independent enumerator over edge subsets; practical for n <= 8.
/// Used only for oracle self-consistency checks.
std::vector<Cycle> all_cycles_by_edge_subsets(const WeightedGraph& g,
                                              const Rat& bound);

/// Minimum cycle weight by brute force; nullopt for forests.
std::optional<Rat> brute_girth(const WeightedGraph& g);

enum class Objective { MinTotal, ShortestOnly, Vector };

struct PackingQuery {
  int k = 1;
  DisjointMode mode = DisjointMode::Vertex;
  Objective objective = Objective::MinTotal;
  Rat ell;                    // MinTotal: total weight budget
  std::vector<Rat> budgets;   // Vector: per-cycle budgets
  std::int64_t candidate_guard = 2'000'000;
};

/// Exact optimum by backtracking over candidate cycles with disjointness
/// pruning. MinTotal: minimum-total packing of k cycles with total <= ell,
/// or nullopt. ShortestOnly: any packing of k girth-weight cycles.
/// Vector: packing assignable within the budgets. Throws if the candidate
/// enumeration exceeds the guard.
std::optional<CyclePacking> best_packing(const WeightedGraph& g,
                                         const PackingQuery& q);

/// All minimum-weight cut-sets by exhaustive bipartition (n <= ~20).
/// Each cut-set is a sorted list of edge ids; deduplicated.
struct MinCuts {
  Rat weight;
  std::vector<std::vector<EdgeId>> cut_sets;
};
std::optional<MinCuts> brute_min_cuts(const WeightedGraph& g);

/// Exhaustive search for k pairwise disjoint minimum cut-sets.
std::optional<std::vector<std::vector<EdgeId>>> brute_disjoint_min_cuts(
    const WeightedGraph& g, int k);

/// Disjoint Shortest Factors by backtracking. Word symbols are small ints;
/// `blank` needs no factor. Returns per-letter (start,end) index pairs
/// (0-based, inclusive) or nullopt.
struct DsfSolution {
  std::vector<int> letters;
  std::vector<std::pair<int, int>> factors;
};
std::optional<DsfSolution> dsf_brute(const std::vector<int>& word,
                                     int alphabet_size, int blank,
                                     std::size_t length_guard = 100000);

}  // namespace cyclepack::oracle
