#pragma once

#include <optional>
#include <vector>

#include "cyclepack/graph.hpp"
#include "cyclepack/path_census.hpp"

namespace cyclepack {

/// Maximal collection of pairwise vertex-disjoint cycles each of weight
/// <= per_cycle_bound, grown by repeatedly taking the minimum-weight
/// remaining cycle (canonical tie-break). Growth stops early at k cycles;
/// a full-size cover is itself a packing witness.
struct GreedyShortCycleCover {
  std::vector<Cycle> cycles;  // in original vertex ids
  bool reached_k = false;
};
GreedyShortCycleCover greedy_short_cycle_cover(const WeightedGraph& g,
                                               const Rat& per_cycle_bound,
                                               int k);

struct SolveResult {
  bool yes = false;
  std::optional<CyclePacking> witness;  // set on yes
  bool census_overflow = false;         // diagnostics
};

struct XpConfig {
  PathCensusConfig census;  // policy + caps; length_bound is set per call
  std::uint64_t cycle_guard = 4'000'000;
};

/// Min-Sum Cycle Packing decision + optimal witness: yes iff k mode-disjoint
/// cycles of total weight <= ell exist; the witness carries the minimum
/// total weight. On census overflow the answer is yes and a witness is built
/// constructively (greedy cover, then bounded cycle branching).
SolveResult solve_minsum(const WeightedGraph& g, int k, const Rat& ell,
                         DisjointMode mode, const XpConfig& cfg = {});

/// Min-Vector variant: budgets are per-cycle caps under optimal assignment.
SolveResult solve_minvector(const WeightedGraph& g, std::vector<Rat> budgets,
                            DisjointMode mode, const XpConfig& cfg = {});

}  // namespace cyclepack
