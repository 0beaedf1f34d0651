#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "cyclepack/graph.hpp"

namespace cyclepack {

/// Census cap policy. Under PaperFormula the cap is n^(256k^4) * n^(1024k^5),
/// clamped to max_cap since the formula overflows anything represent­able for
/// n >= 2; Explicit uses cap directly.
struct PathCensusConfig {
  enum class Policy { PaperFormula, Explicit };
  Policy policy = Policy::PaperFormula;
  Rat length_bound;
  std::uint64_t cap = 10'000'000;      // explicit N
  std::uint64_t max_cap = 10'000'000;  // clamp for the paper formula

  std::uint64_t effective_cap(int n, int k) const;
};

struct PathCensus {
  bool overflow = false;
  std::vector<VertexPath> paths;  // empty when overflow
};

/// All simple paths of weight <= ell (including the n trivial single-vertex
/// paths), deduplicated by canonical endpoint order, or Overflow exactly when
/// the true count exceeds cap. Runs in poly(n) * cap steps either way.
PathCensus enumerate_paths(const WeightedGraph& g, const Rat& ell,
                           std::uint64_t cap);

/// Count-only variant with identical overflow semantics; nullopt on overflow.
std::optional<std::uint64_t> count_paths(const WeightedGraph& g,
                                         const Rat& ell, std::uint64_t cap);

/// Up to `limit` simple paths of weight <= ell, in enumeration order, with no
/// overflow semantics. Supplies candidates to the chord extractor when the
/// census overflowed.
std::vector<VertexPath> sample_paths(const WeightedGraph& g, const Rat& ell,
                                     std::size_t limit);

/// All simple cycles of weight <= ell via bounded DFS; throws if more than
/// `guard` cycles exist. The solver-side census companion (the oracle keeps
/// its own enumerator).
std::vector<Cycle> cycles_up_to(const WeightedGraph& g, const Rat& ell,
                                std::uint64_t guard = 4'000'000);

}  // namespace cyclepack
