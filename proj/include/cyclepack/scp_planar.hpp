#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cyclepack/lsct.hpp"

namespace cyclepack {

/// Random-separation parameters. red numerator/denominator encode the exact
/// probability 2/(3k+3); trials follow ceil((81(k+1)/16)^(2k)) clamped by
/// max_trials. With exhaustive_mode (or when every coloring fits the budget)
/// all 2^|P| colorings run instead, making the answer exact.
struct SeparationConfig {
  int k = 1;
  std::uint64_t rng_seed = 1;
  std::uint64_t max_trials = 1'000'000;
  bool exhaustive_mode = false;
  std::uint32_t exhaustive_path_bound = 20;  // require 2^|P| <= 2^bound

  static std::uint64_t paper_trials(int k, std::uint64_t clamp);
};

/// Per-S-node large/small classification: large iff it has at least 3k+3
/// children. Indexed by node id; false for non-S-nodes.
std::vector<bool> classify_s_nodes(const LsctTree& t, int k);

/// A path eligible for coloring: path `index` of small S-node `node`.
struct PathRef {
  int node = -1;
  int index = -1;
  friend bool operator==(const PathRef&, const PathRef&) = default;
};
std::vector<PathRef> small_s_node_paths(const LsctTree& t, int k);

/// Reproducible biased coloring of the path family: red with probability
/// 2/(3k+3), independently per path, derived from (seed, trial).
std::vector<bool> color_paths(std::size_t path_count, int k,
                              std::uint64_t seed, std::uint64_t trial);

/// LSCT with selected small S-nodes split: where exactly two red paths form
/// a non-tree cycle and the rest of the family is blue, that cycle becomes a
/// new node adopting the enclosed children.
struct StarNode {
  Cycle cycle;
  int parent = -1;
  std::vector<int> children;
  bool inserted = false;  // spliced non-tree cycle
};
struct StarTree {
  std::vector<StarNode> nodes;
  int root = 0;
  std::vector<int> leaves() const;
};
StarTree build_star_tree(const WeightedGraph& g, const LsctTree& t,
                         const std::vector<PathRef>& paths,
                         const std::vector<bool>& red);

struct ScpResult {
  bool yes = false;
  std::optional<CyclePacking> witness;
  std::uint64_t trials_run = 0;
  bool exact = false;  // exhaustive coloring space covered
  double failure_bound = 0.0;  // residual false-negative probability when not
};

struct ScpTrace {
  std::vector<std::string> lines;
};

/// Shortest Cycle Packing on planar graphs: k vertex-disjoint girth-weight
/// cycles. Exact in exhaustive mode; one-sided error (false negatives only,
/// probability <= 1/e at the paper trial count) in randomized mode.
ScpResult solve_scp_planar(const WeightedGraph& g, int k,
                           const SeparationConfig& cfg, int jobs = 1,
                           ScpTrace* trace = nullptr);

}  // namespace cyclepack
