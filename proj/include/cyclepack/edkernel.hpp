#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cyclepack/lsct.hpp"

namespace cyclepack {

/// The >= 4k-leaves shortcut: leaf cycles (shortest facial cycles, including
/// roots of single-cycle components) sharing edges form a planar graph, so at
/// least a quarter of them are pairwise edge-disjoint. Returns a verified
/// packing of k when |leaf_cycles| >= 4k, nullopt (continue) otherwise.
std::optional<CyclePacking> leaf_shortcut(const WeightedGraph& g,
                                          const std::vector<Cycle>& leaf_cycles,
                                          int k);

/// Unique lowest extension of a shortest cycle C: the minimal shortest cycle
/// C' with C <e C' (edge-disjoint enclosure); nullopt when even the root
/// shares edges with C. C may be a tree node or a non-tree pair.
std::optional<Cycle> lowest_extension(const LsctBuild& b, const Cycle& c);

/// Maximal chain C = C_0 <e C_1 <e ... obtained by iterating the lowest
/// extension; entries are pairwise edge-disjoint.
std::vector<Cycle> extension_chain(const LsctBuild& b, const Cycle& c);

struct MarkedCycles {
  std::vector<Cycle> base;      // leaves, branching U-nodes, S-nodes + wings
  std::vector<Cycle> non_tree;  // all S-node path pairs absent from the tree
  std::vector<std::pair<Cycle, std::vector<Cycle>>> chains;  // per base cycle
  std::vector<Cycle> full;      // deduplicated marked set C_M
};
/// The marked set. When no extension chain reaches length k, the size bound
/// (<= 52 k^2) and closure under lowest extension are asserted. Callers
/// short-circuit to a trivial yes when some chain has length >= k (its
/// entries are pairwise edge-disjoint shortest cycles).
MarkedCycles mark_cycles(const LsctBuild& b, int k);

/// Pluggable weight compression (the small-coefficient equivalent-weights
/// step). The default keeps weights unchanged; any replacement must pass
/// verify_weight_compression, which gates sign-preservation over cycle
/// weight comparisons.
class WeightCompressor {
 public:
  virtual ~WeightCompressor() = default;
  virtual std::vector<Rat> compress(const std::vector<Rat>& w) const = 0;
};
class IdentityCompressor : public WeightCompressor {
 public:
  std::vector<Rat> compress(const std::vector<Rat>& w) const override {
    return w;
  }
};

/// Pass iff cycle-weight comparisons agree in sign under both weightings
/// over a bounded enumeration (all cycles when at most 10^4, otherwise all
/// shortest plus per-edge shortest cycles under both weightings).
bool verify_weight_compression(const WeightedGraph& g_structure,
                               const std::vector<Rat>& w_before,
                               const std::vector<Rat>& w_after);

struct TrivialYes {
  CyclePacking witness;
};
struct TrivialNo {};
struct KernelInstance {
  WeightedGraph graph;  // simple; no degree-<=2 vertices
  int k = 0;
  std::vector<std::string> rule_log;  // one line per rule application
};
using KernelResult = std::variant<TrivialYes, TrivialNo, KernelInstance>;

struct KernelConfig {
  const WeightCompressor* compressor = nullptr;  // identity when null
};

/// Edge-disjoint shortest cycle packing kernel on planar graphs: marked
/// cycles, then dissolve / loop / parallel reduction rules to exhaustion.
/// The output graph has O(k'^2) vertices (asserted <= 200 k'^2).
KernelResult kernelize_ed(const WeightedGraph& g, int k,
                          const KernelConfig& cfg = {});

struct EdResult {
  bool yes = false;
  std::optional<CyclePacking> witness;
};
/// Exact FPT solver: enumerates k-tuples of marked cycles for edge
/// disjointness (after the leaf and chain shortcuts).
EdResult solve_scp_ed_planar(const WeightedGraph& g, int k);

struct MinCutResult {
  bool yes = false;
  Rat min_cut_weight;
  std::vector<std::vector<EdgeId>> cut_sets;  // primal edge ids
};
/// k minimum cuts with pairwise disjoint cut-sets on a connected planar
/// graph, via edge-disjoint shortest cycle packing on the dual. Throws on
/// disconnected input.
MinCutResult solve_min_cut_packing_planar(const WeightedGraph& g, int k);

}  // namespace cyclepack
