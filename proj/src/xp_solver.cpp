#include "cyclepack/xp_solver.hpp"

#include <algorithm>
#include <stdexcept>

#include "cyclepack/chords.hpp"
#include "cyclepack/shortest.hpp"

namespace cyclepack {

namespace {

Cycle relabel(const Cycle& c, const std::vector<Vertex>& orig_vertex,
              const std::vector<EdgeId>& orig_edge, const WeightedGraph& host) {
  std::vector<Vertex> vs;
  std::vector<EdgeId> es;
  for (Vertex v : c.vertices) vs.push_back(orig_vertex[v]);
  for (EdgeId e : c.edge_ids) es.push_back(orig_edge[e]);
  return make_cycle(host, std::move(vs), std::move(es));
}

}  // namespace

GreedyShortCycleCover greedy_short_cycle_cover(const WeightedGraph& g,
                                               const Rat& per_cycle_bound,
                                               int k) {
  GreedyShortCycleCover cover;
  std::vector<bool> alive(g.vertex_count(), true);
  while ((int)cover.cycles.size() < k) {
    std::vector<Vertex> vs;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
      if (alive[v]) vs.push_back(v);
    auto sub = g.induced_on(vs);
    auto c = min_weight_cycle(sub.graph, per_cycle_bound);
    if (!c) break;
    Cycle lifted = relabel(*c, sub.orig_vertex, sub.orig_edge, g);
    for (Vertex v : lifted.vertices) alive[v] = false;
    cover.cycles.push_back(std::move(lifted));
  }
  cover.reached_k = (int)cover.cycles.size() >= k;
  return cover;
}

namespace {

// Exact min-total k-subset search over candidate cycles (sorted by weight).
struct SubsetSearch {
  const std::vector<Cycle>& cands;
  const WeightedGraph& g;
  int k;
  DisjointMode mode;
  Rat budget;
  std::vector<bool> v_used, e_used;
  std::vector<int> chosen;
  std::optional<Rat> best_total;
  std::vector<int> best;

  SubsetSearch(const std::vector<Cycle>& c, const WeightedGraph& g_, int k_,
               DisjointMode m, Rat b)
      : cands(c),
        g(g_),
        k(k_),
        mode(m),
        budget(b),
        v_used(g_.vertex_count(), false),
        e_used(g_.edge_count(), false) {}

  bool clash(const Cycle& c) const {
    if (mode == DisjointMode::Vertex) {
      for (Vertex v : c.vertices)
        if (v_used[v]) return true;
    }
    for (EdgeId e : c.edge_ids)
      if (e_used[e]) return true;
    return false;
  }
  void mark(const Cycle& c, bool on) {
    for (Vertex v : c.vertices) v_used[v] = on;
    for (EdgeId e : c.edge_ids) e_used[e] = on;
  }
  void run(int from, int depth, Rat acc) {
    if (depth == k) {
      if (acc <= budget && (!best_total || acc < *best_total)) {
        best_total = acc;
        best = chosen;
      }
      return;
    }
    for (int i = from; i < (int)cands.size(); ++i) {
      const Cycle& c = cands[i];
      Rat lb = acc + c.weight * Rat(k - depth);
      if (lb > budget) break;
      if (best_total && lb >= *best_total) break;
      if (clash(c)) continue;
      mark(c, true);
      chosen.push_back(i);
      run(i + 1, depth + 1, acc + c.weight);
      chosen.pop_back();
      mark(c, false);
    }
  }
};

std::vector<Cycle> sorted_by_weight(std::vector<Cycle> cs) {
  std::stable_sort(cs.begin(), cs.end(), [](const Cycle& a, const Cycle& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    return a < b;
  });
  return cs;
}

// Witness construction for the overflow branch: the census exceeded its cap,
// so the instance is a yes by the path-count bound, but the theorem is not
// constructive. Try the greedy cover, then chord extraction against cover
// cycles over a bounded path sample, then exact search over the (much
// sparser) cycle census. The exact search also replaces a constructive
// witness whenever it finds a lighter packing, so reported totals stay
// optimal at desk scale.
CyclePacking overflow_witness(const WeightedGraph& g, int k, const Rat& ell,
                              DisjointMode mode, const XpConfig& cfg) {
  std::optional<CyclePacking> witness;
  auto cover = greedy_short_cycle_cover(g, ell / Rat(k), k);
  if (cover.reached_k) {
    cover.cycles.resize(k);
    witness = make_packing(cover.cycles, mode);
  } else if (!cover.cycles.empty() && mode == DisjointMode::Vertex) {
    for (const VertexPath& p : sample_paths(g, ell, 2000)) {
      if (p.trivial()) continue;
      for (const Cycle& c : cover.cycles) {
        bool meets = false;
        for (Vertex v : p.vertices)
          if (c.contains_vertex(v)) meets = true;
        if (!meets) continue;
        auto got = extract_k_cycles_from_chords(g, p, c, k, ell);
        if (got) {
          witness = std::move(got);
          break;
        }
      }
      if (witness) break;
    }
  }
  try {
    std::vector<Cycle> cands =
        sorted_by_weight(cycles_up_to(g, ell, cfg.cycle_guard));
    SubsetSearch ss(cands, g, k, mode, ell);
    ss.run(0, 0, Rat(0));
    if (ss.best_total &&
        (!witness || *ss.best_total < witness->total_weight)) {
      std::vector<Cycle> cycles;
      for (int i : ss.best) cycles.push_back(cands[i]);
      witness = make_packing(std::move(cycles), mode);
    }
  } catch (const std::runtime_error&) {
    // cycle guard tripped; fall back on the constructive witness if any
  }
  if (!witness)
    throw std::logic_error(
        "overflow_witness: census overflow without a packing; "
        "path-count bound contradicted");
  return *witness;
}

}  // namespace

SolveResult solve_minsum(const WeightedGraph& g, int k, const Rat& ell,
                         DisjointMode mode, const XpConfig& cfg) {
  if (k < 1) throw std::invalid_argument("solve_minsum: k < 1");
  SolveResult res;
  std::uint64_t cap = cfg.census.effective_cap(g.vertex_count(), k);
  auto count = count_paths(g, ell, cap);
  if (!count) {
    res.yes = true;
    res.census_overflow = true;
    res.witness = overflow_witness(g, k, ell, mode, cfg);
  } else {
    std::vector<Cycle> cands =
        sorted_by_weight(cycles_up_to(g, ell, cfg.cycle_guard));
    SubsetSearch ss(cands, g, k, mode, ell);
    ss.run(0, 0, Rat(0));
    if (ss.best_total) {
      res.yes = true;
      std::vector<Cycle> cycles;
      for (int i : ss.best) cycles.push_back(cands[i]);
      res.witness = make_packing(std::move(cycles), mode);
    }
  }
  if (res.witness) {
    std::string why;
    if (!packing_valid(g, *res.witness, &why))
      throw std::logic_error("solve_minsum: invalid witness: " + why);
    if ((int)res.witness->cycles.size() != k ||
        res.witness->total_weight > ell)
      throw std::logic_error("solve_minsum: witness violates bounds");
  }
  return res;
}

namespace {

// Branching per the min-vector scheme: budgets ascending; enumerate cycles
// within the smallest budget, fix one as the cycle for that budget, delete
// its vertices (or edges) and recurse.
std::optional<std::vector<Cycle>> minvec_rec(const WeightedGraph& g,
                                             const std::vector<Rat>& budgets,
                                             int at, DisjointMode mode,
                                             const XpConfig& cfg) {
  int remaining = (int)budgets.size() - at;
  if (remaining == 0) return std::vector<Cycle>{};
  const Rat& ell1 = budgets[at];
  std::uint64_t cap = cfg.census.effective_cap(g.vertex_count(), remaining);
  auto count = count_paths(g, ell1, cap);
  if (!count) {
    // More paths than the no-instance bound allows: there are `remaining`
    // disjoint cycles of total weight <= ell1, hence each within every
    // remaining budget.
    CyclePacking p = overflow_witness(g, remaining, ell1, mode, cfg);
    return p.cycles;
  }
  std::vector<Cycle> cands =
      sorted_by_weight(cycles_up_to(g, ell1, cfg.cycle_guard));
  for (const Cycle& c : cands) {
    if (c.weight > ell1) break;
    Subgraph sub;
    if (mode == DisjointMode::Vertex) {
      std::vector<bool> kv(g.vertex_count(), true);
      for (Vertex v : c.vertices) kv[v] = false;
      std::vector<bool> ke(g.edge_count(), false);
      for (EdgeId e = 0; e < g.edge_count(); ++e)
        ke[e] = kv[g.edge(e).a] && kv[g.edge(e).b];
      sub = g.induced(kv, ke);
    } else {
      std::vector<bool> kv(g.vertex_count(), true);
      std::vector<bool> ke(g.edge_count(), true);
      for (EdgeId e : c.edge_ids) ke[e] = false;
      sub = g.induced(kv, ke);
    }
    auto rest = minvec_rec(sub.graph, budgets, at + 1, mode, cfg);
    if (rest) {
      std::vector<Cycle> out{c};
      for (const Cycle& rc : *rest)
        out.push_back(relabel(rc, sub.orig_vertex, sub.orig_edge, g));
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace

SolveResult solve_minvector(const WeightedGraph& g, std::vector<Rat> budgets,
                            DisjointMode mode, const XpConfig& cfg) {
  if (budgets.empty()) throw std::invalid_argument("solve_minvector: k = 0");
  for (const Rat& b : budgets)
    if (!b.positive())
      throw std::invalid_argument("solve_minvector: budget <= 0");
  std::sort(budgets.begin(), budgets.end());
  SolveResult res;
  auto cycles = minvec_rec(g, budgets, 0, mode, cfg);
  if (cycles) {
    res.yes = true;
    res.witness = make_packing(std::move(*cycles), mode);
    std::string why;
    if (!packing_valid(g, *res.witness, &why))
      throw std::logic_error("solve_minvector: invalid witness: " + why);
    // check assignability: sorted weights fit sorted budgets
    std::vector<Rat> ws;
    for (const Cycle& c : res.witness->cycles) ws.push_back(c.weight);
    std::sort(ws.begin(), ws.end());
    for (size_t i = 0; i < ws.size(); ++i)
      if (ws[i] > budgets[i])
        throw std::logic_error("solve_minvector: witness exceeds budgets");
  }
  return res;
}

}  // namespace cyclepack
