#include "cyclepack/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace cyclepack::oracle {

namespace {

struct CycleCollector {
  std::set<std::vector<EdgeId>> seen;
  std::vector<Cycle> out;
  void add(Cycle c) {
    if (seen.insert(c.sorted_edges()).second) out.push_back(std::move(c));
  }
};

// Plain weight-pruned DFS over edges; no shortest-path pruning, so it stays
// structurally independent from the solver-side enumerator.
void grow(const WeightedGraph& g, const Rat& bound, std::vector<Vertex>& vs,
          std::vector<EdgeId>& es, std::vector<bool>& used, Rat w,
          CycleCollector& col) {
  Vertex s = vs.front();
  Vertex cur = vs.back();
  for (EdgeId e : g.incident(cur)) {
    const Edge& ed = g.edge(e);
    if (ed.is_loop()) continue;
    Vertex nxt = ed.other(cur);
    Rat nw = w + ed.weight;
    if (nw > bound) continue;
    if (nxt == s) {
      bool valid = vs.size() >= 3 || (vs.size() == 2 && e != es.front());
      if (valid && nxt <= *std::min_element(vs.begin(), vs.end())) {
        std::vector<Vertex> cvs = vs;
        std::vector<EdgeId> ces = es;
        ces.push_back(e);
        col.add(make_cycle(g, std::move(cvs), std::move(ces)));
      }
      continue;
    }
    if (used[nxt] || nxt < s) continue;
    used[nxt] = true;
    vs.push_back(nxt);
    es.push_back(e);
    grow(g, bound, vs, es, used, nw, col);
    vs.pop_back();
    es.pop_back();
    used[nxt] = false;
  }
}

}  // namespace

std::vector<Cycle> all_cycles_up_to(const WeightedGraph& g, const Rat& bound) {
  CycleCollector col;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (ed.is_loop() && ed.weight <= bound)
      col.add(make_cycle(g, {ed.a}, {e}));
  }
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    std::vector<bool> used(g.vertex_count(), false);
    used[s] = true;
    std::vector<Vertex> vs{s};
    std::vector<EdgeId> es;
    grow(g, bound, vs, es, used, Rat(0), col);
  }
  std::sort(col.out.begin(), col.out.end());
  return col.out;
}

std::vector<Cycle> all_cycles_by_edge_subsets(const WeightedGraph& g,
                                              const Rat& bound) {
  int m = g.edge_count();
  if (m > 24) throw std::invalid_argument("edge-subset enumerator: too large");
  CycleCollector col;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    Rat w;
    std::vector<EdgeId> es;
    for (int e = 0; e < m; ++e)
      if (mask & (1u << e)) {
        es.push_back(e);
        w += g.edge(e).weight;
      }
    if (w > bound) continue;
    // The subset is a cycle iff every touched vertex has degree exactly 2
    // (loops count twice) and the edge set is connected.
    std::map<Vertex, int> deg;
    for (EdgeId e : es) {
      deg[g.edge(e).a]++;
      deg[g.edge(e).b]++;
    }
    bool ok = true;
    for (auto& [v, d] : deg)
      if (d != 2) ok = false;
    if (!ok) continue;
    if (es.size() == 1 && !g.edge(es[0]).is_loop()) continue;
    // connectivity over touched vertices
    std::map<Vertex, std::vector<std::pair<Vertex, EdgeId>>> nb;
    for (EdgeId e : es) {
      nb[g.edge(e).a].push_back({g.edge(e).b, e});
      nb[g.edge(e).b].push_back({g.edge(e).a, e});
    }
    std::set<Vertex> vis;
    std::vector<Vertex> stack{deg.begin()->first};
    vis.insert(stack[0]);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (auto& [w2, e2] : nb[v])
        if (!vis.count(w2)) {
          vis.insert(w2);
          stack.push_back(w2);
        }
    }
    if (vis.size() != deg.size()) continue;
    // Walk the cycle to build an ordered vertex sequence.
    if (es.size() == 1) {
      col.add(make_cycle(g, {g.edge(es[0]).a}, {es[0]}));
      continue;
    }
    Vertex start = deg.begin()->first;
    std::vector<Vertex> vs{start};
    std::vector<EdgeId> ces;
    Vertex cur = start;
    EdgeId prev = -1;
    do {
      bool stepped = false;
      for (auto& [w2, e2] : nb[cur]) {
        if (e2 == prev) continue;
        ces.push_back(e2);
        prev = e2;
        cur = w2;
        if (cur != start) vs.push_back(cur);
        stepped = true;
        break;
      }
      if (!stepped) break;
    } while (cur != start);
    if (ces.size() == es.size())
      col.add(make_cycle(g, std::move(vs), std::move(ces)));
  }
  std::sort(col.out.begin(), col.out.end());
  return col.out;
}

std::optional<Rat> brute_girth(const WeightedGraph& g) {
  Rat total;
  for (const Edge& e : g.edges()) total += e.weight;
  auto cs = all_cycles_up_to(g, total);
  if (cs.empty()) return std::nullopt;
  Rat best = cs[0].weight;
  for (const Cycle& c : cs) best = std::min(best, c.weight);
  return best;
}

namespace {

struct PackSearch {
  const std::vector<Cycle>& cands;  // sorted by (weight, canonical)
  int k;
  DisjointMode mode;
  Rat budget;                          // MinTotal: hard total bound
  const std::vector<Rat>* budgetsupd;  // Vector mode, ascending
  std::vector<int> chosen;
  std::vector<bool> v_used, e_used;
  std::optional<std::vector<int>> best;
  std::optional<Rat> best_total;

  bool conflicts(const Cycle& c) const {
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

  // MinTotal: find k disjoint with minimum total weight <= budget.
  void run_min_total(int from, int depth, Rat acc) {
    if (depth == k) {
      if (acc <= budget && (!best_total || acc < *best_total)) {
        best_total = acc;
        best = chosen;
      }
      return;
    }
    for (int i = from; i < (int)cands.size(); ++i) {
      const Cycle& c = cands[i];
      // lower bound: remaining slots each need weight >= c.weight
      Rat lb = acc + c.weight * Rat(k - depth);
      if (lb > budget) break;
      if (best_total && lb >= *best_total) break;
      if (conflicts(c)) continue;
      mark(c, true);
      chosen.push_back(i);
      run_min_total(i + 1, depth + 1, acc + c.weight);
      chosen.pop_back();
      mark(c, false);
    }
  }

  // Vector mode: budgets ascending; slot d takes a cycle of weight <=
  // budgets[d]; the chosen cycle must be the minimum-weight one remaining,
  // which the ascending candidate order guarantees via `from`.
  void run_vector(int from, int depth) {
    if (best) return;
    if (depth == k) {
      best = chosen;
      return;
    }
    for (int i = from; i < (int)cands.size(); ++i) {
      const Cycle& c = cands[i];
      if (c.weight > (*budgetsupd)[depth]) break;
      if (conflicts(c)) continue;
      mark(c, true);
      chosen.push_back(i);
      run_vector(i + 1, depth + 1);
      chosen.pop_back();
      mark(c, false);
      if (best) return;
    }
  }
};

}  // namespace

std::optional<CyclePacking> best_packing(const WeightedGraph& g,
                                         const PackingQuery& q) {
  Rat bound;
  switch (q.objective) {
    case Objective::MinTotal:
      bound = q.ell;
      break;
    case Objective::ShortestOnly: {
      auto bg = brute_girth(g);
      if (!bg) return std::nullopt;
      bound = *bg;
      break;
    }
    case Objective::Vector: {
      if (q.budgets.empty()) throw std::invalid_argument("no budgets");
      bound = *std::max_element(q.budgets.begin(), q.budgets.end());
      break;
    }
  }
  std::vector<Cycle> cands = all_cycles_up_to(g, bound);
  if (q.objective == Objective::ShortestOnly) {
    std::vector<Cycle> f;
    for (Cycle& c : cands)
      if (c.weight == bound) f.push_back(std::move(c));
    cands = std::move(f);
  }
  if ((std::int64_t)cands.size() > q.candidate_guard)
    throw std::runtime_error("best_packing: candidate guard exceeded");
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Cycle& a, const Cycle& b) {
                     if (a.weight != b.weight) return a.weight < b.weight;
                     return a < b;
                   });
  if ((int)cands.size() < q.k) return std::nullopt;

  PackSearch ps{cands,
                q.k,
                q.mode,
                Rat(0),
                nullptr,
                {},
                std::vector<bool>(g.vertex_count(), false),
                std::vector<bool>(g.edge_count(), false),
                std::nullopt,
                std::nullopt};
  std::vector<Rat> budgets = q.budgets;
  std::sort(budgets.begin(), budgets.end());
  if (q.objective == Objective::Vector) {
    ps.budgetsupd = &budgets;
    ps.run_vector(0, 0);
  } else if (q.objective == Objective::ShortestOnly) {
    // decision: any k disjoint girth-weight cycles
    std::vector<Rat> unit(q.k, bound);
    ps.budgetsupd = &unit;
    ps.run_vector(0, 0);
  } else {
    ps.budget = q.ell;
    ps.run_min_total(0, 0, Rat(0));
  }
  if (!ps.best) return std::nullopt;
  std::vector<Cycle> cycles;
  for (int i : *ps.best) cycles.push_back(cands[i]);
  return make_packing(std::move(cycles), q.mode);
}

std::optional<MinCuts> brute_min_cuts(const WeightedGraph& g) {
  int n = g.vertex_count();
  if (n < 2) return std::nullopt;
  if (n > 22) throw std::invalid_argument("brute_min_cuts: too large");
  std::optional<Rat> best;
  std::set<std::vector<EdgeId>> sets;
  for (std::uint32_t mask = 1; mask < (1u << (n - 1)); ++mask) {
    // vertex n-1 always on the Y side: each bipartition counted once
    Rat w;
    std::vector<EdgeId> cut;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edge(e);
      if (ed.is_loop()) continue;
      bool ina = ed.a < n - 1 && (mask >> ed.a & 1);
      bool inb = ed.b < n - 1 && (mask >> ed.b & 1);
      if (ina != inb) {
        w += ed.weight;
        cut.push_back(e);
      }
    }
    if (cut.empty()) continue;  // disconnected side placement
    if (!best || w < *best) {
      best = w;
      sets.clear();
    }
    if (w == *best) sets.insert(cut);
  }
  if (!best) return std::nullopt;
  MinCuts mc;
  mc.weight = *best;
  mc.cut_sets.assign(sets.begin(), sets.end());
  return mc;
}

namespace {

bool pick_cuts(const std::vector<std::vector<EdgeId>>& cuts, int k, int from,
               std::set<EdgeId>& used, std::vector<int>& chosen) {
  if ((int)chosen.size() == k) return true;
  for (int i = from; i < (int)cuts.size(); ++i) {
    bool clash = false;
    for (EdgeId e : cuts[i])
      if (used.count(e)) {
        clash = true;
        break;
      }
    if (clash) continue;
    for (EdgeId e : cuts[i]) used.insert(e);
    chosen.push_back(i);
    if (pick_cuts(cuts, k, i + 1, used, chosen)) return true;
    chosen.pop_back();
    for (EdgeId e : cuts[i]) used.erase(e);
  }
  return false;
}

}  // namespace

std::optional<std::vector<std::vector<EdgeId>>> brute_disjoint_min_cuts(
    const WeightedGraph& g, int k) {
  auto mc = brute_min_cuts(g);
  if (!mc) return std::nullopt;
  std::set<EdgeId> used;
  std::vector<int> chosen;
  if (!pick_cuts(mc->cut_sets, k, 0, used, chosen)) return std::nullopt;
  std::vector<std::vector<EdgeId>> out;
  for (int i : chosen) out.push_back(mc->cut_sets[i]);
  return out;
}

namespace {

bool pick_factors(const std::vector<std::vector<std::pair<int, int>>>& options,
                  int at, std::vector<bool>& taken,
                  std::vector<std::pair<int, int>>& chosen) {
  if (at == (int)options.size()) return true;
  for (auto& [i, j] : options[at]) {
    bool clash = false;
    for (int p = i; p <= j && !clash; ++p) clash = taken[p];
    if (clash) continue;
    for (int p = i; p <= j; ++p) taken[p] = true;
    chosen[at] = {i, j};
    if (pick_factors(options, at + 1, taken, chosen)) return true;
    for (int p = i; p <= j; ++p) taken[p] = false;
  }
  return false;
}

}  // namespace

std::optional<DsfSolution> dsf_brute(const std::vector<int>& word,
                                     int alphabet_size, int blank,
                                     std::size_t length_guard) {
  if (word.size() > length_guard)
    throw std::invalid_argument("dsf_brute: word length guard exceeded");
  std::vector<int> letters;
  std::vector<std::vector<std::pair<int, int>>> options;
  for (int a = 0; a < alphabet_size; ++a) {
    if (a == blank) continue;
    // shortest a-factor length = min over consecutive occurrences
    std::vector<int> pos;
    for (int i = 0; i < (int)word.size(); ++i)
      if (word[i] == a) pos.push_back(i);
    if (pos.size() < 2) return std::nullopt;  // no a-factor at all
    int d = INT32_MAX;
    for (size_t i = 0; i + 1 < pos.size(); ++i)
      d = std::min(d, pos[i + 1] - pos[i]);
    std::vector<std::pair<int, int>> opts;
    for (size_t i = 0; i < pos.size(); ++i)
      for (size_t j = i + 1; j < pos.size(); ++j)
        if (pos[j] - pos[i] == d) opts.push_back({pos[i], pos[j]});
    letters.push_back(a);
    options.push_back(std::move(opts));
  }
  // most constrained letters first
  std::vector<int> order(letters.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return options[x].size() < options[y].size();
  });
  std::vector<std::vector<std::pair<int, int>>> opts2;
  std::vector<int> letters2;
  for (int i : order) {
    opts2.push_back(options[i]);
    letters2.push_back(letters[i]);
  }
  std::vector<bool> taken(word.size(), false);
  std::vector<std::pair<int, int>> chosen(letters2.size());
  if (!pick_factors(opts2, 0, taken, chosen)) return std::nullopt;
  DsfSolution sol;
  sol.letters = letters2;
  sol.factors = chosen;
  return sol;
}

}  // namespace cyclepack::oracle
