#include "cyclepack/path_census.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace cyclepack {

std::uint64_t PathCensusConfig::effective_cap(int n, int k) const {
  if (policy == Policy::Explicit) return cap;
  // N = n^(256k^4 + 1024k^5); exceeds max_cap already for n = 2, k = 1,
  // so compute in logs and clamp.
  if (n <= 1) return max_cap;
  long double exponent =
      256.0L * std::pow((long double)k, 4) + 1024.0L * std::pow((long double)k, 5);
  long double lg = exponent * std::log2((long double)n);
  if (lg >= 63.0L) return max_cap;
  std::uint64_t v = (std::uint64_t)llroundl(exp2l(lg));
  return std::min(v, max_cap);
}

namespace {

// DFS over oriented simple paths, counting a path only in its canonical
// orientation (first endpoint below last). Every prefix of an oriented path
// is itself an oriented path, so the number of DFS nodes is at most twice the
// true path count plus n; aborting once the explored budget passes
// 2*(cap+n) therefore certifies count > cap without full enumeration.
struct PathDfs {
  const WeightedGraph& g;
  Rat ell;
  std::uint64_t cap;
  std::uint64_t explored_budget;
  std::uint64_t canonical = 0;
  std::uint64_t explored = 0;
  bool overflow = false;
  std::vector<VertexPath>* sink;  // optional
  std::vector<bool> on_path;

  PathDfs(const WeightedGraph& g_, Rat ell_, std::uint64_t cap_,
          std::vector<VertexPath>* sink_)
      : g(g_),
        ell(ell_),
        cap(cap_),
        explored_budget(2 * (cap_ + (std::uint64_t)g_.vertex_count()) + 4),
        sink(sink_),
        on_path(g_.vertex_count(), false) {}

  void record(const std::vector<Vertex>& vs, const std::vector<EdgeId>& es,
              const Rat& w) {
    ++canonical;
    if (canonical > cap) {
      overflow = true;
      return;
    }
    if (sink) {
      VertexPath p;
      p.vertices = vs;
      p.edge_ids = es;
      p.weight = w;
      sink->push_back(std::move(p));
    }
  }

  void run() {
    int n = g.vertex_count();
    for (Vertex v = 0; v < n && !overflow; ++v) {
      std::vector<Vertex> vs{v};
      std::vector<EdgeId> es;
      record(vs, es, Rat(0));  // trivial path
      if (overflow) return;
      on_path[v] = true;
      extend(vs, es, Rat(0));
      on_path[v] = false;
    }
  }

  void extend(std::vector<Vertex>& vs, std::vector<EdgeId>& es, Rat w) {
    if (overflow) return;
    Vertex cur = vs.back();
    for (EdgeId e : g.incident(cur)) {
      const Edge& ed = g.edge(e);
      if (ed.is_loop()) continue;
      Vertex nxt = ed.other(cur);
      if (on_path[nxt]) continue;
      Rat nw = w + ed.weight;
      if (nw > ell) continue;
      ++explored;
      if (explored > explored_budget) {
        overflow = true;
        return;
      }
      vs.push_back(nxt);
      es.push_back(e);
      if (vs.front() < vs.back()) record(vs, es, nw);
      if (!overflow) {
        on_path[nxt] = true;
        extend(vs, es, nw);
        on_path[nxt] = false;
      }
      vs.pop_back();
      es.pop_back();
      if (overflow) return;
    }
  }
};

}  // namespace

PathCensus enumerate_paths(const WeightedGraph& g, const Rat& ell,
                           std::uint64_t cap) {
  if (cap < 1) throw std::invalid_argument("enumerate_paths: cap must be >= 1");
  if (ell.negative()) throw std::invalid_argument("enumerate_paths: ell < 0");
  PathCensus out;
  PathDfs dfs(g, ell, cap, &out.paths);
  dfs.run();
  if (dfs.overflow) {
    out.overflow = true;
    out.paths.clear();
  }
  return out;
}

std::optional<std::uint64_t> count_paths(const WeightedGraph& g,
                                         const Rat& ell, std::uint64_t cap) {
  PathDfs dfs(g, ell, cap, nullptr);
  dfs.run();
  if (dfs.overflow) return std::nullopt;
  return dfs.canonical;
}

std::vector<VertexPath> sample_paths(const WeightedGraph& g, const Rat& ell,
                                     std::size_t limit) {
  std::vector<VertexPath> out;
  PathDfs dfs(g, ell, limit, &out);
  dfs.run();
  if (out.size() > limit) out.resize(limit);
  return out;
}

namespace {

struct CycleDfs {
  const WeightedGraph& g;
  Rat ell;
  std::uint64_t guard;
  std::set<std::vector<EdgeId>> seen;
  std::vector<Cycle> out;
  std::vector<bool> on_path;

  void run() {
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edge(e);
      if (ed.is_loop() && ed.weight <= ell)
        add(make_cycle(g, {ed.a}, {e}));
    }
    if (g.multi_allowed()) {
      for (EdgeId e1 = 0; e1 < g.edge_count(); ++e1)
        for (EdgeId e2 = e1 + 1; e2 < g.edge_count(); ++e2) {
          const Edge& a = g.edge(e1);
          const Edge& b = g.edge(e2);
          if (a.is_loop() || b.is_loop()) continue;
          if (std::minmax(a.a, a.b) != std::minmax(b.a, b.b)) continue;
          if (a.weight + b.weight > ell) continue;
          add(make_cycle(g, {std::min(a.a, a.b), std::max(a.a, a.b)},
                         {e1, e2}));
        }
    }
    on_path.assign(g.vertex_count(), false);
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
      std::vector<Vertex> vs{s};
      std::vector<EdgeId> es;
      on_path[s] = true;
      extend(s, vs, es, Rat(0));
      on_path[s] = false;
    }
    std::sort(out.begin(), out.end());
  }

  void add(Cycle c) {
    if (seen.insert(c.sorted_edges()).second) {
      out.push_back(std::move(c));
      if (out.size() > guard)
        throw std::runtime_error("cycles_up_to: guard exceeded");
    }
  }

  void extend(Vertex s, std::vector<Vertex>& vs, std::vector<EdgeId>& es,
              Rat w) {
    Vertex cur = vs.back();
    for (EdgeId e : g.incident(cur)) {
      const Edge& ed = g.edge(e);
      if (ed.is_loop()) continue;
      Vertex nxt = ed.other(cur);
      Rat nw = w + ed.weight;
      if (nw > ell) continue;
      if (nxt == s) {
        if (vs.size() >= 3 && vs[1] < cur) {
          std::vector<Vertex> cvs = vs;
          std::vector<EdgeId> ces = es;
          ces.push_back(e);
          add(make_cycle(g, std::move(cvs), std::move(ces)));
        }
        continue;
      }
      if (nxt < s || on_path[nxt]) continue;
      on_path[nxt] = true;
      vs.push_back(nxt);
      es.push_back(e);
      extend(s, vs, es, nw);
      vs.pop_back();
      es.pop_back();
      on_path[nxt] = false;
    }
  }
};

}  // namespace

std::vector<Cycle> cycles_up_to(const WeightedGraph& g, const Rat& ell,
                                std::uint64_t guard) {
  CycleDfs dfs{g, ell, guard};
  dfs.run();
  return std::move(dfs.out);
}

}  // namespace cyclepack
