#include "cyclepack/shortest.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>

namespace cyclepack {

std::optional<VertexPath> ShortestPaths::path_to(const WeightedGraph& g,
                                                 Vertex t) const {
  if (!dist[t]) return std::nullopt;
  std::vector<Vertex> vs{t};
  std::vector<EdgeId> es;
  Vertex cur = t;
  while (parent_edge[cur] != -1) {
    EdgeId e = parent_edge[cur];
    es.push_back(e);
    cur = g.edge(e).other(cur);
    vs.push_back(cur);
  }
  VertexPath p;
  p.vertices.assign(vs.rbegin(), vs.rend());
  p.edge_ids.assign(es.rbegin(), es.rend());
  p.weight = *dist[t];
  return p;
}

ShortestPaths dijkstra(const WeightedGraph& g, Vertex source,
                       const std::vector<bool>* edge_mask) {
  int n = g.vertex_count();
  ShortestPaths sp;
  sp.dist.assign(n, std::nullopt);
  sp.parent_edge.assign(n, -1);
  using Item = std::pair<Rat, Vertex>;
  auto cmp = [](const Item& x, const Item& y) { return x.first > y.first; };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
  sp.dist[source] = Rat(0);
  pq.push({Rat(0), source});
  std::vector<bool> done(n, false);
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (done[v]) continue;
    done[v] = true;
    for (EdgeId e : g.incident(v)) {
      if (edge_mask && !(*edge_mask)[e]) continue;
      const Edge& ed = g.edge(e);
      if (ed.is_loop()) continue;
      Vertex w = ed.other(v);
      Rat nd = d + ed.weight;
      if (!sp.dist[w] || nd < *sp.dist[w] ||
          (nd == *sp.dist[w] && sp.parent_edge[w] > e && !done[w])) {
        if (!sp.dist[w] || nd < *sp.dist[w]) pq.push({nd, w});
        sp.dist[w] = nd;
        sp.parent_edge[w] = e;
      }
    }
  }
  return sp;
}

std::optional<Cycle> shortest_cycle_through_edge(const WeightedGraph& g,
                                                 EdgeId eid) {
  if (eid < 0 || eid >= g.edge_count())
    throw std::out_of_range("shortest_cycle_through_edge: unknown edge");
  const Edge& e = g.edge(eid);
  if (e.is_loop()) {
    return make_cycle(g, {e.a}, {eid});
  }
  std::vector<bool> mask(g.edge_count(), true);
  mask[eid] = false;
  ShortestPaths sp = dijkstra(g, e.a, &mask);
  auto p = sp.path_to(g, e.b);
  if (!p) return std::nullopt;  // bridge
  std::vector<Vertex> vs = p->vertices;
  std::vector<EdgeId> es = p->edge_ids;
  es.push_back(eid);
  return make_cycle(g, std::move(vs), std::move(es));
}

std::optional<Cycle> min_weight_cycle(const WeightedGraph& g,
                                      const std::optional<Rat>& budget) {
  std::optional<Cycle> best;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto c = shortest_cycle_through_edge(g, e);
    if (!c) continue;
    if (budget && c->weight > *budget) continue;
    if (!best || c->weight < best->weight ||
        (c->weight == best->weight && *c < *best))
      best = std::move(c);
  }
  return best;
}

std::optional<Rat> girth(const WeightedGraph& g) {
  auto c = min_weight_cycle(g);
  if (!c) return std::nullopt;
  return c->weight;
}

CleanResult clean(const WeightedGraph& g) {
  CleanResult r;
  auto gw = girth(g);
  std::vector<bool> ke(g.edge_count(), false);
  std::vector<bool> kv(g.vertex_count(), false);
  if (gw) {
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      auto c = shortest_cycle_through_edge(g, e);
      if (c && c->weight == *gw) {
        ke[e] = true;
        kv[g.edge(e).a] = true;
        kv[g.edge(e).b] = true;
      }
    }
  }
  auto sub = g.induced(kv, ke);
  r.graph = std::move(sub.graph);
  r.orig_vertex = std::move(sub.orig_vertex);
  r.orig_edge = std::move(sub.orig_edge);
  return r;
}

std::vector<Cycle> all_shortest_cycles(const WeightedGraph& g) {
  auto gw = girth(g);
  if (!gw) throw std::invalid_argument("all_shortest_cycles: forest input");
  std::set<std::vector<EdgeId>> seen;
  std::vector<Cycle> out;
  auto emit = [&](Cycle c) {
    if (c.weight != *gw) return;
    if (seen.insert(c.sorted_edges()).second) out.push_back(std::move(c));
  };
  // Loops and parallel pairs (multigraphs).
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (g.edge(e).is_loop()) emit(make_cycle(g, {g.edge(e).a}, {e}));
  if (g.multi_allowed()) {
    for (EdgeId e1 = 0; e1 < g.edge_count(); ++e1) {
      const Edge& a = g.edge(e1);
      if (a.is_loop()) continue;
      for (EdgeId e2 = e1 + 1; e2 < g.edge_count(); ++e2) {
        const Edge& b = g.edge(e2);
        if (b.is_loop()) continue;
        if (std::minmax(a.a, a.b) != std::minmax(b.a, b.b)) continue;
        emit(make_cycle(g, {std::min(a.a, a.b), std::max(a.a, a.b)},
                        {e1, e2}));
      }
    }
  }
  // Simple cycles on >= 3 vertices; each enumerated from its minimum vertex,
  // one orientation only (second vertex below last).
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    std::vector<bool> mask(g.edge_count(), false);
    bool any = false;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edge(e);
      if (ed.a >= s && ed.b >= s && !ed.is_loop()) {
        mask[e] = true;
        any = true;
      }
    }
    if (!any) continue;
    ShortestPaths back = dijkstra(g, s, &mask);
    std::vector<bool> on_path(g.vertex_count(), false);
    on_path[s] = true;
    std::vector<Vertex> vs{s};
    std::vector<EdgeId> es;
    // Restrict DFS to the masked subgraph by reusing the distance prune:
    // vertices below s have no distance entry under the mask.
    struct Rec {
      const WeightedGraph& g;
      Vertex s;
      const Rat& target;
      const ShortestPaths& back;
      const std::vector<bool>& mask;
      std::vector<bool>& on_path;
      std::vector<Cycle>& found;
      void run(std::vector<Vertex>& vs, std::vector<EdgeId>& es, Rat w) {
        Vertex cur = vs.back();
        for (EdgeId e : g.incident(cur)) {
          if (!mask[e]) continue;
          Vertex nxt = g.edge(e).other(cur);
          Rat nw = w + g.edge(e).weight;
          if (nw > target) continue;
          if (nxt == s) {
            if (vs.size() >= 3 && nw == target && vs[1] < cur &&
                e != es.front()) {
              std::vector<Vertex> cvs = vs;
              std::vector<EdgeId> ces = es;
              ces.push_back(e);
              found.push_back(make_cycle(g, std::move(cvs), std::move(ces)));
            }
            continue;
          }
          if (on_path[nxt]) continue;
          if (!back.dist[nxt] || nw + *back.dist[nxt] > target) continue;
          on_path[nxt] = true;
          vs.push_back(nxt);
          es.push_back(e);
          run(vs, es, nw);
          vs.pop_back();
          es.pop_back();
          on_path[nxt] = false;
        }
      }
    };
    std::vector<Cycle> found;
    Rec rec{g, s, *gw, back, mask, on_path, found};
    rec.run(vs, es, Rat(0));
    for (Cycle& c : found) emit(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cyclepack
