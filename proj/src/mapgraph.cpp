#include "cyclepack/mapgraph.hpp"

#include <algorithm>
#include <set>

namespace cyclepack {

namespace {

struct IsSearch {
  const std::vector<std::vector<int>>& adj;
  int k;
  std::vector<int> chosen;
  std::vector<int> state;  // 0 free, 1 chosen, 2 excluded
  std::optional<std::vector<int>> found;

  void run() {
    if (k <= 0) {
      found = std::vector<int>{};
      return;
    }
    state.assign(adj.size(), 0);
    rec((int)adj.size());
  }

  void rec(int free_cnt) {
    if (found) return;
    if ((int)chosen.size() == k) {
      found = chosen;
      return;
    }
    if ((int)chosen.size() + free_cnt < k) return;
    // take a free vertex of maximum free-degree to branch on
    int pick = -1, pick_deg = -1;
    for (int v = 0; v < (int)adj.size(); ++v) {
      if (state[v] != 0) continue;
      int d = 0;
      for (int w : adj[v]) d += state[w] == 0;
      if (d > pick_deg) {
        pick_deg = d;
        pick = v;
      }
    }
    if (pick < 0) return;
    // branch 1: include pick
    std::vector<int> flipped;
    state[pick] = 1;
    for (int w : adj[pick])
      if (state[w] == 0) {
        state[w] = 2;
        flipped.push_back(w);
      }
    chosen.push_back(pick);
    rec(free_cnt - 1 - (int)flipped.size());
    chosen.pop_back();
    for (int w : flipped) state[w] = 0;
    // branch 2: exclude pick (only useful when it has free neighbors)
    if (!found && pick_deg > 0) {
      state[pick] = 2;
      rec(free_cnt - 1);
    }
    state[pick] = 0;
  }
};

}  // namespace

std::optional<std::vector<int>> exact_independent_set(
    const std::vector<std::vector<int>>& adj, int k) {
  IsSearch s{adj, k};
  s.run();
  if (s.found) std::sort(s.found->begin(), s.found->end());
  return s.found;
}

MapGraph make_map_graph(const PlaneEmbedding& emb, std::vector<FaceId> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return MapGraph{&emb, std::move(nodes)};
}

std::vector<std::vector<int>> MapGraph::adjacency() const {
  std::vector<std::set<Vertex>> fv;
  for (FaceId f : nodes) {
    auto vs = emb->face_vertices(f);
    fv.emplace_back(vs.begin(), vs.end());
  }
  int n = (int)nodes.size();
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool share = false;
      for (Vertex v : fv[i])
        if (fv[j].count(v)) {
          share = true;
          break;
        }
      if (share) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
    }
  return adj;
}

std::optional<std::vector<FaceId>> map_independent_set(const MapGraph& m,
                                                       int k) {
  if (k > (int)m.nodes.size()) return std::nullopt;
  auto got = exact_independent_set(m.adjacency(), k);
  if (!got) return std::nullopt;
  std::vector<FaceId> out;
  for (int i : *got) out.push_back(m.nodes[i]);
  return out;
}

std::optional<std::vector<Vertex>> planar_quarter_is(const WeightedGraph& g,
                                                     int k) {
  std::vector<std::vector<int>> adj(g.vertex_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (ed.is_loop()) continue;
    adj[ed.a].push_back(ed.b);
    adj[ed.b].push_back(ed.a);
  }
  for (auto& v : adj) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  auto got = exact_independent_set(adj, k);
  if (!got) return std::nullopt;
  return std::vector<Vertex>(got->begin(), got->end());
}

}  // namespace cyclepack
