#include "cyclepack/graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cyclepack {

EdgeId WeightedGraph::add_edge(Vertex u, Vertex v, Rat w) {
  if (u < 0 || u >= n_ || v < 0 || v >= n_)
    throw std::out_of_range("add_edge: vertex id out of range");
  if (!w.positive()) throw std::invalid_argument("add_edge: weight must be > 0");
  if (!multi_) {
    if (u == v) throw std::invalid_argument("add_edge: loop in simple graph");
    if (find_edge(u, v))
      throw std::invalid_argument("add_edge: parallel edge in simple graph");
  }
  EdgeId id = (EdgeId)edges_.size();
  edges_.push_back({u, v, w});
  adj_[u].push_back(id);
  if (u != v) adj_[v].push_back(id);
  return id;
}

int WeightedGraph::degree(Vertex v) const {
  int d = 0;
  for (EdgeId e : adj_.at(v)) d += edges_[e].is_loop() ? 2 : 1;
  return d;
}

std::optional<EdgeId> WeightedGraph::find_edge(Vertex u, Vertex v) const {
  for (EdgeId e : adj_.at(u)) {
    const Edge& ed = edges_[e];
    if ((ed.a == u && ed.b == v) || (ed.a == v && ed.b == u)) return e;
  }
  return std::nullopt;
}

std::vector<std::vector<Vertex>> WeightedGraph::components() const {
  std::vector<int> comp(n_, -1);
  std::vector<std::vector<Vertex>> out;
  for (Vertex s = 0; s < n_; ++s) {
    if (comp[s] >= 0) continue;
    int id = (int)out.size();
    out.emplace_back();
    std::vector<Vertex> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      out[id].push_back(v);
      for (EdgeId e : adj_[v]) {
        Vertex w = edges_[e].other(v);
        if (comp[w] < 0) {
          comp[w] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

bool WeightedGraph::connected() const {
  return n_ <= 1 || components().size() == 1;
}

bool WeightedGraph::is_forest() const {
  // A multigraph with a loop or parallel pair always has a cycle.
  if (multi_) {
    std::set<std::pair<Vertex, Vertex>> seen;
    for (const Edge& e : edges_) {
      if (e.is_loop()) return false;
      auto key = std::minmax(e.a, e.b);
      if (!seen.insert({key.first, key.second}).second) return false;
    }
  }
  return edge_count() == n_ - (int)components().size();
}

Subgraph WeightedGraph::induced(
    const std::vector<bool>& keep_vertex,
    const std::vector<bool>& keep_edge) const {
  Subgraph s;
  s.new_vertex.assign(n_, -1);
  for (Vertex v = 0; v < n_; ++v) {
    if (keep_vertex[v]) {
      s.new_vertex[v] = (Vertex)s.orig_vertex.size();
      s.orig_vertex.push_back(v);
    }
  }
  s.graph = WeightedGraph((int)s.orig_vertex.size(), multi_);
  for (EdgeId e = 0; e < edge_count(); ++e) {
    const Edge& ed = edges_[e];
    if (!keep_edge[e]) continue;
    if (!keep_vertex[ed.a] || !keep_vertex[ed.b])
      throw std::logic_error("induced: kept edge with dropped endpoint");
    s.graph.add_edge(s.new_vertex[ed.a], s.new_vertex[ed.b], ed.weight);
    s.orig_edge.push_back(e);
  }
  return s;
}

Subgraph WeightedGraph::induced_on(
    const std::vector<Vertex>& vertices) const {
  std::vector<bool> kv(n_, false);
  for (Vertex v : vertices) kv[v] = true;
  std::vector<bool> ke(edge_count(), false);
  for (EdgeId e = 0; e < edge_count(); ++e)
    ke[e] = kv[edges_[e].a] && kv[edges_[e].b];
  return induced(kv, ke);
}

VertexPath VertexPath::reversed() const {
  VertexPath r;
  r.vertices.assign(vertices.rbegin(), vertices.rend());
  r.edge_ids.assign(edge_ids.rbegin(), edge_ids.rend());
  r.weight = weight;
  return r;
}

VertexPath make_path(const WeightedGraph& g, std::vector<Vertex> vs) {
  if (vs.empty()) throw std::invalid_argument("make_path: empty");
  VertexPath p;
  p.vertices = std::move(vs);
  for (size_t i = 0; i + 1 < p.vertices.size(); ++i) {
    auto e = g.find_edge(p.vertices[i], p.vertices[i + 1]);
    if (!e) throw std::invalid_argument("make_path: nonadjacent vertices");
    p.edge_ids.push_back(*e);
    p.weight += g.edge(*e).weight;
  }
  return p;
}

std::vector<EdgeId> Cycle::sorted_edges() const {
  std::vector<EdgeId> s = edge_ids;
  std::sort(s.begin(), s.end());
  return s;
}

bool Cycle::contains_vertex(Vertex v) const {
  return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
}

bool Cycle::contains_edge(EdgeId e) const {
  return std::find(edge_ids.begin(), edge_ids.end(), e) != edge_ids.end();
}

bool operator<(const Cycle& x, const Cycle& y) {
  if (x.vertices.size() != y.vertices.size())
    return x.vertices.size() < y.vertices.size();
  if (x.vertices != y.vertices) return x.vertices < y.vertices;
  return x.edge_ids < y.edge_ids;
}

std::string Cycle::str() const {
  std::ostringstream os;
  for (size_t i = 0; i < vertices.size(); ++i)
    os << (i ? " " : "") << vertices[i];
  return os.str();
}

namespace {

// Canonical rotation: minimum vertex first, oriented toward the smaller
// second vertex (edge ids break ties for two-vertex cycles).
void canonicalize(Cycle& c) {
  int t = (int)c.vertices.size();
  if (t == 1) return;
  if (t == 2) {
    if (c.vertices[0] > c.vertices[1]) {
      std::swap(c.vertices[0], c.vertices[1]);
      std::swap(c.edge_ids[0], c.edge_ids[1]);
    }
    if (c.edge_ids[0] > c.edge_ids[1]) std::swap(c.edge_ids[0], c.edge_ids[1]);
    return;
  }
  int p = 0;
  for (int i = 1; i < t; ++i)
    if (c.vertices[i] < c.vertices[p]) p = i;
  auto at = [&](int i) { return c.vertices[((i % t) + t) % t]; };
  auto edge_at = [&](int i) { return c.edge_ids[((i % t) + t) % t]; };
  bool forward = at(p + 1) < at(p - 1);
  Cycle out;
  out.weight = c.weight;
  out.vertices.reserve(t);
  out.edge_ids.reserve(t);
  for (int i = 0; i < t; ++i) {
    if (forward) {
      out.vertices.push_back(at(p + i));
      out.edge_ids.push_back(edge_at(p + i));
    } else {
      out.vertices.push_back(at(p - i));
      out.edge_ids.push_back(edge_at(p - i - 1));
    }
  }
  c = std::move(out);
}

}  // namespace

Cycle make_cycle(const WeightedGraph& g, std::vector<Vertex> vs,
                 std::vector<EdgeId> es) {
  if (vs.empty() || vs.size() != es.size())
    throw std::invalid_argument("make_cycle: vertex/edge size mismatch");
  Cycle c;
  c.vertices = std::move(vs);
  c.edge_ids = std::move(es);
  for (size_t i = 0; i < c.vertices.size(); ++i) {
    const Edge& e = g.edge(c.edge_ids[i]);
    Vertex u = c.vertices[i];
    Vertex v = c.vertices[(i + 1) % c.vertices.size()];
    bool ok = (e.a == u && e.b == v) || (e.a == v && e.b == u);
    if (!ok) throw std::invalid_argument("make_cycle: edge does not match");
    c.weight += e.weight;
  }
  std::set<Vertex> distinct(c.vertices.begin(), c.vertices.end());
  if (distinct.size() != c.vertices.size())
    throw std::invalid_argument("make_cycle: repeated vertex");
  canonicalize(c);
  return c;
}

Cycle make_cycle(const WeightedGraph& g, std::vector<Vertex> vs) {
  std::vector<EdgeId> es;
  for (size_t i = 0; i < vs.size(); ++i) {
    auto e = g.find_edge(vs[i], vs[(i + 1) % vs.size()]);
    if (!e) throw std::invalid_argument("make_cycle: nonadjacent vertices");
    es.push_back(*e);
  }
  return make_cycle(g, std::move(vs), std::move(es));
}

CyclePacking make_packing(std::vector<Cycle> cycles, DisjointMode mode) {
  CyclePacking p;
  p.mode = mode;
  std::sort(cycles.begin(), cycles.end());
  p.cycles = std::move(cycles);
  for (const Cycle& c : p.cycles) p.total_weight += c.weight;
  return p;
}

bool packing_valid(const WeightedGraph& g, const CyclePacking& p,
                   std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  Rat total;
  std::set<Vertex> used_v;
  std::set<EdgeId> used_e;
  for (const Cycle& c : p.cycles) {
    if (c.vertices.empty()) return fail("empty cycle");
    Rat w;
    for (size_t i = 0; i < c.vertices.size(); ++i) {
      if (c.edge_ids[i] < 0 || c.edge_ids[i] >= g.edge_count())
        return fail("unknown edge id");
      const Edge& e = g.edge(c.edge_ids[i]);
      Vertex u = c.vertices[i];
      Vertex v = c.vertices[(i + 1) % c.vertices.size()];
      bool ok = (e.a == u && e.b == v) || (e.a == v && e.b == u);
      if (!ok) return fail("cycle edge does not join its vertices");
      w += e.weight;
    }
    if (c.vertices.size() == 1 && !g.edge(c.edge_ids[0]).is_loop())
      return fail("single-vertex cycle without loop");
    if (c.vertices.size() >= 3) {
      std::set<EdgeId> es(c.edge_ids.begin(), c.edge_ids.end());
      if (es.size() != c.edge_ids.size()) return fail("repeated edge in cycle");
    }
    if (w != c.weight) return fail("cycle weight mismatch");
    total += w;
    for (Vertex v : c.vertices) {
      if (!used_v.insert(v).second && p.mode == DisjointMode::Vertex)
        return fail("shared vertex");
    }
    for (EdgeId e : c.edge_ids) {
      if (!used_e.insert(e).second) return fail("shared edge");
    }
  }
  if (total != p.total_weight) return fail("total weight mismatch");
  return true;
}

}  // namespace cyclepack
