#include "cyclepack/lsct.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cyclepack/shortest.hpp"

namespace cyclepack {

namespace {

// Split cycle c at vertices s and t into its two s-t arcs (each oriented
// from s to t).
std::pair<VertexPath, VertexPath> cycle_arcs(const WeightedGraph& g,
                                             const Cycle& c, Vertex s,
                                             Vertex t) {
  int n = c.size();
  int ps = -1, pt = -1;
  for (int i = 0; i < n; ++i) {
    if (c.vertices[i] == s) ps = i;
    if (c.vertices[i] == t) pt = i;
  }
  if (ps < 0 || pt < 0 || ps == pt)
    throw std::invalid_argument("cycle_arcs: s/t not distinct cycle vertices");
  auto walk = [&](int from, int to, int step) {
    VertexPath p;
    for (int i = from;; i = (i + step + n) % n) {
      p.vertices.push_back(c.vertices[i]);
      if (i == to) break;
      EdgeId e = step > 0 ? c.edge_ids[i] : c.edge_ids[(i - 1 + n) % n];
      p.edge_ids.push_back(e);
      p.weight += g.edge(e).weight;
    }
    return p;
  };
  return {walk(ps, pt, +1), walk(ps, pt, -1)};
}

Cycle cycle_from_paths(const WeightedGraph& g, const VertexPath& p,
                       const VertexPath& q) {
  if (p.front() != q.front() || p.back() != q.back())
    throw std::invalid_argument("cycle_from_paths: endpoint mismatch");
  std::vector<Vertex> vs = p.vertices;
  std::vector<EdgeId> es = p.edge_ids;
  VertexPath qr = q.reversed();
  vs.insert(vs.end(), qr.vertices.begin() + 1, qr.vertices.end() - 1);
  es.insert(es.end(), qr.edge_ids.begin(), qr.edge_ids.end());
  return make_cycle(g, std::move(vs), std::move(es));
}

}  // namespace

TouchResult touch_classify(const WeightedGraph& g, const Cycle& c1,
                           const Cycle& c2) {
  if (c1.weight != c2.weight)
    throw std::invalid_argument("touch_classify: cycles of different weight");
  std::set<Vertex> v1(c1.vertices.begin(), c1.vertices.end());
  std::vector<Vertex> common;
  for (Vertex v : c2.vertices)
    if (v1.count(v)) common.push_back(v);
  if (common.empty()) return DisjointCycles{};
  std::set<EdgeId> e1(c1.edge_ids.begin(), c1.edge_ids.end());
  std::vector<EdgeId> shared_edges;
  for (EdgeId e : c2.edge_ids)
    if (e1.count(e)) shared_edges.push_back(e);

  // Is the intersection a path? Degrees within the shared edge set.
  std::map<Vertex, std::vector<EdgeId>> deg;
  for (Vertex v : common) deg[v];
  for (EdgeId e : shared_edges) {
    deg[g.edge(e).a].push_back(e);
    deg[g.edge(e).b].push_back(e);
  }
  bool path_like = shared_edges.size() + 1 == common.size();
  int endpoints = 0;
  for (auto& [v, es] : deg) {
    if (es.size() > 2) path_like = false;
    if (es.size() <= 1) ++endpoints;
  }
  if (path_like && (common.size() == 1 || endpoints == 2)) {
    // walk the path from an endpoint
    Vertex start = common[0];
    for (auto& [v, es] : deg)
      if (es.size() <= 1) {
        start = v;
        break;
      }
    VertexPath sp;
    sp.vertices.push_back(start);
    Vertex cur = start;
    EdgeId prev = -1;
    while (true) {
      bool moved = false;
      for (EdgeId e : deg[cur]) {
        if (e == prev) continue;
        cur = g.edge(e).other(cur);
        sp.vertices.push_back(cur);
        sp.edge_ids.push_back(e);
        sp.weight += g.edge(e).weight;
        prev = e;
        moved = true;
        break;
      }
      if (!moved) break;
    }
    if (sp.vertices.size() == common.size())
      return Touching{std::move(sp)};
    path_like = false;
  }
  if (!shared_edges.empty() || common.size() != 2)
    throw std::invalid_argument(
        "touch_classify: intersection violates the shortest-cycle dichotomy");
  Vertex s = std::min(common[0], common[1]);
  Vertex t = std::max(common[0], common[1]);
  auto [p1, p2] = cycle_arcs(g, c1, s, t);
  auto [q1, q2] = cycle_arcs(g, c2, s, t);
  Rat half = c1.weight / Rat(2);
  if (p1.weight != half || p2.weight != half || q1.weight != half ||
      q2.weight != half)
    throw std::invalid_argument(
        "touch_classify: two-vertex intersection without g/2 arcs");
  return TwoPoleCrossing{s, t, p1, p2, q1, q2};
}

namespace {

// Edge mask of G_C's strict interior (inside edges only; C's own edges and
// everything outside are masked off).
std::vector<bool> interior_edge_mask(const PlaneEmbedding& emb,
                                     const CycleInterior& in) {
  return in.inside_edge;
}

std::optional<VertexPath> interior_shortest_path(const WeightedGraph& g,
                                                 const std::vector<bool>& mask,
                                                 Vertex s, Vertex t) {
  ShortestPaths sp = dijkstra(g, s, &mask);
  return sp.path_to(g, t);
}

}  // namespace

std::optional<std::pair<Vertex, Vertex>> find_poles(const PlaneEmbedding& emb,
                                                    const Cycle& c,
                                                    const Rat& g_weight) {
  const WeightedGraph& g = emb.host();
  Rat half = g_weight / Rat(2);
  int n = c.size();
  std::vector<Rat> prefix(n + 1);
  for (int i = 0; i < n; ++i)
    prefix[i + 1] = prefix[i] + g.edge(c.edge_ids[i]).weight;
  CycleInterior in = cycle_interior(emb, c);
  std::vector<bool> mask = interior_edge_mask(emb, in);

  std::optional<std::pair<Vertex, Vertex>> found;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (prefix[j] - prefix[i] != half) continue;
      Vertex s = c.vertices[i], t = c.vertices[j];
      auto p = interior_shortest_path(g, mask, s, t);
      if (!p || p->weight != half) continue;
      std::pair<Vertex, Vertex> pair{std::min(s, t), std::max(s, t)};
      if (found && *found != pair)
        throw std::logic_error("find_poles: pole pair is not unique");
      found = pair;
    }
  return found;
}

std::vector<VertexPath> s_node_paths(const PlaneEmbedding& emb, const Cycle& c,
                                     Vertex s, Vertex t, const Rat& g_weight) {
  const WeightedGraph& g = emb.host();
  Rat half = g_weight / Rat(2);
  CycleInterior in = cycle_interior(emb, c);
  std::vector<bool> mask = interior_edge_mask(emb, in);
  auto [arc_a, arc_b] = cycle_arcs(g, c, s, t);
  if (arc_a.weight != half || arc_b.weight != half)
    throw std::invalid_argument("s_node_paths: poles not at distance g/2");

  std::vector<VertexPath> interior;
  std::vector<bool> cur = mask;
  while (true) {
    auto p = interior_shortest_path(g, cur, s, t);
    if (!p || p->weight != half) break;
    for (size_t i = 1; i + 1 < p->vertices.size(); ++i) {
      Vertex v = p->vertices[i];
      for (EdgeId e : g.incident(v)) cur[e] = false;
    }
    // direct s-t chords leave no internal vertex to delete
    if (p->vertices.size() == 2) cur[p->edge_ids[0]] = false;
    interior.push_back(std::move(*p));
  }

  // order all paths clockwise from s using the rotation at s
  std::vector<VertexPath> family;
  family.push_back(arc_a);
  for (auto& p : interior) family.push_back(p);
  family.push_back(arc_b);
  std::map<Dart, int> dart_to_path;
  for (int i = 0; i < (int)family.size(); ++i) {
    EdgeId e = family[i].edge_ids.front();
    Dart d = g.edge(e).a == s ? 2 * e : 2 * e + 1;
    dart_to_path[d] = i;
  }
  std::vector<int> order;
  const std::vector<Dart>& rot = emb.rotation()[s];
  std::vector<Dart> fam_darts;
  for (Dart d : rot)
    if (dart_to_path.count(d)) fam_darts.push_back(d);
  if (fam_darts.size() != family.size())
    throw std::logic_error("s_node_paths: rotation misses family darts");
  // rotate so one arc dart is first and the other last
  auto darts_of = [&](const VertexPath& p) {
    EdgeId e = p.edge_ids.front();
    return g.edge(e).a == s ? 2 * e : 2 * e + 1;
  };
  Dart da = darts_of(arc_a), db = darts_of(arc_b);
  auto try_rotate = [&](Dart first, Dart last) -> bool {
    int pos = -1;
    for (int i = 0; i < (int)fam_darts.size(); ++i)
      if (fam_darts[i] == first) pos = i;
    std::vector<Dart> rotated;
    for (size_t i = 0; i < fam_darts.size(); ++i)
      rotated.push_back(fam_darts[(pos + i) % fam_darts.size()]);
    if (rotated.back() != last) return false;
    order.clear();
    for (Dart d : rotated) order.push_back(dart_to_path.at(d));
    return true;
  };
  if (!try_rotate(da, db) && !try_rotate(db, da))
    throw std::logic_error("s_node_paths: arcs do not bracket the family");
  std::vector<VertexPath> sorted;
  for (int i : order) sorted.push_back(family[i]);
  return sorted;
}

namespace {

Cycle lift_cycle(const Cycle& c, const Subgraph& sub,
                 const WeightedGraph& host) {
  std::vector<Vertex> vs;
  std::vector<EdgeId> es;
  for (Vertex v : c.vertices) vs.push_back(sub.orig_vertex[v]);
  for (EdgeId e : c.edge_ids) es.push_back(sub.orig_edge[e]);
  return make_cycle(host, std::move(vs), std::move(es));
}

// All shortest cycles of G_C (the closed interior subgraph), in host ids.
std::vector<Cycle> interior_shortest_cycles(const PlaneEmbedding& emb,
                                            const Cycle& c,
                                            const Rat& g_weight) {
  const WeightedGraph& g = emb.host();
  CycleInterior in = cycle_interior(emb, c);
  std::vector<bool> kv(g.vertex_count(), false), ke(g.edge_count(), false);
  for (Vertex v : c.vertices) kv[v] = true;
  for (EdgeId e : c.edge_ids) ke[e] = true;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (in.inside_vertex[v]) kv[v] = true;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (in.inside_edge[e]) ke[e] = true;
  Subgraph sub = g.induced(kv, ke);
  auto cycles = all_shortest_cycles(sub.graph);
  if (cycles.empty() || cycles[0].weight != g_weight)
    throw std::logic_error("interior_shortest_cycles: girth drifted");
  std::vector<Cycle> out;
  for (const Cycle& sc : cycles) out.push_back(lift_cycle(sc, sub, g));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Cycle> u_node_children(const PlaneEmbedding& emb, const Cycle& c,
                                   const Rat& g_weight) {
  auto all = interior_shortest_cycles(emb, c, g_weight);
  std::vector<Cycle> inner;
  for (const Cycle& s : all)
    if (!(s == c)) inner.push_back(s);
  if (inner.empty())
    throw std::invalid_argument("u_node_children: facial cycle");
  std::vector<Cycle> maximal;
  for (const Cycle& s : inner) {
    bool dominated = false;
    for (const Cycle& r : inner) {
      if (s == r) continue;
      if (order_le(cycle_order(emb, s, r))) {
        dominated = true;
        break;
      }
    }
    if (!dominated) maximal.push_back(s);
  }
  // laminarity of the family (would contradict the splittability dichotomy)
  for (size_t i = 0; i < maximal.size(); ++i)
    for (size_t j = i + 1; j < maximal.size(); ++j)
      if (cycle_order(emb, maximal[i], maximal[j]) == CycleOrder::Crossing)
        throw std::logic_error("u_node_children: crossing maximal cycles");
  return maximal;
}

std::vector<int> LsctTree::leaves() const {
  std::vector<int> out;
  for (const LsctNode& n : nodes)
    if (n.kind == LsctKind::Leaf) out.push_back(n.id);
  return out;
}

bool LsctTree::is_descendant(int a, int b) const {
  while (a != -1) {
    if (a == b) return true;
    a = nodes[a].parent;
  }
  return false;
}

std::optional<int> LsctTree::find_cycle(const Cycle& c) const {
  for (const LsctNode& n : nodes)
    if (n.cycle == c) return n.id;
  return std::nullopt;
}

std::string LsctTree::to_dot() const {
  std::ostringstream os;
  os << "digraph lsct {\n";
  for (const LsctNode& n : nodes) {
    const char* kind = n.kind == LsctKind::Leaf    ? "leaf"
                       : n.kind == LsctKind::SNode ? "S"
                                                   : "U";
    os << "  n" << n.id << " [label=\"" << kind << ": " << n.cycle.str()
       << "\"];\n";
    for (int ch : n.children) os << "  n" << n.id << " -> n" << ch << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string LsctTree::to_json_lines() const {
  std::ostringstream os;
  for (const LsctNode& n : nodes) {
    os << "{\"id\":" << n.id << ",\"kind\":\""
       << (n.kind == LsctKind::Leaf    ? "leaf"
           : n.kind == LsctKind::SNode ? "s-node"
                                       : "u-node")
       << "\",\"cycle\":\"" << n.cycle.str() << "\"";
    if (n.kind == LsctKind::SNode)
      os << ",\"poles\":[" << n.pole_s << "," << n.pole_t << "]";
    os << ",\"children\":[";
    for (size_t i = 0; i < n.children.size(); ++i)
      os << (i ? "," : "") << n.children[i];
    os << "]}\n";
  }
  return os.str();
}

LsctBuild build_lsct(const WeightedGraph& g_clean) {
  auto gw = girth(g_clean);
  if (!gw) throw std::invalid_argument("build_lsct: forest input");
  if (!g_clean.connected())
    throw std::invalid_argument("build_lsct: connected graphs only");
  for (EdgeId e = 0; e < g_clean.edge_count(); ++e) {
    auto sc = shortest_cycle_through_edge(g_clean, e);
    if (!sc || sc->weight != *gw)
      throw std::invalid_argument("build_lsct: unclean input");
  }

  PlaneEmbedding emb0 = embed(g_clean);
  // a face whose frontier is a shortest cycle (internal faces first)
  std::optional<Cycle> root_cycle;
  for (FaceId f = 0; f < emb0.face_count() && !root_cycle; ++f) {
    if (f == emb0.outer_face()) continue;
    auto c = emb0.face_cycle(f);
    if (c && c->weight == *gw) root_cycle = c;
  }
  if (!root_cycle) {
    auto c = emb0.face_cycle(emb0.outer_face());
    if (c && c->weight == *gw) root_cycle = c;
  }
  if (!root_cycle)
    throw std::logic_error("build_lsct: no shortest facial cycle (unclean?)");

  LsctBuild out{emb0.reroot_outer(*root_cycle), {}, *gw};
  LsctTree& tree = out.tree;
  const PlaneEmbedding& emb = out.embedding;

  std::set<std::vector<EdgeId>> seen;
  std::vector<int> todo;
  auto add_node = [&](Cycle c, int parent) {
    if (!seen.insert(c.sorted_edges()).second)
      throw std::logic_error("build_lsct: duplicate node cycle");
    LsctNode n;
    n.id = (int)tree.nodes.size();
    n.cycle = std::move(c);
    n.parent = parent;
    if (parent >= 0) tree.nodes[parent].children.push_back(n.id);
    tree.nodes.push_back(std::move(n));
    todo.push_back(tree.nodes.back().id);
    return tree.nodes.back().id;
  };
  add_node(*root_cycle, -1);

  while (!todo.empty()) {
    int id = todo.back();
    todo.pop_back();
    Cycle c = tree.nodes[id].cycle;
    CycleInterior in = cycle_interior(emb, c);
    bool empty = true;
    for (bool b : in.inside_vertex) empty &= !b;
    for (bool b : in.inside_edge) empty &= !b;
    if (empty) {
      tree.nodes[id].kind = LsctKind::Leaf;
      continue;
    }
    auto poles = find_poles(emb, c, *gw);
    if (poles) {
      auto [s, t] = *poles;
      auto family = s_node_paths(emb, c, s, t, *gw);
      tree.nodes[id].kind = LsctKind::SNode;
      tree.nodes[id].pole_s = s;
      tree.nodes[id].pole_t = t;
      tree.nodes[id].path_family = family;
      for (size_t i = 0; i + 1 < family.size(); ++i)
        add_node(cycle_from_paths(g_clean, family[i], family[i + 1]), id);
    } else {
      tree.nodes[id].kind = LsctKind::UNode;
      for (Cycle& ch : u_node_children(emb, c, *gw))
        add_node(std::move(ch), id);
    }
  }
  return out;
}

CyclePacking postprocess_tmax(const PlaneEmbedding& emb,
                              const std::vector<Cycle>& shortest_facials,
                              CyclePacking packing) {
  std::set<std::vector<EdgeId>> facial;
  for (const Cycle& c : shortest_facials) facial.insert(c.sorted_edges());
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < packing.cycles.size(); ++i) {
      const Cycle& c = packing.cycles[i];
      if (facial.count(c.sorted_edges())) continue;
      bool has_below = false;
      for (size_t j = 0; j < packing.cycles.size() && !has_below; ++j)
        if (j != i && order_le(cycle_order(emb, packing.cycles[j], c)))
          has_below = true;
      if (has_below) continue;
      // replace by a shortest facial cycle inside the closed interior of c
      std::optional<Cycle> repl;
      for (const Cycle& f : shortest_facials) {
        if (f == c) continue;
        if (order_le(cycle_order(emb, f, c))) {
          repl = f;
          break;
        }
      }
      if (!repl)
        throw std::logic_error(
            "postprocess_tmax: no facial shortest cycle inside a member");
      packing.cycles[i] = *repl;
      changed = true;
    }
  }
  return make_packing(std::move(packing.cycles), packing.mode);
}

}  // namespace cyclepack
