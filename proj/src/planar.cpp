#include "cyclepack/planar.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/property_map/property_map.hpp>

namespace cyclepack {

namespace {

Vertex dart_tail(const WeightedGraph& g, Dart d) {
  const Edge& e = g.edge(dart_edge(d));
  return (d & 1) ? e.b : e.a;
}

Vertex dart_head(const WeightedGraph& g, Dart d) {
  const Edge& e = g.edge(dart_edge(d));
  return (d & 1) ? e.a : e.b;
}

}  // namespace

std::vector<Vertex> PlaneEmbedding::face_vertices(FaceId f) const {
  std::set<Vertex> s;
  for (Dart d : face_darts_.at(f)) s.insert(dart_tail(*host_, d));
  return {s.begin(), s.end()};
}

std::vector<EdgeId> PlaneEmbedding::face_edges(FaceId f) const {
  std::vector<EdgeId> out;
  for (Dart d : face_darts_.at(f)) out.push_back(dart_edge(d));
  return out;
}

Rat PlaneEmbedding::face_frontier_weight(FaceId f) const {
  Rat w;
  for (Dart d : face_darts_.at(f)) w += host_->edge(dart_edge(d)).weight;
  return w;
}

std::optional<Cycle> PlaneEmbedding::face_cycle(FaceId f) const {
  const std::vector<Dart>& ds = face_darts_.at(f);
  if (ds.size() < 3) return std::nullopt;
  std::vector<Vertex> vs;
  std::vector<EdgeId> es;
  std::set<Vertex> seen;
  for (Dart d : ds) {
    Vertex v = dart_tail(*host_, d);
    if (!seen.insert(v).second) return std::nullopt;
    vs.push_back(v);
    es.push_back(dart_edge(d));
  }
  return make_cycle(*host_, std::move(vs), std::move(es));
}

std::pair<FaceId, FaceId> PlaneEmbedding::edge_faces(EdgeId e) const {
  return {dart_face_.at(2 * e), dart_face_.at(2 * e + 1)};
}

void PlaneEmbedding::build_faces() {
  const WeightedGraph& g = *host_;
  int dart_count = 2 * g.edge_count();
  // position of each outgoing dart within its tail's rotation
  std::vector<int> pos(dart_count, -1);
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    for (int i = 0; i < (int)rotation_[v].size(); ++i)
      pos[rotation_[v][i]] = i;

  dart_face_.assign(dart_count, -1);
  face_darts_.clear();
  std::vector<std::vector<FaceId>> comp_faces;  // per component, face ids
  std::vector<int> vertex_comp(g.vertex_count(), -1);
  {
    auto comps = g.components();
    for (int c = 0; c < (int)comps.size(); ++c)
      for (Vertex v : comps[c]) vertex_comp[v] = c;
    comp_faces.resize(comps.size());
  }

  for (Dart d0 = 0; d0 < dart_count; ++d0) {
    if (dart_face_[d0] != -1) continue;
    FaceId f = (FaceId)face_darts_.size();
    face_darts_.emplace_back();
    Dart d = d0;
    do {
      dart_face_[d] = f;
      face_darts_[f].push_back(d);
      Vertex h = dart_head(g, d);
      const std::vector<Dart>& rot = rotation_[h];
      int p = pos[twin(d)];
      if (p < 0) throw std::logic_error("embedding: dart missing in rotation");
      d = rot[(p + 1) % rot.size()];
    } while (d != d0);
    comp_faces[vertex_comp[dart_tail(g, d0)]].push_back(f);
  }

  // Components without edges contribute no orbits; every component with
  // edges designates its largest-frontier orbit as its outer boundary, and
  // all of those fuse into the single shared outer face.
  std::vector<FaceId> outers;
  for (const auto& faces : comp_faces) {
    if (faces.empty()) continue;
    FaceId best = faces[0];
    for (FaceId f : faces)
      if (face_darts_[f].size() > face_darts_[best].size()) best = f;
    outers.push_back(best);
  }
  if (face_darts_.empty()) {
    face_darts_.emplace_back();  // the empty plane still has one face
    outer_ = 0;
  } else if (outers.size() > 1) {
    std::sort(outers.begin(), outers.end());
    FaceId keep = outers[0];
    for (size_t i = 1; i < outers.size(); ++i) {
      for (Dart d : face_darts_[outers[i]]) {
        dart_face_[d] = keep;
        face_darts_[keep].push_back(d);
      }
      face_darts_[outers[i]].clear();
    }
    // compact face ids
    std::vector<std::vector<Dart>> packed;
    std::vector<FaceId> remap(face_darts_.size(), -1);
    for (FaceId f = 0; f < (int)face_darts_.size(); ++f) {
      if (face_darts_[f].empty() && f != keep) continue;
      remap[f] = (FaceId)packed.size();
      packed.push_back(std::move(face_darts_[f]));
    }
    for (Dart d = 0; d < dart_count; ++d) dart_face_[d] = remap[dart_face_[d]];
    face_darts_ = std::move(packed);
    outer_ = remap[keep];
  } else {
    outer_ = outers.empty() ? 0 : outers[0];
  }

  // Euler check: n - m + f = 1 + #components.
  int n = g.vertex_count();
  int m = g.edge_count();
  int c = (int)g.components().size();
  if (n - m + (int)face_darts_.size() != 1 + c)
    throw std::logic_error("embedding: Euler check failed");
}

PlaneEmbedding PlaneEmbedding::from_rotation(
    const WeightedGraph& g, std::vector<std::vector<Dart>> rotation,
    std::optional<FaceId> outer) {
  PlaneEmbedding emb;
  emb.host_ = &g;
  emb.rotation_ = std::move(rotation);
  emb.build_faces();
  if (outer) {
    if (*outer < 0 || *outer >= emb.face_count())
      throw std::out_of_range("from_rotation: bad outer face");
    emb.outer_ = *outer;
  } else if (emb.face_count() > 1) {
    // default: a maximum-frontier face (deterministic)
    FaceId best = 0;
    for (FaceId f = 1; f < emb.face_count(); ++f)
      if (emb.face_darts_[f].size() > emb.face_darts_[best].size() ||
          (emb.face_darts_[f].size() == emb.face_darts_[best].size() &&
           f < best))
        best = f;
    // keep the fused outer when the graph is disconnected
    bool disconnected = (int)g.components().size() > 1;
    if (!disconnected) emb.outer_ = best;
  }
  return emb;
}

PlaneEmbedding PlaneEmbedding::reroot_outer(const Cycle& c) const {
  std::vector<EdgeId> want = c.sorted_edges();
  std::optional<FaceId> found;
  for (FaceId f = 0; f < face_count(); ++f) {
    std::vector<EdgeId> fe = face_edges(f);
    std::sort(fe.begin(), fe.end());
    if (fe == want) {
      found = f;
      break;
    }
  }
  if (!found)
    throw std::invalid_argument("reroot_outer: cycle is not facial");
  PlaneEmbedding out = *this;
  out.outer_ = *found;
  return out;
}

PlaneEmbedding PlaneEmbedding::restricted(const std::vector<bool>& keep_vertex,
                                          const std::vector<bool>& keep_edge,
                                          Dart outer_hint) const {
  const WeightedGraph& g = *host_;
  if (!keep_edge[dart_edge(outer_hint)])
    throw std::invalid_argument("restricted: outer hint edge dropped");
  PlaneEmbedding out;
  out.host_ = host_;
  // The restriction owns a reduced host view: same ids, fewer darts. We keep
  // the host pointer and simply drop darts from the rotation; faces rebuild
  // over the surviving darts only.
  out.rotation_.assign(g.vertex_count(), {});
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!keep_vertex[v]) continue;
    for (Dart d : rotation_[v])
      if (keep_edge[dart_edge(d)]) out.rotation_[v].push_back(d);
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (keep_edge[e] && (!keep_vertex[g.edge(e).a] || !keep_vertex[g.edge(e).b]))
      throw std::invalid_argument("restricted: kept edge loses endpoint");

  // rebuild faces over surviving darts
  int dart_count = 2 * g.edge_count();
  std::vector<int> pos(dart_count, -1);
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    for (int i = 0; i < (int)out.rotation_[v].size(); ++i)
      pos[out.rotation_[v][i]] = i;
  out.dart_face_.assign(dart_count, -1);
  for (Dart d0 = 0; d0 < dart_count; ++d0) {
    if (!keep_edge[dart_edge(d0)] || out.dart_face_[d0] != -1) continue;
    FaceId f = (FaceId)out.face_darts_.size();
    out.face_darts_.emplace_back();
    Dart d = d0;
    do {
      out.dart_face_[d] = f;
      out.face_darts_[f].push_back(d);
      Vertex h = dart_head(g, d);
      const std::vector<Dart>& rot = out.rotation_[h];
      int p = pos[twin(d)];
      d = rot[(p + 1) % rot.size()];
    } while (d != d0);
  }
  if (out.face_darts_.empty()) out.face_darts_.emplace_back();
  out.outer_ = out.dart_face_[outer_hint];
  if (out.outer_ < 0) throw std::logic_error("restricted: hint not traced");
  return out;
}

std::string PlaneEmbedding::to_text() const {
  std::ostringstream os;
  for (Vertex v = 0; v < host_->vertex_count(); ++v) {
    os << "r " << v << ":";
    for (Dart d : rotation_[v]) os << " " << dart_head(*host_, d);
    os << "\n";
  }
  os << "outer " << outer_ << "\n";
  return os.str();
}

bool is_planar(const WeightedGraph& g) {
  using BoostGraph = boost::adjacency_list<
      boost::vecS, boost::vecS, boost::undirectedS, boost::no_property,
      boost::property<boost::edge_index_t, int>>;
  BoostGraph bg(g.vertex_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    boost::add_edge(g.edge(e).a, g.edge(e).b,
                    boost::property<boost::edge_index_t, int>(e), bg);
  return boost::boyer_myrvold_planarity_test(bg);
}

PlaneEmbedding embed(const WeightedGraph& g) {
  if (g.multi_allowed())
    throw std::invalid_argument("embed: simple graphs only");
  using BoostGraph = boost::adjacency_list<
      boost::vecS, boost::vecS, boost::undirectedS, boost::no_property,
      boost::property<boost::edge_index_t, int>>;
  using BoostEdge = boost::graph_traits<BoostGraph>::edge_descriptor;
  BoostGraph bg(g.vertex_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    boost::add_edge(g.edge(e).a, g.edge(e).b,
                    boost::property<boost::edge_index_t, int>(e), bg);
  std::vector<std::vector<BoostEdge>> storage(boost::num_vertices(bg));
  auto emb_map = boost::make_iterator_property_map(
      storage.begin(), boost::get(boost::vertex_index, bg));
  if (!boost::boyer_myrvold_planarity_test(
          boost::boyer_myrvold_params::graph = bg,
          boost::boyer_myrvold_params::embedding = emb_map))
    throw NonPlanarError();
  auto eidx = boost::get(boost::edge_index, bg);
  std::vector<std::vector<Dart>> rotation(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    for (const BoostEdge& be : storage[v]) {
      EdgeId e = eidx[be];
      Dart d = (g.edge(e).a == v) ? 2 * e : 2 * e + 1;
      rotation[v].push_back(d);
    }
  }
  return PlaneEmbedding::from_rotation(g, std::move(rotation));
}

CycleInterior cycle_interior(const PlaneEmbedding& emb, const Cycle& c) {
  const WeightedGraph& g = emb.host();
  std::set<EdgeId> cut(c.edge_ids.begin(), c.edge_ids.end());
  CycleInterior r;
  int fc = emb.face_count();
  std::vector<bool> outside(fc, false);
  std::vector<FaceId> stack{emb.outer_face()};
  outside[emb.outer_face()] = true;
  while (!stack.empty()) {
    FaceId f = stack.back();
    stack.pop_back();
    for (Dart d : emb.face_darts(f)) {
      EdgeId e = dart_edge(d);
      if (cut.count(e)) continue;
      FaceId o = emb.face_of_dart(twin(d));
      if (!outside[o]) {
        outside[o] = true;
        stack.push_back(o);
      }
    }
  }
  r.inside_face.assign(fc, false);
  for (FaceId f = 0; f < fc; ++f) r.inside_face[f] = !outside[f];
  r.inside_vertex.assign(g.vertex_count(), false);
  r.inside_edge.assign(g.edge_count(), false);
  std::vector<bool> on_c(g.vertex_count(), false);
  for (Vertex v : c.vertices) on_c[v] = true;
  for (FaceId f = 0; f < fc; ++f) {
    if (!r.inside_face[f]) continue;
    for (Dart d : emb.face_darts(f)) {
      const Edge& ed = g.edge(dart_edge(d));
      if (!on_c[ed.a]) r.inside_vertex[ed.a] = true;
      if (!on_c[ed.b]) r.inside_vertex[ed.b] = true;
      if (!cut.count(dart_edge(d)) &&
          r.inside_face[emb.face_of_dart(twin(d))])
        r.inside_edge[dart_edge(d)] = true;
    }
  }
  return r;
}

CycleOrder cycle_order(const PlaneEmbedding& emb, const Cycle& c1,
                       const Cycle& c2) {
  if (c1 == c2) return CycleOrder::LessEq;
  CycleInterior in2 = cycle_interior(emb, c2);
  std::set<Vertex> v2(c2.vertices.begin(), c2.vertices.end());
  std::set<EdgeId> e2(c2.edge_ids.begin(), c2.edge_ids.end());
  bool le = true;
  for (Vertex v : c1.vertices)
    if (!v2.count(v) && !in2.inside_vertex[v]) le = false;
  for (EdgeId e : c1.edge_ids)
    if (!e2.count(e) && !in2.inside_edge[e]) le = false;
  if (le) {
    bool shares_v = false, shares_e = false;
    for (Vertex v : c1.vertices) shares_v |= v2.count(v) > 0;
    for (EdgeId e : c1.edge_ids) shares_e |= e2.count(e) > 0;
    if (!shares_v) return CycleOrder::LessVertex;
    if (!shares_e) return CycleOrder::LessEdge;
    return CycleOrder::LessEq;
  }
  bool c1_in_c2 = false;
  for (EdgeId e : c1.edge_ids) c1_in_c2 |= in2.inside_edge[e];
  if (c1_in_c2) {
    CycleInterior in1 = cycle_interior(emb, c1);
    bool c2_in_c1 = false;
    for (EdgeId e : c2.edge_ids) c2_in_c1 |= in1.inside_edge[e];
    if (c2_in_c1) return CycleOrder::Crossing;
  }
  return CycleOrder::Incomparable;
}

DualGraph dual(const PlaneEmbedding& emb) {
  DualGraph d;
  d.graph = WeightedGraph(emb.face_count(), /*multi=*/true);
  const WeightedGraph& g = emb.host();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [f1, f2] = emb.edge_faces(e);
    if (f1 < 0 || f2 < 0) continue;  // edge dropped by restriction
    d.graph.add_edge(f1, f2, g.edge(e).weight);
    d.sides.push_back({f1, f2});
    d.primal_edge.push_back(e);
  }
  return d;
}

std::string dual_dot(const PlaneEmbedding& emb) {
  DualGraph d = dual(emb);
  std::ostringstream os;
  os << "graph dual {\n";
  for (FaceId f = 0; f < emb.face_count(); ++f)
    os << "  f" << f << (f == emb.outer_face() ? " [shape=doublecircle]" : "")
       << ";\n";
  for (EdgeId e = 0; e < d.graph.edge_count(); ++e)
    os << "  f" << d.graph.edge(e).a << " -- f" << d.graph.edge(e).b
       << " [label=\"" << d.graph.edge(e).weight.str() << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace cyclepack
