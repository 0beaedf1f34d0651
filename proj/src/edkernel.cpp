#include "cyclepack/edkernel.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cyclepack/mapgraph.hpp"
#include "cyclepack/path_census.hpp"
#include "cyclepack/shortest.hpp"

namespace cyclepack {

std::optional<CyclePacking> leaf_shortcut(const WeightedGraph& g,
                                          const std::vector<Cycle>& leaf_cycles,
                                          int k) {
  if ((int)leaf_cycles.size() < 4 * k) return std::nullopt;
  // edge-sharing graph over the leaf cycles (a subgraph of the dual)
  WeightedGraph gf((int)leaf_cycles.size());
  for (int i = 0; i < (int)leaf_cycles.size(); ++i) {
    std::set<EdgeId> ei(leaf_cycles[i].edge_ids.begin(),
                        leaf_cycles[i].edge_ids.end());
    for (int j = i + 1; j < (int)leaf_cycles.size(); ++j) {
      bool share = false;
      for (EdgeId e : leaf_cycles[j].edge_ids)
        if (ei.count(e)) share = true;
      if (share) gf.add_edge(i, j, 1);
    }
  }
  auto is = planar_quarter_is(gf, k);
  if (!is)
    throw std::logic_error(
        "leaf_shortcut: no independent set of size k among >= 4k leaves");
  std::vector<Cycle> cycles;
  for (Vertex v : *is) cycles.push_back(leaf_cycles[v]);
  CyclePacking pack = make_packing(std::move(cycles), DisjointMode::Edge);
  std::string why;
  if (!packing_valid(g, pack, &why))
    throw std::logic_error("leaf_shortcut: invalid packing: " + why);
  return pack;
}

namespace {

Cycle union_cycle(const WeightedGraph& g, const VertexPath& p,
                  const VertexPath& q) {
  std::vector<Vertex> vs = p.vertices;
  std::vector<EdgeId> es = p.edge_ids;
  VertexPath qr = q.reversed();
  vs.insert(vs.end(), qr.vertices.begin() + 1, qr.vertices.end() - 1);
  es.insert(es.end(), qr.edge_ids.begin(), qr.edge_ids.end());
  return make_cycle(g, std::move(vs), std::move(es));
}

// Where a shortest cycle lives relative to the tree: a node, or path pair
// (i, j) of an S-node.
struct Location {
  int node = -1;
  int i = -1, j = -1;  // valid for non-tree pairs
  bool non_tree() const { return i >= 0; }
};

std::optional<Location> locate(const LsctBuild& b, const Cycle& c) {
  if (auto id = b.tree.find_cycle(c)) return Location{*id, -1, -1};
  for (const LsctNode& n : b.tree.nodes) {
    if (n.kind != LsctKind::SNode) continue;
    int l = (int)n.path_family.size() - 1;
    for (int i = 0; i <= l; ++i)
      for (int j = i + 1; j <= l; ++j) {
        if (j - i == 1 || (i == 0 && j == l)) continue;
        if (union_cycle(b.embedding.host(), n.path_family[i],
                        n.path_family[j]) == c)
          return Location{n.id, i, j};
      }
  }
  return std::nullopt;
}

bool shares_edge(const Cycle& a, const std::set<EdgeId>& edges) {
  for (EdgeId e : a.edge_ids)
    if (edges.count(e)) return true;
  return false;
}

bool shares_edge_path(const VertexPath& p, const std::set<EdgeId>& edges) {
  for (EdgeId e : p.edge_ids)
    if (edges.count(e)) return true;
  return false;
}

// Walk proper ancestors of `from` upward to the first cycle sharing no edge
// with c, then refine within it (S-nodes can hide a lower non-tree
// extension between two of their paths).
std::optional<Cycle> walk_up(const LsctBuild& b, int from, const Cycle& c) {
  const LsctTree& t = b.tree;
  const WeightedGraph& g = b.embedding.host();
  std::set<EdgeId> ce(c.edge_ids.begin(), c.edge_ids.end());
  int a = t.node(from).parent;
  while (a != -1 && shares_edge(t.node(a).cycle, ce)) a = t.node(a).parent;
  if (a == -1) return std::nullopt;
  const LsctNode& A = t.node(a);
  if (A.kind == LsctKind::UNode || A.kind == LsctKind::Leaf) return A.cycle;
  // S-node: find the child slice holding c, then widen minimally
  int h = -1;
  for (int ci = 0; ci < (int)A.children.size(); ++ci) {
    const Cycle& ch = t.node(A.children[ci]).cycle;
    if (order_le(cycle_order(b.embedding, c, ch))) {
      h = ci + 1;  // children are in family order: child ci+1 = P_ci u P_ci+1
      break;
    }
  }
  if (h < 0) throw std::logic_error("lowest_extension: lost the child slice");
  bool s_lo = shares_edge_path(A.path_family[h - 1], ce);
  bool s_hi = shares_edge_path(A.path_family[h], ce);
  if (!s_lo && !s_hi)
    throw std::logic_error("lowest_extension: slice does not pin the cycle");
  int i = s_lo ? h - 1 : h;
  int j = s_hi ? h : h - 1;
  return union_cycle(g, A.path_family[i - 1], A.path_family[j + 1]);
}

}  // namespace

std::optional<Cycle> lowest_extension(const LsctBuild& b, const Cycle& c) {
  auto loc = locate(b, c);
  if (!loc)
    throw std::invalid_argument("lowest_extension: not a shortest cycle here");
  const LsctTree& t = b.tree;
  const WeightedGraph& g = b.embedding.host();
  if (!loc->non_tree()) {
    if (loc->node == t.root) return std::nullopt;
    return walk_up(b, loc->node, c);
  }
  const LsctNode& n = t.node(loc->node);
  int l = (int)n.path_family.size() - 1;
  int i = loc->i, j = loc->j;
  if (i > 0 && j < l)
    return union_cycle(g, n.path_family[i - 1], n.path_family[j + 1]);
  // boundary pairs share a wing with the S-node; their extensions sit above
  Cycle wing = i == 0 ? union_cycle(g, n.path_family[0], n.path_family[l - 1])
                      : union_cycle(g, n.path_family[1], n.path_family[l]);
  if (wing == c) return walk_up(b, loc->node, c);
  return lowest_extension(b, wing);
}

std::vector<Cycle> extension_chain(const LsctBuild& b, const Cycle& c) {
  std::vector<Cycle> chain{c};
  std::set<std::vector<EdgeId>> seen{c.sorted_edges()};
  while (true) {
    auto next = lowest_extension(b, chain.back());
    if (!next) break;
    if (!seen.insert(next->sorted_edges()).second)
      throw std::logic_error("extension_chain: cycle repeats");
    chain.push_back(std::move(*next));
  }
  return chain;
}

MarkedCycles mark_cycles(const LsctBuild& b, int k) {
  const LsctTree& t = b.tree;
  const WeightedGraph& g = b.embedding.host();
  MarkedCycles m;
  std::set<std::vector<EdgeId>> base_seen;
  auto add_base = [&](const Cycle& c) {
    if (base_seen.insert(c.sorted_edges()).second) m.base.push_back(c);
  };
  for (const LsctNode& n : t.nodes) {
    if (n.kind == LsctKind::Leaf) add_base(n.cycle);
    if (n.kind == LsctKind::UNode && n.children.size() >= 2)
      add_base(n.cycle);
    if (n.kind == LsctKind::SNode) {
      add_base(n.cycle);
      int l = (int)n.path_family.size() - 1;
      add_base(union_cycle(g, n.path_family[0], n.path_family[l - 1]));
      add_base(union_cycle(g, n.path_family[1], n.path_family[l]));
    }
  }
  bool chain_shortcut = false;
  for (const Cycle& c : m.base) {
    auto chain = extension_chain(b, c);
    chain_shortcut |= (int)chain.size() >= k;
    m.chains.push_back({c, chain});
  }
  for (const LsctNode& n : t.nodes) {
    if (n.kind != LsctKind::SNode) continue;
    int l = (int)n.path_family.size() - 1;
    for (int i = 0; i <= l; ++i)
      for (int j = i + 2; j <= l; ++j) {
        if (i == 0 && j == l) continue;
        m.non_tree.push_back(
            union_cycle(g, n.path_family[i], n.path_family[j]));
      }
  }
  std::set<std::vector<EdgeId>> full_seen;
  auto add_full = [&](const Cycle& c) {
    if (full_seen.insert(c.sorted_edges()).second) m.full.push_back(c);
  };
  add_full(t.node(t.root).cycle);
  for (const Cycle& c : m.non_tree) add_full(c);
  for (auto& [base, chain] : m.chains)
    for (const Cycle& c : chain) add_full(c);
  // the paper's bounds presuppose the caller's chain shortcut did not fire
  if (!chain_shortcut) {
    if ((int)m.full.size() > 52 * k * k)
      throw std::logic_error("mark_cycles: marked set exceeds 52 k^2");
    // closed under taking the lowest extension
    for (const Cycle& c : m.full) {
      auto le = lowest_extension(b, c);
      if (le && !full_seen.count(le->sorted_edges()))
        throw std::logic_error(
            "mark_cycles: not closed under lowest extension");
    }
  }
  std::sort(m.full.begin(), m.full.end());
  return m;
}

bool verify_weight_compression(const WeightedGraph& g_structure,
                               const std::vector<Rat>& w_before,
                               const std::vector<Rat>& w_after) {
  if ((int)w_before.size() != g_structure.edge_count() ||
      w_before.size() != w_after.size())
    throw std::invalid_argument("verify_weight_compression: size mismatch");
  WeightedGraph g1(g_structure.vertex_count(), true);
  WeightedGraph g2(g_structure.vertex_count(), true);
  for (EdgeId e = 0; e < g_structure.edge_count(); ++e) {
    g1.add_edge(g_structure.edge(e).a, g_structure.edge(e).b, w_before[e]);
    g2.add_edge(g_structure.edge(e).a, g_structure.edge(e).b, w_after[e]);
  }
  std::vector<std::vector<EdgeId>> cycle_edge_sets;
  Rat total;
  for (const Rat& w : w_before) total += w;
  try {
    for (const Cycle& c : cycles_up_to(g1, total, 10000))
      cycle_edge_sets.push_back(c.sorted_edges());
  } catch (const std::runtime_error&) {
    // bounded fallback: shortest cycles plus per-edge shortest cycles under
    // both weightings
    auto collect = [&](const WeightedGraph& gg) {
      if (girth(gg)) {
        for (const Cycle& c : all_shortest_cycles(gg))
          cycle_edge_sets.push_back(c.sorted_edges());
        for (EdgeId e = 0; e < gg.edge_count(); ++e)
          if (auto c = shortest_cycle_through_edge(gg, e))
            cycle_edge_sets.push_back(c->sorted_edges());
      }
    };
    collect(g1);
    collect(g2);
    std::sort(cycle_edge_sets.begin(), cycle_edge_sets.end());
    cycle_edge_sets.erase(
        std::unique(cycle_edge_sets.begin(), cycle_edge_sets.end()),
        cycle_edge_sets.end());
  }
  // all pairwise comparisons agree in sign iff the value map is monotone
  std::map<Rat, Rat> after_of;
  for (const auto& es : cycle_edge_sets) {
    Rat wb, wa;
    for (EdgeId e : es) {
      wb += w_before[e];
      wa += w_after[e];
    }
    auto [it, fresh] = after_of.insert({wb, wa});
    if (!fresh && it->second != wa) return false;
  }
  std::optional<Rat> prev;
  for (auto& [wb, wa] : after_of) {
    if (prev && !(*prev < wa)) return false;
    prev = wa;
  }
  return true;
}

namespace {

// Multigraph under reduction: vertices keep clean-graph ids, edges carry the
// clean-edge path they were merged from (oriented u -> v).
struct KEdge {
  Vertex u, v;
  Rat w;
  std::vector<EdgeId> orig;
  bool alive = true;
};

struct KernelWork {
  const WeightedGraph* clean;
  std::vector<bool> v_alive;
  std::vector<KEdge> edges;
  std::vector<std::string> log;

  std::vector<int> incident(Vertex v) const {
    std::vector<int> out;
    for (int i = 0; i < (int)edges.size(); ++i)
      if (edges[i].alive && (edges[i].u == v || edges[i].v == v))
        out.push_back(i);
    return out;
  }
  int degree(Vertex v) const {
    int d = 0;
    for (int i : incident(v)) d += edges[i].u == edges[i].v ? 2 : 1;
    return d;
  }
  WeightedGraph materialize(std::vector<Vertex>* orig_vertex = nullptr,
                            std::vector<int>* orig_kedge = nullptr) const {
    std::vector<Vertex> ids;
    std::vector<int> back((size_t)clean->vertex_count(), -1);
    for (Vertex v = 0; v < clean->vertex_count(); ++v)
      if (v_alive[v]) {
        back[v] = (int)ids.size();
        ids.push_back(v);
      }
    WeightedGraph g((int)ids.size(), true);
    for (int i = 0; i < (int)edges.size(); ++i) {
      if (!edges[i].alive) continue;
      g.add_edge(back[edges[i].u], back[edges[i].v], edges[i].w);
      if (orig_kedge) orig_kedge->push_back(i);
    }
    if (orig_vertex) *orig_vertex = ids;
    return g;
  }
  std::optional<Rat> current_girth() const { return girth(materialize()); }

  // closed walk of clean-graph edges -> cycle in clean ids
  Cycle close_walk(Vertex start, const std::vector<EdgeId>& es) const {
    std::vector<Vertex> vs{start};
    Vertex cur = start;
    for (size_t i = 0; i + 1 < es.size(); ++i) {
      cur = clean->edge(es[i]).other(cur);
      vs.push_back(cur);
    }
    return make_cycle(*clean, std::move(vs), es);
  }
};

}  // namespace

namespace {

// Shared preparation for the kernel and the marked-cycle solver: clean the
// graph, split into components, build each LSCT, lift cycles to clean ids.
struct EdPrep {
  CleanResult cl;
  std::deque<Subgraph> comps;  // stable addresses: LsctBuild points into them
  std::vector<LsctBuild> builds;
  std::vector<Cycle> leaf_cycles;  // clean ids
  Rat girth_w;

  Cycle lift(const Cycle& c, int comp) const {
    const Subgraph& sub = comps[comp];
    std::vector<Vertex> vs;
    std::vector<EdgeId> es;
    for (Vertex v : c.vertices) vs.push_back(sub.orig_vertex[v]);
    for (EdgeId e : c.edge_ids) es.push_back(sub.orig_edge[e]);
    return make_cycle(cl.graph, std::move(vs), std::move(es));
  }
  Cycle lift_to_input(const WeightedGraph& g, const Cycle& c_clean) const {
    std::vector<Vertex> vs;
    std::vector<EdgeId> es;
    for (Vertex v : c_clean.vertices) vs.push_back(cl.orig_vertex[v]);
    for (EdgeId e : c_clean.edge_ids) es.push_back(cl.orig_edge[e]);
    return make_cycle(g, std::move(vs), std::move(es));
  }
};

std::optional<EdPrep> prepare_ed(const WeightedGraph& g) {
  auto gw = girth(g);
  if (!gw) return std::nullopt;
  EdPrep prep;
  prep.girth_w = *gw;
  prep.cl = clean(g);
  for (const auto& comp : prep.cl.graph.components()) {
    Subgraph sub = prep.cl.graph.induced_on(comp);
    if (sub.graph.edge_count() == 0) continue;
    prep.comps.push_back(std::move(sub));
    prep.builds.push_back(build_lsct(prep.comps.back().graph));
    const LsctBuild& b = prep.builds.back();
    for (int id : b.tree.leaves())
      prep.leaf_cycles.push_back(
          prep.lift(b.tree.node(id).cycle, (int)prep.builds.size() - 1));
  }
  return prep;
}

CyclePacking lift_packing_to_input(const WeightedGraph& g, const EdPrep& prep,
                                   const std::vector<Cycle>& clean_cycles,
                                   DisjointMode mode) {
  std::vector<Cycle> out;
  for (const Cycle& c : clean_cycles) out.push_back(prep.lift_to_input(g, c));
  CyclePacking pack = make_packing(std::move(out), mode);
  std::string why;
  if (!packing_valid(g, pack, &why))
    throw std::logic_error("edkernel: invalid lifted packing: " + why);
  return pack;
}

// Applies the T-maximal shape rewrite to cycles of one component, given in
// clean ids; returns reshaped cycles, still in clean ids.
CyclePacking shape_component_witness(const EdPrep& prep, int comp,
                                     const std::vector<Cycle>& clean_cycles) {
  const Subgraph& sub = prep.comps[comp];
  const LsctBuild& b = prep.builds[comp];
  std::map<EdgeId, EdgeId> to_comp_edge;
  for (EdgeId e = 0; e < (EdgeId)sub.orig_edge.size(); ++e)
    to_comp_edge[sub.orig_edge[e]] = e;
  std::vector<Cycle> local;
  for (const Cycle& c : clean_cycles) {
    std::vector<Vertex> vs;
    std::vector<EdgeId> es;
    for (Vertex v : c.vertices) vs.push_back(sub.new_vertex[v]);
    for (EdgeId e : c.edge_ids) es.push_back(to_comp_edge.at(e));
    local.push_back(make_cycle(sub.graph, std::move(vs), std::move(es)));
  }
  std::vector<Cycle> facials;
  for (FaceId f = 0; f < b.embedding.face_count(); ++f) {
    auto fc = b.embedding.face_cycle(f);
    if (fc && fc->weight == b.girth) facials.push_back(*fc);
  }
  CyclePacking shaped = postprocess_tmax(
      b.embedding, facials, make_packing(local, DisjointMode::Edge));
  std::vector<Cycle> back;
  for (const Cycle& c : shaped.cycles) {
    std::vector<Vertex> vs;
    std::vector<EdgeId> es;
    for (Vertex v : c.vertices) vs.push_back(sub.orig_vertex[v]);
    for (EdgeId e : c.edge_ids) es.push_back(sub.orig_edge[e]);
    back.push_back(make_cycle(prep.cl.graph, std::move(vs), std::move(es)));
  }
  return make_packing(std::move(back), DisjointMode::Edge);
}

}  // namespace

KernelResult kernelize_ed(const WeightedGraph& g, int k,
                          const KernelConfig& cfg) {
  if (k < 1) throw std::invalid_argument("kernelize_ed: k < 1");
  auto prep_opt = prepare_ed(g);
  if (!prep_opt) return TrivialNo{};
  EdPrep& prep = *prep_opt;
  const Rat g_w = prep.girth_w;

  if (auto pack = leaf_shortcut(prep.cl.graph, prep.leaf_cycles, k)) {
    return TrivialYes{
        lift_packing_to_input(g, prep, pack->cycles, DisjointMode::Edge)};
  }

  // marked cycles per component; an extension chain of length >= k is an
  // immediate witness
  std::vector<Cycle> marked;  // clean ids
  std::set<std::vector<EdgeId>> marked_seen;
  for (int ci = 0; ci < (int)prep.builds.size(); ++ci) {
    MarkedCycles out = mark_cycles(prep.builds[ci], k);
    for (auto& [base, chain] : out.chains) {
      if ((int)chain.size() < k) continue;
      std::vector<Cycle> lifted;
      for (int i = 0; i < k; ++i) lifted.push_back(prep.lift(chain[i], ci));
      return TrivialYes{
          lift_packing_to_input(g, prep, lifted, DisjointMode::Edge)};
    }
    for (const Cycle& c : out.full) {
      Cycle lc = prep.lift(c, ci);
      if (marked_seen.insert(lc.sorted_edges()).second)
        marked.push_back(std::move(lc));
    }
  }

  // H = union of the marked cycles, as a working multigraph over clean ids
  KernelWork work;
  work.clean = &prep.cl.graph;
  work.v_alive.assign(prep.cl.graph.vertex_count(), false);
  std::set<EdgeId> h_edges;
  for (const Cycle& c : marked)
    for (EdgeId e : c.edge_ids) h_edges.insert(e);
  for (EdgeId e : h_edges) {
    const Edge& ed = prep.cl.graph.edge(e);
    work.edges.push_back({ed.a, ed.b, ed.weight, {e}, true});
    work.v_alive[ed.a] = true;
    work.v_alive[ed.b] = true;
  }

  int kk = k;
  std::vector<Cycle> certificates;  // clean ids
  auto orig_v = [&](Vertex v) { return prep.cl.orig_vertex[v]; };

  auto decrement = [&](Cycle cert) -> std::optional<KernelResult> {
    certificates.push_back(std::move(cert));
    --kk;
    if (kk == 0) {
      std::vector<Cycle> cs = certificates;
      return KernelResult{TrivialYes{
          lift_packing_to_input(g, prep, cs, DisjointMode::Edge)}};
    }
    auto cg = work.current_girth();
    if (!cg || *cg > g_w) return KernelResult{TrivialNo{}};
    return std::nullopt;
  };

  while (true) {
    // RR2: loops first
    int loop = -1;
    for (int i = 0; i < (int)work.edges.size(); ++i)
      if (work.edges[i].alive && work.edges[i].u == work.edges[i].v) {
        loop = i;
        break;
      }
    if (loop >= 0) {
      KEdge& e = work.edges[loop];
      e.alive = false;
      bool dec = e.w == g_w;
      std::ostringstream os;
      os << "rr2 loop at=" << orig_v(e.u) << " w=" << e.w.str()
         << " dec=" << dec;
      work.log.push_back(os.str());
      if (dec) {
        if (auto r = decrement(work.close_walk(e.u, e.orig))) return *r;
      }
      continue;
    }
    // RR3: parallel class with the smallest endpoint key
    std::map<std::pair<Vertex, Vertex>, std::vector<int>> classes;
    for (int i = 0; i < (int)work.edges.size(); ++i) {
      if (!work.edges[i].alive) continue;
      auto key = std::minmax(work.edges[i].u, work.edges[i].v);
      classes[{key.first, key.second}].push_back(i);
    }
    std::optional<std::pair<Vertex, Vertex>> pkey;
    for (auto& [key, ids] : classes)
      if (ids.size() >= 2) {
        pkey = key;
        break;
      }
    if (pkey) {
      auto& ids = classes[*pkey];
      std::sort(ids.begin(), ids.end(), [&](int x, int y) {
        if (work.edges[x].w != work.edges[y].w)
          return work.edges[x].w < work.edges[y].w;
        return x < y;
      });
      int e1 = ids[0], e2 = ids[1];
      if (work.edges[e1].w + work.edges[e2].w == g_w) {
        work.edges[e1].alive = false;
        work.edges[e2].alive = false;
        std::ostringstream os;
        os << "rr3 pair " << orig_v(*&work.edges[e1].u) << "-"
           << orig_v(work.edges[e1].v) << " w=" << work.edges[e1].w.str()
           << "+" << work.edges[e2].w.str() << " dec=1";
        work.log.push_back(os.str());
        std::vector<EdgeId> walk = work.edges[e1].orig;
        std::vector<EdgeId> back = work.edges[e2].orig;
        // orient: e1 runs u->v, append e2 reversed v->u
        Vertex u = work.edges[e1].u;
        if (work.edges[e2].u == u) std::reverse(back.begin(), back.end());
        walk.insert(walk.end(), back.begin(), back.end());
        if (auto r = decrement(work.close_walk(u, walk))) return *r;
      } else {
        // drop the heaviest copy in the class (largest index on ties)
        int drop = ids[0];
        for (int i : ids)
          if (work.edges[i].w > work.edges[drop].w ||
              (work.edges[i].w == work.edges[drop].w && i > drop))
            drop = i;
        work.edges[drop].alive = false;
        std::ostringstream os;
        os << "rr3 drop " << orig_v(work.edges[drop].u) << "-"
           << orig_v(work.edges[drop].v) << " w=" << work.edges[drop].w.str();
        work.log.push_back(os.str());
      }
      continue;
    }
    // prune vertices of degree <= 1 (cannot lie on a cycle)
    int prune = -1;
    for (Vertex v = 0; v < (int)work.v_alive.size(); ++v)
      if (work.v_alive[v] && work.degree(v) <= 1) {
        prune = v;
        break;
      }
    if (prune >= 0) {
      for (int i : work.incident(prune)) work.edges[i].alive = false;
      work.v_alive[prune] = false;
      std::ostringstream os;
      os << "rr0 prune v=" << orig_v(prune);
      work.log.push_back(os.str());
      continue;
    }
    // RR1: dissolve a degree-2 vertex
    int dis = -1;
    for (Vertex v = 0; v < (int)work.v_alive.size(); ++v)
      if (work.v_alive[v] && work.degree(v) == 2) {
        dis = v;
        break;
      }
    if (dis >= 0) {
      auto inc = work.incident(dis);
      if (inc.size() != 2)
        throw std::logic_error("kernelize_ed: degree-2 bookkeeping");
      KEdge& a = work.edges[inc[0]];
      KEdge& b = work.edges[inc[1]];
      Vertex x = a.u == dis ? a.v : a.u;
      Vertex y = b.u == dis ? b.v : b.u;
      std::vector<EdgeId> orig;
      {
        std::vector<EdgeId> ap = a.orig;
        if (a.u == dis) std::reverse(ap.begin(), ap.end());  // orient x->dis
        std::vector<EdgeId> bp = b.orig;
        if (b.v == dis) std::reverse(bp.begin(), bp.end());  // orient dis->y
        orig = ap;
        orig.insert(orig.end(), bp.begin(), bp.end());
      }
      Rat w = a.w + b.w;
      a.alive = false;
      b.alive = false;
      work.v_alive[dis] = false;
      work.edges.push_back({x, y, w, std::move(orig), true});
      std::ostringstream os;
      os << "rr1 v=" << orig_v(dis);
      work.log.push_back(os.str());
      continue;
    }
    break;
  }

  // exhausted: package the kernel instance
  std::vector<Vertex> kern_orig_v;
  std::vector<int> kern_orig_e;
  WeightedGraph kern = work.materialize(&kern_orig_v, &kern_orig_e);
  if (kern.vertex_count() == 0) {
    // every cycle was consumed without the girth check firing; with kk >= 1
    // this is a no-instance
    return TrivialNo{};
  }
  for (Vertex v = 0; v < kern.vertex_count(); ++v)
    if (kern.degree(v) <= 2)
      throw std::logic_error("kernelize_ed: residual low-degree vertex");
  for (const Edge& e : kern.edges())
    if (e.is_loop()) throw std::logic_error("kernelize_ed: residual loop");
  if ((int)kern.vertex_count() > 200 * kk * kk)
    throw std::logic_error("kernelize_ed: kernel exceeds 200 k'^2 vertices");

  // weight compression behind the pluggable interface (identity by default)
  std::vector<Rat> before;
  for (const Edge& e : kern.edges()) before.push_back(e.weight);
  IdentityCompressor identity;
  const WeightCompressor* comp = cfg.compressor ? cfg.compressor : &identity;
  std::vector<Rat> after = comp->compress(before);
  if (!verify_weight_compression(kern, before, after))
    throw std::runtime_error(
        "kernelize_ed: weight compressor failed verification");
  WeightedGraph out(kern.vertex_count(), false);
  for (EdgeId e = 0; e < kern.edge_count(); ++e)
    out.add_edge(kern.edge(e).a, kern.edge(e).b, after[e]);

  return KernelInstance{std::move(out), kk, std::move(work.log)};
}

EdResult solve_scp_ed_planar(const WeightedGraph& g, int k) {
  if (k < 1) throw std::invalid_argument("solve_scp_ed_planar: k < 1");
  EdResult res;
  auto prep_opt = prepare_ed(g);
  if (!prep_opt) return res;
  EdPrep& prep = *prep_opt;

  if (auto pack = leaf_shortcut(prep.cl.graph, prep.leaf_cycles, k)) {
    res.yes = true;
    res.witness =
        lift_packing_to_input(g, prep, pack->cycles, DisjointMode::Edge);
    return res;
  }

  std::vector<Cycle> marked;  // clean ids, tagged by component
  std::vector<int> comp_of;
  std::set<std::vector<EdgeId>> seen;
  for (int ci = 0; ci < (int)prep.builds.size(); ++ci) {
    MarkedCycles out = mark_cycles(prep.builds[ci], k);
    for (auto& [base, chain] : out.chains) {
      if ((int)chain.size() < k) continue;
      std::vector<Cycle> lifted;
      for (int i = 0; i < k; ++i) lifted.push_back(prep.lift(chain[i], ci));
      CyclePacking shaped = shape_component_witness(prep, ci, lifted);
      res.yes = true;
      res.witness =
          lift_packing_to_input(g, prep, shaped.cycles, DisjointMode::Edge);
      return res;
    }
    for (const Cycle& c : out.full) {
      Cycle lc = prep.lift(c, ci);
      if (seen.insert(lc.sorted_edges()).second) {
        marked.push_back(std::move(lc));
        comp_of.push_back(ci);
      }
    }
  }

  // exact k-subset search for pairwise edge disjointness
  std::vector<int> chosen;
  std::vector<bool> e_used(prep.cl.graph.edge_count(), false);
  auto clash = [&](const Cycle& c) {
    for (EdgeId e : c.edge_ids)
      if (e_used[e]) return true;
    return false;
  };
  std::function<bool(int)> rec = [&](int from) -> bool {
    if ((int)chosen.size() == k) return true;
    for (int i = from; i < (int)marked.size(); ++i) {
      if ((int)marked.size() - i < k - (int)chosen.size()) break;
      if (clash(marked[i])) continue;
      for (EdgeId e : marked[i].edge_ids) e_used[e] = true;
      chosen.push_back(i);
      if (rec(i + 1)) return true;
      chosen.pop_back();
      for (EdgeId e : marked[i].edge_ids) e_used[e] = false;
    }
    return false;
  };
  if (!rec(0)) return res;

  // shape per component, then lift
  std::map<int, std::vector<Cycle>> by_comp;
  for (int i : chosen) by_comp[comp_of[i]].push_back(marked[i]);
  std::vector<Cycle> all;
  for (auto& [ci, cycles] : by_comp) {
    CyclePacking shaped = shape_component_witness(prep, ci, cycles);
    for (Cycle& c : shaped.cycles) all.push_back(std::move(c));
  }
  res.yes = true;
  res.witness = lift_packing_to_input(g, prep, all, DisjointMode::Edge);
  return res;
}

MinCutResult solve_min_cut_packing_planar(const WeightedGraph& g, int k) {
  if (!g.connected())
    throw std::invalid_argument("solve_min_cut_packing_planar: disconnected");
  MinCutResult res;
  if (g.edge_count() == 0) return res;
  PlaneEmbedding emb = embed(g);
  DualGraph d = dual(emb);
  auto dg = girth(d.graph);
  if (!dg) return res;  // no cuts at all (single vertex)
  res.min_cut_weight = *dg;
  std::vector<Cycle> dual_cycles = all_shortest_cycles(d.graph);
  // backtracking over edge-disjoint dual shortest cycles
  std::vector<int> chosen;
  std::vector<bool> used(d.graph.edge_count(), false);
  std::function<bool(int)> rec = [&](int from) -> bool {
    if ((int)chosen.size() == k) return true;
    for (int i = from; i < (int)dual_cycles.size(); ++i) {
      bool clash = false;
      for (EdgeId e : dual_cycles[i].edge_ids)
        if (used[e]) clash = true;
      if (clash) continue;
      for (EdgeId e : dual_cycles[i].edge_ids) used[e] = true;
      chosen.push_back(i);
      if (rec(i + 1)) return true;
      chosen.pop_back();
      for (EdgeId e : dual_cycles[i].edge_ids) used[e] = false;
    }
    return false;
  };
  if (!rec(0)) return res;
  for (int i : chosen) {
    std::vector<EdgeId> cut;
    for (EdgeId de : dual_cycles[i].edge_ids)
      cut.push_back(d.primal_edge[de]);
    std::sort(cut.begin(), cut.end());
    // verify: removing the set leaves the endpoints' side a genuine shore
    std::set<EdgeId> cs(cut.begin(), cut.end());
    Vertex u = g.edge(cut[0]).a;
    std::vector<bool> side(g.vertex_count(), false);
    std::vector<Vertex> stack{u};
    side[u] = true;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (EdgeId e : g.incident(v)) {
        if (cs.count(e)) continue;
        Vertex w = g.edge(e).other(v);
        if (!side[w]) {
          side[w] = true;
          stack.push_back(w);
        }
      }
    }
    std::vector<EdgeId> boundary;
    Rat w;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (side[g.edge(e).a] != side[g.edge(e).b]) {
        boundary.push_back(e);
        w += g.edge(e).weight;
      }
    if (boundary != cut || w != *dg)
      throw std::logic_error(
          "solve_min_cut_packing_planar: dual cycle is not a minimum cut-set");
    res.cut_sets.push_back(std::move(cut));
  }
  std::sort(res.cut_sets.begin(), res.cut_sets.end());
  res.yes = true;
  return res;
}

}  // namespace cyclepack
