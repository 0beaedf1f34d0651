#include "cyclepack/chords.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace cyclepack {

namespace {

VertexPath subpath(const WeightedGraph& g, const VertexPath& p, int from,
                   int to) {
  VertexPath r;
  r.vertices.assign(p.vertices.begin() + from, p.vertices.begin() + to + 1);
  r.edge_ids.assign(p.edge_ids.begin() + from, p.edge_ids.begin() + to);
  for (EdgeId e : r.edge_ids) r.weight += g.edge(e).weight;
  return r;
}

}  // namespace

ChordDecomposition chord_decompose(const WeightedGraph& g, const VertexPath& p,
                                   const Cycle& c) {
  std::map<Vertex, int> pos;
  for (int i = 0; i < c.size(); ++i) pos[c.vertices[i]] = i;
  std::set<EdgeId> c_edges(c.edge_ids.begin(), c.edge_ids.end());

  std::vector<int> marked;  // indices into p.vertices lying on C
  for (int i = 0; i < (int)p.vertices.size(); ++i)
    if (pos.count(p.vertices[i])) marked.push_back(i);
  if (marked.empty())
    throw std::invalid_argument("chord_decompose: path and cycle disjoint");

  ChordDecomposition d;
  d.host_path = p;
  d.host_cycle = c;

  // tails: prefix before the first marked position, suffix after the last
  if (marked.front() > 0) d.tails.push_back(subpath(g, p, 0, marked.front()));
  if (marked.back() + 1 < (int)p.vertices.size())
    d.tails.push_back(
        subpath(g, p, marked.back(), (int)p.vertices.size() - 1));

  // pieces between consecutive marked positions: a shared edge or a chord
  int components = 1;
  for (size_t i = 0; i + 1 < marked.size(); ++i) {
    int a = marked[i], b = marked[i + 1];
    if (b == a + 1 && c_edges.count(p.edge_ids[a])) {
      d.shared_edges.push_back(p.edge_ids[a]);
      continue;
    }
    ++components;
    VertexPath chord = subpath(g, p, a, b);
    int pa = pos.at(chord.front());
    int pb = pos.at(chord.back());
    d.endpoints_on_cycle.push_back({std::min(pa, pb), std::max(pa, pb)});
    d.chords.push_back(std::move(chord));
  }
  d.intersection_components = components;
  return d;
}

ChordRelation classify_chord_pair(std::pair<int, int> a,
                                  std::pair<int, int> b) {
  auto [s1, t1] = a;
  auto [s2, t2] = b;
  if (!(s1 < s2))
    throw std::invalid_argument("classify_chord_pair: expects s(a) < s(b)");
  std::set<int> all{s1, t1, s2, t2};
  if (all.size() != 4)
    throw std::invalid_argument("classify_chord_pair: overlapping chords");
  if (t1 < s2) return ChordRelation::Consecutive;
  if (t1 < t2) return ChordRelation::Crossing;
  return ChordRelation::Parallel;
}

namespace {

// Longest strictly increasing/decreasing subsequence, as indices into seq.
std::vector<int> longest_monotone(const std::vector<Rat>& seq,
                                  bool increasing) {
  int n = (int)seq.size();
  std::vector<int> len(n, 1), prev(n, -1);
  int best = -1;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      bool ok = increasing ? seq[j] < seq[i] : seq[j] > seq[i];
      if (ok && len[j] + 1 > len[i]) {
        len[i] = len[j] + 1;
        prev[i] = j;
      }
    }
    if (best < 0 || len[i] > len[best]) best = i;
  }
  std::vector<int> idx;
  for (int i = best; i != -1; i = prev[i]) idx.push_back(i);
  std::reverse(idx.begin(), idx.end());
  return idx;
}

}  // namespace

std::optional<std::vector<int>> monotone_subsequence(
    const std::vector<Rat>& seq, int r) {
  std::set<Rat> uniq(seq.begin(), seq.end());
  if (uniq.size() != seq.size())
    throw std::invalid_argument("monotone_subsequence: duplicate entries");
  if (r <= 0) return std::vector<int>{};
  if (seq.empty()) return std::nullopt;
  for (bool increasing : {true, false}) {
    std::vector<int> idx = longest_monotone(seq, increasing);
    if ((int)idx.size() >= r) {
      idx.resize(r);
      return idx;
    }
  }
  return std::nullopt;
}

namespace {

struct PosChord {
  int s, t;
  int idx;  // index into the thinned chord list
};

VertexPath orient_from(const VertexPath& p, Vertex from) {
  if (p.front() == from) return p;
  if (p.back() == from) return p.reversed();
  throw std::logic_error("orient_from: vertex not an endpoint");
}

// Forward arc along C between canonical positions a < b.
VertexPath arc_path(const WeightedGraph& g, const Cycle& c, int a, int b) {
  VertexPath r;
  for (int i = a; i <= b; ++i) r.vertices.push_back(c.vertices[i]);
  for (int i = a; i < b; ++i) {
    r.edge_ids.push_back(c.edge_ids[i]);
    r.weight += g.edge(c.edge_ids[i]).weight;
  }
  return r;
}

Cycle stitch(const WeightedGraph& g, const std::vector<VertexPath>& segs) {
  std::vector<Vertex> vs;
  std::vector<EdgeId> es;
  for (size_t i = 0; i < segs.size(); ++i) {
    const VertexPath& s = segs[i];
    const VertexPath& n = segs[(i + 1) % segs.size()];
    if (s.back() != n.front()) throw std::logic_error("stitch: endpoint gap");
    vs.insert(vs.end(), s.vertices.begin(), s.vertices.end() - 1);
    es.insert(es.end(), s.edge_ids.begin(), s.edge_ids.end());
  }
  return make_cycle(g, std::move(vs), std::move(es));
}

}  // namespace

std::optional<CyclePacking> extract_k_cycles_from_chords(
    const WeightedGraph& g, const VertexPath& p, const Cycle& c, int k,
    const Rat& ell) {
  if (p.weight > ell || c.weight > ell)
    throw std::invalid_argument("extract_k_cycles: P or C above the bound");
  if (k < 1) throw std::invalid_argument("extract_k_cycles: k < 1");
  ChordDecomposition dec = chord_decompose(g, p, c);
  if (dec.chords.empty()) return std::nullopt;

  auto chord_cycle_pair = [&](int ci) -> std::pair<Cycle, Cycle> {
    auto [s, t] = dec.endpoints_on_cycle[ci];
    VertexPath chord = orient_from(dec.chords[ci], c.vertices[s]);
    Cycle inner = stitch(g, {arc_path(g, c, s, t), chord.reversed()});
    // outer arc: from t around the end of the canonical order back to s
    VertexPath outer;
    int csz = c.size();
    for (int i = t; i <= s + csz; ++i)
      outer.vertices.push_back(c.vertices[i % csz]);
    for (int i = t; i < s + csz; ++i) {
      outer.edge_ids.push_back(c.edge_ids[i % csz]);
      outer.weight += g.edge(c.edge_ids[i % csz]).weight;
    }
    Cycle wrap = stitch(g, {outer, chord});
    return {inner, wrap};
  };

  if (k == 1) {
    // A single chord splits C into two cycles whose weights sum to
    // w(C) + w(chord) <= 2*ell; the lighter one is a witness.
    std::optional<Cycle> best;
    for (int ci = 0; ci < (int)dec.chords.size(); ++ci) {
      auto [inner, wrap] = chord_cycle_pair(ci);
      for (const Cycle& cand : {inner, wrap}) {
        if (cand.weight > ell) continue;
        if (!best || cand.weight < best->weight ||
            (cand.weight == best->weight && cand < *best))
          best = cand;
      }
    }
    if (!best) return std::nullopt;
    return make_packing({*best}, DisjointMode::Vertex);
  }

  // Thin to a vertex-disjoint subfamily: adjacent chords along P may share a
  // junction vertex; non-adjacent ones never intersect.
  std::vector<PosChord> thin;
  for (int i = 0; i < (int)dec.chords.size(); ++i) {
    if (!thin.empty()) {
      const VertexPath& prev = dec.chords[thin.back().idx];
      const VertexPath& cur = dec.chords[i];
      std::set<Vertex> pv(prev.vertices.begin(), prev.vertices.end());
      bool clash = false;
      for (Vertex v : cur.vertices)
        if (pv.count(v)) clash = true;
      if (clash) continue;
    }
    thin.push_back(
        {dec.endpoints_on_cycle[i].first, dec.endpoints_on_cycle[i].second, i});
  }

  // Candidate family 1: pairwise consecutive via the smallest-t greedy.
  std::vector<PosChord> by_t = thin;
  std::sort(by_t.begin(), by_t.end(),
            [](const PosChord& a, const PosChord& b) { return a.t < b.t; });
  std::vector<PosChord> consecutive;
  int last_t = -1;
  for (const PosChord& ch : by_t) {
    if (ch.s <= last_t) continue;  // touched by the chosen endpoint
    consecutive.push_back(ch);
    last_t = ch.t;
  }
  std::sort(consecutive.begin(), consecutive.end(),
            [](const PosChord& a, const PosChord& b) { return a.s < b.s; });

  // Candidate families 2/3: crossing / parallel chords strictly pierced by a
  // common position, ordered by s with monotone t (Erdos-Szekeres). All
  // piercing positions are tried; the proof only needs the most-touched one,
  // but exhausting them never returns a smaller family.
  std::vector<PosChord> crossing, parallel;
  for (int pierce = 0; pierce < c.size(); ++pierce) {
    std::vector<PosChord> inner;
    for (const PosChord& ch : thin)
      if (ch.s < pierce && pierce < ch.t) inner.push_back(ch);
    if (inner.size() <= std::max(crossing.size(), parallel.size())) continue;
    std::sort(inner.begin(), inner.end(),
              [](const PosChord& a, const PosChord& b) { return a.s < b.s; });
    std::vector<Rat> ts;
    for (const PosChord& ch : inner) ts.push_back(Rat(ch.t));
    // All pairs overlap at pierce, so increasing t means pairwise crossing
    // and decreasing t pairwise parallel.
    auto inc = longest_monotone(ts, true);
    if (inc.size() > crossing.size()) {
      crossing.clear();
      for (int i : inc) crossing.push_back(inner[i]);
    }
    auto dec = longest_monotone(ts, false);
    if (dec.size() > parallel.size()) {
      parallel.clear();
      for (int i : dec) parallel.push_back(inner[i]);
    }
  }

  const std::vector<PosChord>* fam = &consecutive;
  ChordRelation rel = ChordRelation::Consecutive;
  if (crossing.size() > fam->size()) {
    fam = &crossing;
    rel = ChordRelation::Crossing;
  }
  if (parallel.size() > fam->size()) {
    fam = &parallel;
    rel = ChordRelation::Parallel;
  }
  if ((int)fam->size() < 4 * k) return std::nullopt;

  std::vector<Cycle> built;
  if (rel == ChordRelation::Consecutive) {
    for (const PosChord& ch : *fam) built.push_back(chord_cycle_pair(ch.idx).first);
  } else {
    for (size_t i = 0; i + 1 < fam->size(); i += 2) {
      const PosChord& r1 = (*fam)[i];
      const PosChord& r2 = (*fam)[i + 1];
      VertexPath ch1 = orient_from(dec.chords[r1.idx], c.vertices[r1.s]);
      VertexPath ch2 = orient_from(dec.chords[r2.idx], c.vertices[r2.s]);
      std::vector<VertexPath> segs;
      if (rel == ChordRelation::Crossing) {
        // s1 < s2 < t1 < t2
        segs = {ch1, arc_path(g, c, r1.t, r2.t), ch2.reversed(),
                arc_path(g, c, r1.s, r2.s).reversed()};
      } else {
        // s1 < s2 < t2 < t1
        segs = {ch1, arc_path(g, c, r2.t, r1.t).reversed(), ch2.reversed(),
                arc_path(g, c, r1.s, r2.s).reversed()};
      }
      built.push_back(stitch(g, segs));
    }
  }

  std::sort(built.begin(), built.end(), [](const Cycle& a, const Cycle& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    return a < b;
  });
  if ((int)built.size() < k) return std::nullopt;
  built.resize(k);
  CyclePacking pack = make_packing(std::move(built), DisjointMode::Vertex);
  std::string why;
  if (!packing_valid(g, pack, &why))
    throw std::logic_error("extract_k_cycles: invalid construction: " + why);
  if (pack.total_weight > ell)
    throw std::logic_error("extract_k_cycles: weight bound violated");
  return pack;
}

}  // namespace cyclepack
