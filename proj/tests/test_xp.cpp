#include <map>
#include <set>

#include "cyclepack/chords.hpp"
#include "cyclepack/oracle.hpp"
#include "cyclepack/path_census.hpp"
#include "cyclepack/shortest.hpp"
#include "cyclepack/xp_solver.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace cyclepack;

TEST_CASE("enumerate_paths: triangle census") {
  auto g = fx::unit_triangle();
  auto c = enumerate_paths(g, Rat(2), 100);
  REQUIRE(!c.overflow);
  CHECK(c.paths.size() == 9);  // 3 trivial + 3 edges + 3 two-edge
  int trivial = 0;
  for (auto& p : c.paths) trivial += p.trivial();
  CHECK(trivial == 3);

  auto z = enumerate_paths(g, Rat(0), 10);
  REQUIRE(!z.overflow);
  CHECK(z.paths.size() == 3);

  auto o = enumerate_paths(g, Rat(2), 5);
  CHECK(o.overflow);
  CHECK(o.paths.empty());
  CHECK(!count_paths(g, Rat(2), 5));
  CHECK(count_paths(g, Rat(2), 9) == 9);
  CHECK(count_paths(g, Rat(2), 8) == std::nullopt);
}

TEST_CASE("enumerate_paths deduplicates orientations") {
  auto g = fx::path_graph(4);
  auto c = enumerate_paths(g, Rat(10), 1000);
  REQUIRE(!c.overflow);
  // paths of P4: 4 trivial + 3 + 2 + 1 nontrivial
  CHECK(c.paths.size() == 10);
}

TEST_CASE("chord_decompose on a square with one chord path") {
  // C = 4-cycle (0,1,2,3); P = 0-4-2
  WeightedGraph g(5);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 2, 1);
  g.add_edge(2, 3, 1);
  g.add_edge(3, 0, 1);
  g.add_edge(0, 4, 1);
  g.add_edge(4, 2, 1);
  auto c = make_cycle(g, {0, 1, 2, 3});
  auto p = make_path(g, {0, 4, 2});
  auto d = chord_decompose(g, p, c);
  CHECK(d.chords.size() == 1);
  CHECK(d.tails.empty());
  CHECK(d.shared_edges.empty());
  CHECK(d.intersection_components == 2);
  CHECK(d.endpoints_on_cycle[0] == std::pair<int, int>{0, 2});
}

TEST_CASE("chord_decompose: subpath of C has no chords or tails") {
  auto g = fx::unit_cycle(4);
  auto c = make_cycle(g, {0, 1, 2, 3});
  auto p = make_path(g, {0, 1, 2});
  auto d = chord_decompose(g, p, c);
  CHECK(d.chords.empty());
  CHECK(d.tails.empty());
  CHECK(d.shared_edges.size() == 2);
  CHECK(d.intersection_components == 1);
}

TEST_CASE("chord_decompose: chord, tail and shared edge together") {
  // C = (1,2,3,4); P = 6-1-5-3-2: tail (6,1), chord (1,5,3), shared {3,2}
  WeightedGraph g(7);
  g.add_edge(1, 2, 1);
  g.add_edge(2, 3, 1);
  g.add_edge(3, 4, 1);
  g.add_edge(4, 1, 1);
  g.add_edge(6, 1, 1);
  g.add_edge(1, 5, 1);
  g.add_edge(5, 3, 1);
  auto c = make_cycle(g, {1, 2, 3, 4});
  auto p = make_path(g, {6, 1, 5, 3, 2});
  auto d = chord_decompose(g, p, c);
  REQUIRE(d.chords.size() == 1);
  CHECK(d.chords[0].vertices == std::vector<Vertex>{1, 5, 3});
  REQUIRE(d.tails.size() == 1);
  CHECK(d.tails[0].vertices == std::vector<Vertex>{6, 1});
  REQUIRE(d.shared_edges.size() == 1);
  CHECK(g.edge(d.shared_edges[0]).a == 2);
  // chords = components - 1
  CHECK((int)d.chords.size() == d.intersection_components - 1);
  // disjoint P, C is an error
  auto far = make_path(g, {6});
  CHECK_THROWS(chord_decompose(g, far, c));
}

TEST_CASE("classify_chord_pair") {
  CHECK(classify_chord_pair({1, 2}, {3, 4}) == ChordRelation::Consecutive);
  CHECK(classify_chord_pair({1, 3}, {2, 4}) == ChordRelation::Crossing);
  CHECK(classify_chord_pair({1, 4}, {2, 3}) == ChordRelation::Parallel);
  CHECK_THROWS(classify_chord_pair({1, 3}, {3, 4}));
  CHECK_THROWS(classify_chord_pair({3, 4}, {1, 2}));
}

TEST_CASE("monotone_subsequence") {
  auto r = monotone_subsequence({Rat(3), Rat(4), Rat(1), Rat(2), Rat(5)}, 3);
  REQUIRE(r);
  CHECK(r->size() == 3);
  auto d = monotone_subsequence({Rat(2), Rat(1)}, 2);
  REQUIRE(d);
  CHECK((*d) == std::vector<int>{0, 1});
  CHECK(!monotone_subsequence({Rat(2), Rat(1)}, 3));
  CHECK_THROWS(monotone_subsequence({Rat(1), Rat(1)}, 1));
  // any 5 distinct values contain a monotone subsequence of length 3
  std::vector<Rat> perm{Rat(2), Rat(5), Rat(1), Rat(4), Rat(3)};
  do {
    CHECK(monotone_subsequence(perm, 3));
  } while (std::next_permutation(perm.begin(), perm.end(),
                                 [](const Rat& a, const Rat& b) { return a < b; }));
}

namespace {

// C = unit cycle on m vertices 0..m-1 plus chord paths; each chord is a
// two-edge path through a fresh vertex between given cycle positions.
// P zig-zags through all chords per relation so they are its chords rel C.
struct SyntheticFixture {
  WeightedGraph g;
  Cycle c;
  VertexPath p;
};

SyntheticFixture build_synthetic(int m, ChordRelation rel, int chords) {
  std::vector<std::pair<int, int>> pos;
  switch (rel) {
    case ChordRelation::Consecutive:
      for (int i = 0; i < chords; ++i) pos.push_back({3 * i, 3 * i + 2});
      break;
    case ChordRelation::Crossing:
      for (int i = 0; i < chords; ++i)
        pos.push_back({i, chords + 2 + 2 * i});
      break;
    case ChordRelation::Parallel:
      for (int i = 0; i < chords; ++i)
        pos.push_back({i, 3 * chords - 2 * i});
      break;
  }
  WeightedGraph g(m + chords);
  for (int i = 0; i < m; ++i) g.add_edge(i, (i + 1) % m, 1);
  for (int i = 0; i < chords; ++i) {
    g.add_edge(pos[i].first, m + i, 1);
    g.add_edge(m + i, pos[i].second, 1);
  }
  std::vector<Vertex> cyc;
  for (int i = 0; i < m; ++i) cyc.push_back(i);
  Cycle c = make_cycle(g, cyc);
  // walk chords in order, zig-zag through arcs
  std::vector<Vertex> walk;
  auto arc = [&](int a, int b, bool skip_first) {
    int step = a < b ? 1 : -1;
    for (int v = a; v != b + step; v += step) {
      if (skip_first && v == a) continue;
      walk.push_back(v);
    }
  };
  if (rel == ChordRelation::Consecutive) {
    for (int i = 0; i < chords; ++i) {
      if (i) arc(pos[i - 1].second, pos[i].first, true);
      else walk.push_back(pos[i].first);
      walk.push_back(m + i);
      walk.push_back(pos[i].second);
    }
  } else {
    // zig-zag: chord up, t-arc, chord down, s-arc, ...
    walk.push_back(pos[0].first);
    walk.push_back(m + 0);
    walk.push_back(pos[0].second);
    for (int i = 1; i < chords; ++i) {
      if (i % 2 == 1) {
        arc(pos[i - 1].second, pos[i].second, true);
        walk.push_back(m + i);
        walk.push_back(pos[i].first);
      } else {
        arc(pos[i - 1].first, pos[i].first, true);
        walk.push_back(m + i);
        walk.push_back(pos[i].second);
      }
    }
  }
  VertexPath p = make_path(g, walk);
  return {std::move(g), std::move(c), std::move(p)};
}

}  // namespace

TEST_CASE("extract k cycles: k=1 with a single chord") {
  WeightedGraph g(5);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 2, 1);
  g.add_edge(2, 3, 1);
  g.add_edge(3, 0, 1);
  g.add_edge(0, 4, 1);
  g.add_edge(4, 2, 1);
  auto c = make_cycle(g, {0, 1, 2, 3});
  auto p = make_path(g, {0, 4, 2});
  auto res = extract_k_cycles_from_chords(g, p, c, 1, Rat(6));
  REQUIRE(res);
  CHECK(res->cycles.size() == 1);
  CHECK(res->cycles[0].weight == Rat(4));  // both sub-cycles weigh 4
}

TEST_CASE("extract k cycles from same-relation families") {
  for (auto rel : {ChordRelation::Consecutive, ChordRelation::Crossing,
                   ChordRelation::Parallel}) {
    int chords = 8;
    int m = rel == ChordRelation::Consecutive ? 3 * chords + 2
                                              : 3 * chords + 6;
    auto fx = build_synthetic(m, rel, chords);
    Rat ell = fx.p.weight + fx.c.weight;
    auto res = extract_k_cycles_from_chords(fx.g, fx.p, fx.c, 2, ell);
    REQUIRE(res);
    CHECK(res->cycles.size() == 2);
    CHECK(packing_valid(fx.g, *res));
    CHECK(res->total_weight <= ell);
    // edges within E(P) | E(C)
    std::set<EdgeId> allowed(fx.c.edge_ids.begin(), fx.c.edge_ids.end());
    allowed.insert(fx.p.edge_ids.begin(), fx.p.edge_ids.end());
    for (const Cycle& cy : res->cycles)
      for (EdgeId e : cy.edge_ids) CHECK(allowed.count(e));
    if (rel == ChordRelation::Consecutive)
      CHECK(res->total_weight <= ell / Rat(2));
    else
      // each pair-cycle uses exactly two chords
      for (const Cycle& cy : res->cycles) {
        int fresh = 0;
        for (Vertex v : cy.vertices) fresh += v >= m;
        CHECK(fresh == 2);
      }
  }
}

TEST_CASE("extract returns none below the 4k family bound") {
  auto fx = build_synthetic(26, ChordRelation::Consecutive, 8);
  Rat ell = fx.p.weight + fx.c.weight;
  CHECK(!extract_k_cycles_from_chords(fx.g, fx.p, fx.c, 3, ell));
}

TEST_CASE("greedy short cycle cover") {
  auto g = fx::two_triangles();
  auto cover = greedy_short_cycle_cover(g, Rat(3), 2);
  CHECK(cover.reached_k);
  CHECK(cover.cycles.size() == 2);
  auto partial = greedy_short_cycle_cover(g, Rat(2), 2);
  CHECK(partial.cycles.empty());
}

TEST_CASE("solve_minsum basics") {
  auto res = solve_minsum(fx::two_triangles(), 2, Rat(6), DisjointMode::Vertex);
  CHECK(res.yes);
  CHECK(res.witness->total_weight == Rat(6));
  auto no = solve_minsum(fx::k4(), 2, Rat(100), DisjointMode::Vertex);
  CHECK(!no.yes);
  // K4 has 6 edges and every vertex odd degree: no 2 edge-disjoint cycles
  auto ed = solve_minsum(fx::k4(), 2, Rat(8), DisjointMode::Edge);
  CHECK(!ed.yes);
  // bowtie: two triangles sharing one vertex
  WeightedGraph bow(5);
  bow.add_edge(0, 1, 1);
  bow.add_edge(1, 2, 1);
  bow.add_edge(2, 0, 1);
  bow.add_edge(2, 3, 1);
  bow.add_edge(3, 4, 1);
  bow.add_edge(4, 2, 1);
  CHECK(!solve_minsum(bow, 2, Rat(6), DisjointMode::Vertex).yes);
  CHECK(solve_minsum(bow, 2, Rat(6), DisjointMode::Edge).yes);
}

TEST_CASE("solve_minsum overflow path still yields a valid optimal witness") {
  XpConfig cfg;
  cfg.census.policy = PathCensusConfig::Policy::Explicit;
  cfg.census.cap = 3;  // force overflow
  auto res = solve_minsum(fx::two_triangles(), 2, Rat(6), DisjointMode::Vertex,
                          cfg);
  CHECK(res.yes);
  CHECK(res.census_overflow);
  CHECK(res.witness->total_weight == Rat(6));
}

TEST_CASE("solve_minvector basics") {
  auto yes = solve_minvector(fx::two_triangles(), {Rat(3), Rat(3)},
                             DisjointMode::Vertex);
  CHECK(yes.yes);
  auto no = solve_minvector(fx::two_triangles(), {Rat(3), Rat(2)},
                            DisjointMode::Vertex);
  CHECK(!no.yes);
}

namespace {

WeightedGraph random_graph(std::uint64_t seed, int n, int extra) {
  // deterministic xorshift-based generator
  std::uint64_t s = seed * 0x9E3779B97F4A7C15ull + 1;
  auto next = [&]() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  };
  WeightedGraph g(n);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
  int m = std::min((int)pairs.size(), n - 1 + extra);
  // select m distinct pairs
  for (int i = 0; i < m; ++i) {
    std::swap(pairs[i], pairs[i + next() % (pairs.size() - i)]);
    auto [a, b] = pairs[i];
    g.add_edge(a, b, Rat(1 + (int)(next() % 4), 1 + (int)(next() % 3)));
  }
  return g;
}

}  // namespace

TEST_CASE("solve_minsum and solve_minvector match the oracle on random graphs") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    int n = 4 + (int)(seed % 7);
    auto g = random_graph(seed, n, (int)(seed % 8));
    for (int k : {1, 2}) {
      auto gw = girth(g);
      Rat ell = gw ? *gw * Rat(k) + Rat((int)(seed % 5), 2) : Rat(5);
      for (auto mode : {DisjointMode::Vertex, DisjointMode::Edge}) {
        auto res = solve_minsum(g, k, ell, mode);
        oracle::PackingQuery q;
        q.k = k;
        q.mode = mode;
        q.objective = oracle::Objective::MinTotal;
        q.ell = ell;
        auto opt = oracle::best_packing(g, q);
        REQUIRE(res.yes == opt.has_value());
        if (opt) CHECK(res.witness->total_weight == opt->total_weight);

        std::vector<Rat> budgets;
        for (int i = 0; i < k; ++i)
          budgets.push_back(ell / Rat(k) + Rat(i, 3));
        auto vres = solve_minvector(g, budgets, mode);
        oracle::PackingQuery vq;
        vq.k = k;
        vq.mode = mode;
        vq.objective = oracle::Objective::Vector;
        vq.budgets = budgets;
        auto vopt = oracle::best_packing(g, vq);
        CHECK(vres.yes == vopt.has_value());
      }
    }
  }
}

TEST_CASE("path census laws on small graphs") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    auto g = random_graph(seed + 100, 5 + (int)(seed % 5), (int)(seed % 6));
    auto gw = girth(g);
    Rat ell = gw ? *gw - Rat(1, 7) : Rat(10);
    // no cycle of weight <= ell: pair-uniqueness of ell/2 paths
    auto c = enumerate_paths(g, ell / Rat(2), 2'000'000);
    REQUIRE(!c.overflow);
    std::map<std::pair<Vertex, Vertex>, int> per_pair;
    for (const auto& p : c.paths) {
      if (p.trivial()) continue;
      Vertex a = p.front(), b = p.back();
      if (a > b) std::swap(a, b);
      per_pair[{a, b}]++;
    }
    for (auto& [pr, cnt] : per_pair) CHECK(cnt <= 1);
    // boosting inequality: count(<= 2*l0) <= count(<= l0)^2
    Rat l0 = ell / Rat(2);
    auto full = count_paths(g, l0 * Rat(2), 4'000'000);
    auto half = count_paths(g, l0, 4'000'000);
    REQUIRE(full);
    REQUIRE(half);
    CHECK((__int128)*full <= (__int128)(*half) * (*half));
  }
}
