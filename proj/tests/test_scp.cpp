#include <set>

#include "cyclepack/oracle.hpp"
#include "cyclepack/scp_planar.hpp"
#include "cyclepack/shortest.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace cyclepack;

namespace {

// planted fixture: an S-node with `p` parallel unit 2-paths between poles,
// whose only k=2 solutions use a non-tree cycle pair.
WeightedGraph planted(int p) { return fx::parallel_paths(p); }

oracle::PackingQuery scp_query(int k) {
  oracle::PackingQuery q;
  q.k = k;
  q.mode = DisjointMode::Vertex;
  q.objective = oracle::Objective::ShortestOnly;
  return q;
}

}  // namespace

TEST_CASE("classify_s_nodes boundary at 3k+3 children") {
  // p parallel paths -> S-node with p-1 children; k=1 boundary is 6 children
  for (int p : {6, 7, 8}) {
    auto g = planted(p);
    auto b = build_lsct(g);
    auto large = classify_s_nodes(b.tree, 1);
    bool expect_large = (p - 1) >= 6;
    CHECK(large[b.tree.root] == expect_large);
  }
  auto th = fx::theta();
  auto b = build_lsct(th);
  CHECK(!classify_s_nodes(b.tree, 1)[b.tree.root]);  // 2 children, small
}

TEST_CASE("color_paths: exact bias denominator and determinism") {
  auto a = color_paths(64, 1, 42, 7);
  auto b = color_paths(64, 1, 42, 7);
  CHECK(a == b);
  auto c = color_paths(64, 1, 42, 8);
  CHECK(a != c);
  // bias sanity at k=1 (prob 1/3): expect roughly a third red over many draws
  int reds = 0, total = 0;
  for (std::uint64_t tr = 0; tr < 200; ++tr) {
    auto r = color_paths(32, 1, 9, tr);
    for (bool x : r) reds += x;
    total += 32;
  }
  CHECK(reds > total / 5);
  CHECK(reds < total / 2);
}

TEST_CASE("build_star_tree splices exactly-two-red non-tree pairs") {
  auto g = planted(4);  // paths P0..P3, children C1..C3
  auto b = build_lsct(g);
  auto paths = small_s_node_paths(b.tree, 2);
  REQUIRE(paths.size() == 4);

  // all blue: star tree equals the base tree
  StarTree st0 = build_star_tree(g, b.tree, paths, {false, false, false, false});
  CHECK(st0.nodes.size() == b.tree.nodes.size());

  // P1, P3 red: non-tree cycle P1 u P3 spliced, adopting slices 2..3
  StarTree st1 = build_star_tree(g, b.tree, paths, {false, true, false, true});
  REQUIRE(st1.nodes.size() == b.tree.nodes.size() + 1);
  const StarNode& spliced = st1.nodes.back();
  CHECK(spliced.inserted);
  CHECK(spliced.parent == b.tree.root);
  CHECK(spliced.children.size() == 2);

  // three reds at the node: no splice
  StarTree st3 = build_star_tree(g, b.tree, paths, {false, true, true, true});
  CHECK(st3.nodes.size() == b.tree.nodes.size());

  // consecutive pair (a child) or the outer pair (the node itself): no splice
  StarTree st4 = build_star_tree(g, b.tree, paths, {true, true, false, false});
  CHECK(st4.nodes.size() == b.tree.nodes.size());
  StarTree st5 = build_star_tree(g, b.tree, paths, {true, false, false, true});
  CHECK(st5.nodes.size() == b.tree.nodes.size());
}

TEST_CASE("solve_scp_planar: trivial cases") {
  SeparationConfig cfg;
  cfg.exhaustive_mode = true;
  auto yes = solve_scp_planar(fx::two_triangles(), 2, cfg);
  CHECK(yes.yes);
  CHECK(yes.exact);
  REQUIRE(yes.witness);
  CHECK(yes.witness->cycles.size() == 2);

  auto no = solve_scp_planar(fx::theta(), 2, cfg);
  CHECK(!no.yes);
  CHECK(solve_scp_planar(fx::theta(), 1, cfg).yes);
  CHECK(!solve_scp_planar(fx::path_graph(4), 1, cfg).yes);
}

TEST_CASE("solve_scp_planar matches the oracle on fixture family") {
  SeparationConfig cfg;
  cfg.exhaustive_mode = true;
  std::vector<WeightedGraph> gs = {fx::theta(),     fx::grid(3, 3),
                                   fx::grid(3, 4),  fx::grid(4, 4),
                                   fx::cube_q3(),   planted(4),
                                   planted(5),      fx::two_triangles()};
  for (const auto& g : gs) {
    for (int k = 1; k <= 4; ++k) {
      auto res = solve_scp_planar(g, k, cfg);
      auto opt = oracle::best_packing(g, scp_query(k));
      CHECK(res.yes == opt.has_value());
      if (res.yes) {
        auto gw = girth(g);
        for (const auto& c : res.witness->cycles) CHECK(c.weight == *gw);
      }
    }
  }
}

TEST_CASE("planted non-tree solutions are found in exhaustive mode") {
  // nested parallel paths p=5: the only vertex-disjoint pair of shortest
  // cycles needs... in fact all shortest cycles share the poles, so k=2 is
  // impossible; verify against oracle instead of assuming
  auto g = planted(5);
  SeparationConfig cfg;
  cfg.exhaustive_mode = true;
  auto res = solve_scp_planar(g, 2, cfg);
  auto opt = oracle::best_packing(g, scp_query(2));
  CHECK(res.yes == opt.has_value());

  // a planted instance whose unique solution uses a non-tree cycle:
  // S-node family P0..P3 between poles; a separate facial triangle hangs
  // inside slice C1 (between P0 and P1), vertex-disjoint from P2 u P3...
  // Build: poles 0,1; paths via 2,3,4,5; triangle 6,7,8 inside the P2/P3
  // slice is impossible without touching; instead plant the triangle far
  // from the S-node as a second component and force k=2 to pair the
  // triangle with a non-tree cycle? Any slice cycle also works then. The
  // genuinely forcing construction places a pendant shortest cycle inside
  // one slice sharing vertices with both bounding paths.
  WeightedGraph h(9);
  // poles 0,1; interior paths through 2, 3, 4 (unit 2-paths)
  h.add_edge(0, 2, 1);
  h.add_edge(2, 1, 1);
  h.add_edge(0, 3, 1);
  h.add_edge(3, 1, 1);
  h.add_edge(0, 4, 1);
  h.add_edge(4, 1, 1);
  // triangle of weight 4 pinned to vertex 3 (the middle path's interior):
  // 3-5-6-3 with weights 2,1,1 -> weight 4 = girth
  h.add_edge(3, 5, 2);
  h.add_edge(5, 6, 1);
  h.add_edge(6, 3, 1);
  auto gw = girth(h);
  REQUIRE(gw == Rat(4));
  // solutions of size 2: the pinned triangle (uses vertex 3) plus a cycle
  // avoiding 3: P0 u P2 = 0-2-1-4 is a NON-TREE pair (paths 2 and 4 are
  // non-consecutive when ordered 2,3,4) or a tree cycle if adjacent; the
  // oracle confirms feasibility and the solver must agree.
  SeparationConfig cfg2;
  cfg2.exhaustive_mode = true;
  auto res2 = solve_scp_planar(h, 2, cfg2);
  auto opt2 = oracle::best_packing(h, scp_query(2));
  REQUIRE(opt2);
  CHECK(res2.yes);
  REQUIRE(res2.witness);
  CHECK(packing_valid(h, *res2.witness));
}

TEST_CASE("randomized mode: no false positives, reproducible, bounded") {
  auto g = fx::grid(3, 4);
  SeparationConfig cfg;
  cfg.exhaustive_mode = false;
  cfg.rng_seed = 123;
  auto a = solve_scp_planar(g, 2, cfg);
  auto b = solve_scp_planar(g, 2, cfg);
  CHECK(a.yes == b.yes);
  auto opt = oracle::best_packing(g, scp_query(2));
  if (a.yes) CHECK(opt.has_value());

  // planted fixture across seeds: yes-instances answered yes often enough
  WeightedGraph h = planted(4);
  auto opt2 = oracle::best_packing(h, scp_query(1));
  REQUIRE(opt2);
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SeparationConfig c2;
    c2.exhaustive_mode = false;
    c2.rng_seed = seed;
    auto r = solve_scp_planar(h, 1, c2);
    hits += r.yes;
  }
  CHECK(hits >= 18);  // observed false-negative rate well under 1/e
}

TEST_CASE("parallel trials match the serial verdict") {
  auto g = planted(4);
  SeparationConfig cfg;
  cfg.exhaustive_mode = false;
  cfg.rng_seed = 7;
  cfg.max_trials = 500;
  auto serial = solve_scp_planar(g, 2, cfg, 1);
  auto parallel = solve_scp_planar(g, 2, cfg, 4);
  CHECK(serial.yes == parallel.yes);
  if (serial.yes && parallel.yes) {
    CHECK(serial.witness->total_weight == parallel.witness->total_weight);
  }
}

TEST_CASE("recursion depth and structure on a two-level fixture") {
  // ring of squares: 3x4 grid has enough structure for k=3
  auto g = fx::grid(4, 4);
  SeparationConfig cfg;
  cfg.exhaustive_mode = true;
  for (int k = 1; k <= 4; ++k) {
    auto res = solve_scp_planar(g, k, cfg);
    auto opt = oracle::best_packing(g, scp_query(k));
    CHECK(res.yes == opt.has_value());
  }
}
