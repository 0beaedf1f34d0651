#include <set>

#include "cyclepack/graph.hpp"
#include "cyclepack/oracle.hpp"
#include "cyclepack/shortest.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace cyclepack;

TEST_CASE("rational arithmetic is exact") {
  Rat a(1, 3), b(1, 6);
  CHECK(a + b == Rat(1, 2));
  CHECK(a - b == Rat(1, 6));
  CHECK(a * b == Rat(1, 18));
  CHECK(a / b == Rat(2));
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(-1, -2) == Rat(1, 2));
  CHECK(Rat(1, 2) < Rat(2, 3));
  CHECK(Rat(7).str() == "7/1");
  CHECK_THROWS(Rat(1, 0));
}

TEST_CASE("girth: unit triangle is 3, forest is infinite, theta is 4") {
  CHECK(girth(fx::unit_triangle()) == Rat(3));
  CHECK(!girth(fx::path_graph(4)).has_value());
  CHECK(girth(fx::theta()) == Rat(4));
}

TEST_CASE("girth matches brute force on K4 and grids") {
  CHECK(girth(fx::k4()) == oracle::brute_girth(fx::k4()));
  CHECK(girth(fx::grid(3, 3)) == Rat(4));
  WeightedGraph g(4);
  g.add_edge(0, 1, Rat(1, 2));
  g.add_edge(1, 2, Rat(1, 3));
  g.add_edge(2, 0, Rat(1, 5));
  g.add_edge(2, 3, Rat(10));
  CHECK(girth(g) == Rat(1, 2) + Rat(1, 3) + Rat(1, 5));
}

TEST_CASE("shortest_cycle_through_edge") {
  auto tri = fx::unit_triangle();
  for (EdgeId e = 0; e < 3; ++e) {
    auto c = shortest_cycle_through_edge(tri, e);
    REQUIRE(c);
    CHECK(c->weight == Rat(3));
  }
  auto p = fx::path_graph(3);
  CHECK(!shortest_cycle_through_edge(p, 0));  // bridge
  auto k4 = fx::k4();
  for (EdgeId e = 0; e < k4.edge_count(); ++e) {
    auto c = shortest_cycle_through_edge(k4, e);
    REQUIRE(c);
    CHECK(c->weight == Rat(3));
    CHECK(c->contains_edge(e));
  }
  CHECK_THROWS(shortest_cycle_through_edge(tri, 99));
}

TEST_CASE("clean keeps exactly shortest-cycle support") {
  // triangle with a pendant vertex
  WeightedGraph g(4);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 2, 1);
  g.add_edge(2, 0, 1);
  g.add_edge(2, 3, 1);
  auto r = clean(g);
  CHECK(r.graph.vertex_count() == 3);
  CHECK(r.graph.edge_count() == 3);

  CHECK(clean(fx::path_graph(5)).graph.vertex_count() == 0);

  // two unit triangles joined by a bridge
  WeightedGraph h(6);
  h.add_edge(0, 1, 1);
  h.add_edge(1, 2, 1);
  h.add_edge(2, 0, 1);
  h.add_edge(3, 4, 1);
  h.add_edge(4, 5, 1);
  h.add_edge(5, 3, 1);
  h.add_edge(2, 3, 1);
  auto rc = clean(h);
  CHECK(rc.graph.vertex_count() == 6);
  CHECK(rc.graph.edge_count() == 6);
  CHECK(girth(rc.graph) == girth(h));
}

TEST_CASE("clean is idempotent and per-edge shortest cycles hit girth") {
  for (const auto& g : {fx::theta(), fx::k4(), fx::grid(3, 4)}) {
    auto c1 = clean(g);
    auto c2 = clean(c1.graph);
    CHECK(c1.graph.vertex_count() == c2.graph.vertex_count());
    CHECK(c1.graph.edge_count() == c2.graph.edge_count());
    auto gw = girth(c1.graph);
    REQUIRE(gw);
    for (EdgeId e = 0; e < c1.graph.edge_count(); ++e) {
      auto c = shortest_cycle_through_edge(c1.graph, e);
      REQUIRE(c);
      CHECK(c->weight == *gw);
    }
  }
}

TEST_CASE("all_shortest_cycles on named fixtures") {
  CHECK(all_shortest_cycles(fx::unit_triangle()).size() == 1);
  CHECK(all_shortest_cycles(fx::theta()).size() == 3);
  CHECK(all_shortest_cycles(fx::k4()).size() == 4);
  CHECK_THROWS(all_shortest_cycles(fx::path_graph(3)));
}

TEST_CASE("all_shortest_cycles matches exhaustive enumeration, n <= 10") {
  std::vector<WeightedGraph> gs = {fx::theta(), fx::k4(), fx::grid(2, 4),
                                   fx::grid(3, 3), fx::cube_q3(),
                                   fx::two_triangles()};
  // one weighted example with a tie
  WeightedGraph w(5);
  w.add_edge(0, 1, Rat(1, 2));
  w.add_edge(1, 2, Rat(1, 2));
  w.add_edge(2, 0, 1);
  w.add_edge(2, 3, 1);
  w.add_edge(3, 4, Rat(1, 2));
  w.add_edge(4, 2, Rat(1, 2));
  gs.push_back(w);
  for (const auto& g : gs) {
    auto gw = girth(g);
    REQUIRE(gw);
    auto fast = all_shortest_cycles(g);
    std::vector<Cycle> slow;
    for (auto& c : oracle::all_cycles_up_to(g, *gw))
      if (c.weight == *gw) slow.push_back(c);
    REQUIRE(fast.size() == slow.size());
    for (size_t i = 0; i < fast.size(); ++i) CHECK(fast[i] == slow[i]);
  }
}

TEST_CASE("multigraph girth: loops and parallel pairs") {
  WeightedGraph g(3, /*multi=*/true);
  g.add_edge(0, 1, 2);
  g.add_edge(0, 1, 3);
  g.add_edge(1, 2, 1);
  g.add_edge(2, 2, 4);  // loop
  CHECK(girth(g) == Rat(4));  // loop 4 vs parallel pair 5
  auto cs = all_shortest_cycles(g);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].vertices == std::vector<Vertex>{2});
}

TEST_CASE("canonical cycle form: min vertex first, smaller second") {
  auto g = fx::unit_cycle(5);
  auto c1 = make_cycle(g, {3, 4, 0, 1, 2});
  auto c2 = make_cycle(g, {2, 1, 0, 4, 3});
  CHECK(c1.vertices == std::vector<Vertex>{0, 1, 2, 3, 4});
  CHECK(c1 == c2);
  CHECK(c1.vertices == c2.vertices);
}

TEST_CASE("packing validity checker") {
  auto g = fx::two_triangles();
  auto c1 = make_cycle(g, {0, 1, 2});
  auto c2 = make_cycle(g, {3, 4, 5});
  auto p = make_packing({c1, c2}, DisjointMode::Vertex);
  CHECK(packing_valid(g, p));
  auto bad = make_packing({c1, c1}, DisjointMode::Vertex);
  CHECK(!packing_valid(g, bad));
}
