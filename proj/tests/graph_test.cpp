#include <doctest.h>

#include <sstream>
#include <vector>

#include "backbone/error.hpp"
#include "backbone/graph.hpp"
#include "backbone/io.hpp"
#include "backbone/rational.hpp"
#include "backbone/rng.hpp"

using namespace backbone;

TEST_CASE("edges normalize and order") {
  CHECK(make_edge(3, 1) == Edge{1, 3});
  CHECK(make_edge(1, 3) == Edge{1, 3});
  CHECK_THROWS_AS(make_edge(2, 2), precondition_error);
  CHECK(Edge{0, 1} < Edge{0, 2});
  CHECK(Edge{0, 5} < Edge{1, 2});
}

TEST_CASE("graph basics on a small path") {
  std::vector<Edge> es = {make_edge(0, 1), make_edge(1, 2), make_edge(2, 3)};
  Graph g(4, es);
  CHECK(g.ambient_size() == 4);
  CHECK(g.vertex_count() == 4);
  CHECK(g.edge_count() == 3);
  CHECK(g.degree(1) == 2);
  CHECK(g.degree(0) == 1);
  CHECK(g.has_edge(2, 1));
  CHECK_FALSE(g.has_edge(0, 3));
  CHECK(g.min_degree() == 1);
  CHECK_FALSE(g.is_complete());
  CHECK(g.edges() == es);

  auto nb = g.neighbors(2);
  CHECK(std::vector<Vertex>(nb.begin(), nb.end()) == std::vector<Vertex>{1, 3});
}

TEST_CASE("duplicate edges collapse") {
  std::vector<Edge> es = {make_edge(0, 1), make_edge(1, 0), make_edge(0, 1)};
  Graph g(2, es);
  CHECK(g.edge_count() == 1);
  CHECK(g.degree(0) == 1);
}

TEST_CASE("induced subgraphs keep ambient ids") {
  std::vector<Edge> es = {make_edge(0, 1), make_edge(1, 2), make_edge(2, 3),
                          make_edge(3, 0)};
  Graph g(4, es);
  std::vector<Vertex> keep = {1, 2, 3};
  Graph h = g.induced(keep);
  CHECK(h.ambient_size() == 4);
  CHECK(h.vertex_count() == 3);
  CHECK(h.has_vertex(3));
  CHECK_FALSE(h.has_vertex(0));
  CHECK(h.has_edge(1, 2));
  CHECK(h.has_edge(2, 3));
  CHECK_FALSE(h.has_edge(3, 0));
  CHECK(h.edge_count() == 2);
  // Inducing on absent vertices is a caller bug.
  std::vector<Vertex> bad = {0, 1};
  CHECK_THROWS_AS(h.induced(bad), precondition_error);
}

TEST_CASE("with_edges adds without relabeling") {
  Graph g(4, std::vector<Edge>{make_edge(0, 1)});
  std::vector<Edge> extra = {make_edge(2, 3), make_edge(0, 1)};
  Graph h = g.with_edges(extra);
  CHECK(h.edge_count() == 2);
  CHECK(h.has_edge(2, 3));
  CHECK(g.edge_count() == 1);  // original untouched
}

TEST_CASE("complete graph recognition") {
  std::vector<Edge> es;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) es.push_back(make_edge(i, j));
  Graph k4(4, es);
  CHECK(k4.is_complete());
  CHECK(k4.min_degree() == 3);
  Graph one(1);
  CHECK(one.is_complete());
}

TEST_CASE("components come sorted by smallest member") {
  std::vector<Edge> es = {make_edge(4, 5), make_edge(0, 2)};
  Graph g(6, es);
  auto comps = components(g);
  REQUIRE(comps.size() == 4);
  CHECK(comps[0] == std::vector<Vertex>{0, 2});
  CHECK(comps[1] == std::vector<Vertex>{1});
  CHECK(comps[2] == std::vector<Vertex>{3});
  CHECK(comps[3] == std::vector<Vertex>{4, 5});
}

TEST_CASE("two_coloring finds proper sides or reports odd cycles") {
  std::vector<Edge> c4 = {make_edge(0, 1), make_edge(1, 2), make_edge(2, 3),
                          make_edge(3, 0)};
  Bipartition p;
  REQUIRE(two_coloring(Graph(4, c4), p));
  CHECK(p.side_a == std::vector<Vertex>{0, 2});
  CHECK(p.side_b == std::vector<Vertex>{1, 3});
  CHECK(p.in_side_a(0));
  CHECK(p.in_side_b(3));

  std::vector<Edge> c5 = {make_edge(0, 1), make_edge(1, 2), make_edge(2, 3),
                          make_edge(3, 4), make_edge(4, 0)};
  CHECK_FALSE(two_coloring(Graph(5, c5), p));
}

TEST_CASE("cross_subgraph keeps exactly the crossing edges") {
  std::vector<Edge> es = {make_edge(0, 1), make_edge(0, 2), make_edge(1, 2),
                          make_edge(2, 3)};
  Graph g(4, es);
  Bipartition p{{0, 3}, {1, 2}};
  Graph cr = cross_subgraph(g, p);
  CHECK(cr.vertex_count() == 4);
  CHECK(cr.edges() == std::vector<Edge>{make_edge(0, 1), make_edge(0, 2),
                                        make_edge(2, 3)});
  Bipartition bad{{0}, {1, 2}};  // vertex 3 unassigned
  CHECK_THROWS_AS(cross_subgraph(g, bad), precondition_error);
}

TEST_CASE("digraph round trips through its underlying graph") {
  std::vector<Edge> es = {make_edge(0, 1), make_edge(1, 2)};
  Graph g(3, es);
  Digraph d = symmetric_digraph(g);
  CHECK(d.arc_count() == 4);
  CHECK(d.has_arc(1, 0));
  CHECK(d.has_arc(0, 1));
  CHECK(underlying_graph(d) == g);
  CHECK(d.min_out_degree() == 1);

  std::vector<Vertex> keep = {1, 2};
  Digraph h = d.induced(keep);
  CHECK(h.arc_count() == 2);
  CHECK_FALSE(h.has_vertex(0));
}

TEST_CASE("average degree is exact") {
  std::vector<Edge> es = {make_edge(0, 1), make_edge(1, 2), make_edge(2, 3)};
  Graph g(4, es);
  CHECK(average_degree(g) == Rational(3, 2));
}

TEST_CASE("rational arithmetic normalizes") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -2) == Rational(-1, 2));
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(3, 4) * Rational(2, 3) == Rational(1, 2));
  CHECK(Rational(1, 2) < Rational(2, 3));
  CHECK(Rational(7, 2).ceil() == 4);
  CHECK(Rational(-7, 2).ceil() == -3);
  CHECK(Rational(4, 2).ceil() == 2);
  CHECK(Rational(5, 3).str() == "5/3");
  CHECK(Rational(6, 3).str() == "2");
  CHECK_THROWS_AS(Rational(1, 0), precondition_error);
}

TEST_CASE("rng streams are independent and reproducible") {
  Rng a(42), b(42);
  CHECK(a.next() == b.next());
  CHECK(a.stream("x").next() == b.stream("x").next());
  CHECK(Rng(42).stream("x").next() != Rng(42).stream("y").next());
  // Stream derivation ignores draw position.
  Rng c(42);
  c.next();
  c.next();
  CHECK(c.stream("x").next() == Rng(42).stream("x").next());
  // Bounds hold.
  Rng d(7);
  for (int i = 0; i < 200; ++i) {
    auto v = d.below(13);
    CHECK(v < 13);
    int u = d.uniform_int(-3, 5);
    CHECK(u >= -3);
    CHECK(u <= 5);
  }
}

TEST_CASE("ceil_log2 small values") {
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(3) == 2);
  CHECK(ceil_log2(4) == 2);
  CHECK(ceil_log2(5) == 3);
  CHECK(ceil_log2(1024) == 10);
  CHECK(ceil_log2(1025) == 11);
}

TEST_CASE("graph files round trip") {
  std::vector<Edge> es = {make_edge(0, 3), make_edge(1, 2)};
  Graph g(4, es);
  std::istringstream in(format_graph(g));
  Graph h = parse_graph(in);
  CHECK(h == g);
}

TEST_CASE("graph parser accepts comments and blank lines") {
  std::istringstream in(
      "# a toy instance\n"
      "n 3\n"
      "\n"
      "0 1\n"
      "# middle note\n"
      "1 2\n");
  Graph g = parse_graph(in);
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 2);
}

TEST_CASE("graph parser rejects malformed input with line numbers") {
  auto expect_line = [](const char* text, int line) {
    std::istringstream in(text);
    try {
      parse_graph(in);
      FAIL("expected a parse error");
    } catch (const parse_error& e) {
      CHECK(e.line == line);
    }
  };
  expect_line("m 3\n0 1\n", 1);           // bad header
  expect_line("n 2\n0 2\n", 2);           // endpoint out of range
  expect_line("n 3\n0 1\n0 1\n", 3);      // duplicate edge
  expect_line("n 3\n1 1\n", 2);           // self loop
  expect_line("n 3\n0 1 2\n", 2);         // trailing tokens
}

TEST_CASE("digraph files round trip") {
  std::vector<Arc> as = {{0, 1}, {1, 0}, {2, 0}};
  Digraph d(3, as);
  std::istringstream in(format_digraph(d));
  Digraph e = parse_digraph(in);
  CHECK(e == d);
  CHECK(e.arcs() == d.arcs());
}
