#include <doctest.h>

#include <vector>

#include "backbone/error.hpp"
#include "backbone/graph.hpp"
#include "backbone/merge.hpp"
#include "backbone/oracle.hpp"

using namespace backbone;

namespace {

Graph triangle(int ambient, int base) {
  std::vector<Edge> es = {make_edge(base, base + 1), make_edge(base, base + 2),
                          make_edge(base + 1, base + 2)};
  return Graph(ambient, std::vector<Vertex>{base, base + 1, base + 2}, es);
}

Graph complete_on(int ambient, std::vector<Vertex> verts) {
  std::vector<Edge> es;
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      es.push_back(make_edge(verts[i], verts[j]));
  return Graph(ambient, std::move(verts), es);
}

// Three triangles joined in a ring by one bridge per pair.
Graph triangle_ring() {
  std::vector<Edge> es;
  for (int b : {0, 3, 6}) {
    es.push_back(make_edge(b, b + 1));
    es.push_back(make_edge(b, b + 2));
    es.push_back(make_edge(b + 1, b + 2));
  }
  es.push_back(make_edge(0, 3));
  es.push_back(make_edge(1, 6));
  es.push_back(make_edge(4, 7));
  return Graph(9, es);
}

Graph pattern_triangle() {
  std::vector<Edge> es = {make_edge(0, 1), make_edge(0, 2), make_edge(1, 2)};
  return Graph(3, es);
}

}  // namespace

TEST_CASE("piece tuples validate their building blocks") {
  std::vector<Graph> pieces = {triangle(9, 0), triangle(9, 3)};
  PieceTuple x(pieces, {7, 8}, 2);
  CHECK(x.element_count() == 4);
  CHECK(x.element_vertices(0) == std::vector<Vertex>{0, 1, 2});
  CHECK(x.element_vertices(3) == std::vector<Vertex>{8});
  CHECK(x.element_of(4) == 1);
  CHECK(x.element_of(7) == 2);
  CHECK(x.element_of(6) == -1);

  // Tuples of singletons alone are legitimate.
  PieceTuple singles({}, {2, 5, 9}, 3);
  CHECK(singles.element_count() == 3);
  CHECK(singles.element_vertices(1) == std::vector<Vertex>{5});

  // Overlapping elements are rejected.
  CHECK_THROWS_AS(PieceTuple(pieces, {2}, 2), precondition_error);
  std::vector<Graph> overlapping = {triangle(9, 0), triangle(9, 2)};
  CHECK_THROWS_AS(PieceTuple(overlapping, {}, 2), precondition_error);

  // A triangle is not 3-connected.
  CHECK_THROWS_AS(PieceTuple({triangle(3, 0)}, {}, 3), precondition_error);
}

TEST_CASE("pattern graphs must carry the connectivity they promise") {
  PatternGraph r(pattern_triangle(), 2);
  CHECK(r.k() == 2);
  CHECK(r.graph().vertex_count() == 3);

  std::vector<Edge> path = {make_edge(0, 1), make_edge(1, 2)};
  CHECK_NOTHROW(PatternGraph(Graph(3, path), 1));
  CHECK_THROWS_AS(PatternGraph(Graph(3, path), 2), precondition_error);
  // Two elements can never form a 2-connected pattern.
  std::vector<Edge> single = {make_edge(0, 1)};
  CHECK_THROWS_AS(PatternGraph(Graph(2, single), 2), precondition_error);
}

TEST_CASE("joining two blocks across independent bridges") {
  Graph t1 = triangle(6, 0), t2 = triangle(6, 3);
  Matching bridge{{make_edge(0, 3), make_edge(1, 4)}};
  Graph joined = join_two(t1, t2, bridge, 2);
  CHECK(joined.vertex_count() == 6);
  CHECK(joined.edge_count() == 8);
  CHECK(brute_kappa(joined) == 2);

  Graph k4a = complete_on(8, {0, 1, 2, 3});
  Graph k4b = complete_on(8, {4, 5, 6, 7});
  Matching three{{make_edge(0, 4), make_edge(1, 5), make_edge(2, 6)}};
  Graph j3 = join_two(k4a, k4b, three, 3);
  CHECK(brute_kappa(j3) == 3);

  // Bridges sharing an endpoint are not independent.
  Matching shared{{make_edge(0, 3), make_edge(0, 4)}};
  CHECK_THROWS_AS(join_two(t1, t2, shared, 2), precondition_error);
  // Too few bridges.
  Matching lone{{make_edge(0, 3)}};
  CHECK_THROWS_AS(join_two(t1, t2, lone, 2), precondition_error);
  // A bridge must cross.
  Matching inside{{make_edge(0, 1), make_edge(2, 3)}};
  CHECK_THROWS_AS(join_two(t1, t2, inside, 2), precondition_error);
}

TEST_CASE("family membership holds on the triangle ring") {
  Graph g = triangle_ring();
  CHECK(brute_kappa(g) == 2);
  std::vector<Graph> pieces = {triangle(9, 0), triangle(9, 3), triangle(9, 6)};
  PieceTuple x(pieces, {}, 2);
  PatternGraph r(pattern_triangle(), 2);

  auto rep = check_family_membership(g, x, r, 2);
  CHECK(rep.all_clear());
  CHECK(rep.piece_edges_present);
  CHECK(rep.missing_pattern_edges.empty());
  CHECK(rep.escape_deficits.empty());
}

TEST_CASE("family membership pinpoints each failure mode") {
  std::vector<Graph> pieces = {triangle(9, 0), triangle(9, 3), triangle(9, 6)};
  PieceTuple x(pieces, {}, 2);
  PatternGraph r(pattern_triangle(), 2);

  // Remove a piece edge from the host.
  std::vector<Edge> missing_piece_edge;
  for (const Edge& e : triangle_ring().edges())
    if (!(e == make_edge(4, 5))) missing_piece_edge.push_back(e);
  auto rep1 = check_family_membership(Graph(9, missing_piece_edge), x, r, 2);
  CHECK_FALSE(rep1.piece_edges_present);
  CHECK(rep1.missing_pattern_edges.empty());

  // Remove the bridge between pieces 1 and 2: the pattern edge goes
  // unrealized and both pieces drop to one escape.
  std::vector<Edge> missing_bridge;
  for (const Edge& e : triangle_ring().edges())
    if (!(e == make_edge(4, 7))) missing_bridge.push_back(e);
  auto rep2 = check_family_membership(Graph(9, missing_bridge), x, r, 2);
  CHECK(rep2.piece_edges_present);
  REQUIRE(rep2.missing_pattern_edges.size() == 1);
  CHECK(rep2.missing_pattern_edges[0] == make_edge(1, 2));
  REQUIRE(rep2.escape_deficits.size() == 2);
  CHECK(rep2.escape_deficits[0] == std::pair<int, int>{1, 1});
  CHECK(rep2.escape_deficits[1] == std::pair<int, int>{2, 1});
}

TEST_CASE("membership with a graph piece and singletons") {
  // Triangle piece plus singletons 3 and 4, all pairwise linked.
  std::vector<Edge> es = {make_edge(0, 1), make_edge(0, 2), make_edge(1, 2),
                          make_edge(0, 3), make_edge(1, 4), make_edge(3, 4)};
  Graph g(5, es);
  CHECK(brute_kappa(g) == 2);
  PieceTuple x({triangle(5, 0)}, {3, 4}, 2);
  PatternGraph r(pattern_triangle(), 2);
  auto rep = check_family_membership(g, x, r, 2);
  CHECK(rep.all_clear());
}

TEST_CASE("escapes demand distinct vertices and distinct targets") {
  // Both escape edges of the piece leave from vertex 0: only one counts.
  std::vector<Edge> es = {make_edge(0, 1), make_edge(0, 2), make_edge(1, 2),
                          make_edge(0, 3), make_edge(0, 4), make_edge(3, 4)};
  Graph g(5, es);
  PieceTuple x({triangle(5, 0)}, {3, 4}, 2);
  PatternGraph r(pattern_triangle(), 2);
  auto rep = check_family_membership(g, x, r, 2);
  REQUIRE(rep.escape_deficits.size() == 1);
  CHECK(rep.escape_deficits[0] == std::pair<int, int>{0, 1});
}

TEST_CASE("assembly picks working edges and re-verifies") {
  std::vector<Graph> pieces = {triangle(9, 0), triangle(9, 3), triangle(9, 6)};
  PieceTuple x(pieces, {}, 2);
  PatternGraph r(pattern_triangle(), 2);
  std::vector<Edge> pool = {make_edge(0, 3), make_edge(1, 6), make_edge(4, 7),
                            make_edge(2, 5), make_edge(5, 8)};
  Graph merged = merge_components(x, r, pool, 2);
  CHECK(merged.vertex_count() == 9);
  CHECK(brute_kappa(merged) >= 2);
  auto rep = check_family_membership(merged, x, r, 2);
  CHECK(rep.all_clear());
  // Only pool and piece edges may appear.
  for (const Edge& e : merged.edges()) {
    bool in_pool = false;
    for (const Edge& p : pool) in_pool = in_pool || p == e;
    bool in_piece = false;
    for (const Graph& piece : pieces)
      in_piece = in_piece || piece.has_edge(e.u, e.v);
    CHECK((in_pool || in_piece));
  }

  // A pool missing any pattern-edge realization is rejected.
  std::vector<Edge> thin_pool = {make_edge(0, 3), make_edge(1, 6)};
  CHECK_THROWS_AS(merge_components(x, r, thin_pool, 2), precondition_error);

  // Edges inside one element are rejected outright.
  std::vector<Edge> bad_pool = {make_edge(0, 1)};
  CHECK_THROWS_AS(merge_components(x, r, bad_pool, 2), precondition_error);
}

TEST_CASE("assembly of singleton rings") {
  PieceTuple x({}, {0, 1, 2}, 1);
  std::vector<Edge> pes = {make_edge(0, 1), make_edge(1, 2)};
  PatternGraph r(Graph(3, pes), 1);
  std::vector<Edge> pool = {make_edge(0, 1), make_edge(1, 2), make_edge(0, 2)};
  Graph merged = merge_components(x, r, pool, 1);
  CHECK(merged.vertex_count() == 3);
  CHECK(brute_kappa(merged) >= 1);
}
