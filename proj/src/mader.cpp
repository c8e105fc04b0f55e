#include "backbone/mader.hpp"

#include <algorithm>

#include "backbone/bipartize.hpp"
#include "backbone/connectivity.hpp"
#include "backbone/error.hpp"
#include "backbone/rational.hpp"

namespace backbone {

namespace {

// The classical edge-bound descent keeps m > (2l-3)(n'-l+1) on the current
// candidate; average degree >= 4l implies it at entry, low-degree deletion
// preserves it, and when a small cut splits the candidate at least one part
// inherits it.
bool edge_bound_holds(const Graph& h, int ell) {
  long long np = h.vertex_count();
  return h.edge_count() > static_cast<long long>(2 * ell - 3) * (np - ell + 1);
}

Vertex lowest_min_degree_vertex(const Graph& h) {
  Vertex best = h.vertices().front();
  for (Vertex v : h.vertices())
    if (h.degree(v) < h.degree(best)) best = v;
  return best;
}

std::vector<Vertex> without(const std::vector<Vertex>& verts, Vertex gone) {
  std::vector<Vertex> out;
  out.reserve(verts.size() - 1);
  for (Vertex v : verts)
    if (v != gone) out.push_back(v);
  return out;
}

std::vector<Vertex> set_union_sorted(const std::vector<Vertex>& a,
                                     const std::vector<Vertex>& b) {
  std::vector<Vertex> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

std::vector<Vertex> set_difference_sorted(const std::vector<Vertex>& a,
                                          const std::vector<Vertex>& b) {
  std::vector<Vertex> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

}  // namespace

DenseWitness dense_k_connected_subgraph(const Graph& g, int ell) {
  require(ell >= 1, "connectivity level must be positive");
  require(g.vertex_count() >= 1, "empty graph");
  require(average_degree(g) >= Rational(4 * ell),
          "average degree below four times the requested level");

  DenseWitness out;

  if (ell == 1) {
    // Any component containing an edge is 1-connected; the largest works
    // (average degree >= 4 guarantees edges exist).
    auto comps = components(g);
    const std::vector<Vertex>* pick = &comps.front();
    for (const auto& c : comps)
      if (c.size() > pick->size()) pick = &c;
    ensure(g.induced(*pick).edge_count() > 0, "largest component edgeless");
    out.subgraph_vertices = *pick;
    out.descent_sizes = {static_cast<int>(pick->size())};
    KConnReport rep = is_k_connected(g.induced(*pick), 1);
    ensure(rep.ok, "component not connected");
    out.verified_kappa = 1;
    return out;
  }

  std::vector<Vertex> w = g.vertices();
  out.descent_sizes.push_back(static_cast<int>(w.size()));

  while (true) {
    Graph h = g.induced(w);
    ensure(edge_bound_holds(h, ell), "edge bound lost during descent");
    ensure(h.vertex_count() >= 2 * ell - 1, "candidate shrank below base size");

    if (h.min_degree() <= 2 * ell - 3) {
      Vertex v = lowest_min_degree_vertex(h);
      w = without(w, v);
      out.descent_sizes.push_back(static_cast<int>(w.size()));
      continue;
    }

    KConnReport rep = is_k_connected(h, ell);
    if (rep.ok) {
      out.subgraph_vertices = w;
      out.verified_kappa = ell;
      return out;
    }
    ensure(rep.witness.has_value(), "failed check carries no cut");
    const auto& cut = rep.witness->cut;
    ensure(static_cast<int>(cut.size()) < ell, "cut not smaller than level");
    std::vector<Vertex> part1 = set_union_sorted(rep.witness->side_small, cut);
    std::vector<Vertex> part2 = set_difference_sorted(w, rep.witness->side_small);
    bool ok1 = edge_bound_holds(g.induced(part1), ell);
    bool ok2 = edge_bound_holds(g.induced(part2), ell);
    ensure(ok1 || ok2, "no part keeps the edge bound");
    if (ok1 && ok2 && part1.size() == part2.size()) {
      w = std::min(part1, part2);
    } else if (ok1 && (!ok2 || part1.size() < part2.size())) {
      w = std::move(part1);
    } else {
      w = std::move(part2);
    }
    ensure(static_cast<int>(w.size()) < out.descent_sizes.back(),
           "descent failed to shrink");
    out.descent_sizes.push_back(static_cast<int>(w.size()));
  }
}

BipartiteDenseWitness bipartite_dense_k_connected_subgraph(const Graph& g,
                                                           int ell,
                                                           std::uint64_t seed) {
  require(ell >= 1, "connectivity level must be positive");
  require(g.vertex_count() >= 1, "empty graph");
  require(average_degree(g) >= Rational(8 * ell),
          "average degree below eight times the requested level");

  HalvedDegree halved = halved_degree_subgraph(g, seed);
  ensure(average_degree(halved.subgraph) >= Rational(4 * ell),
         "crossing subgraph lost too many edges");

  BipartiteDenseWitness out;
  out.witness = dense_k_connected_subgraph(halved.subgraph, ell);
  for (Vertex v : out.witness.subgraph_vertices) {
    if (halved.partition.in_side_a(v)) out.partition.side_a.push_back(v);
    else out.partition.side_b.push_back(v);
  }
  return out;
}

}  // namespace backbone
