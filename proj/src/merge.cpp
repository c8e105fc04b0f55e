#include "backbone/merge.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "backbone/error.hpp"

namespace backbone {

namespace {

int max_ambient(const std::vector<Graph>& graphs,
                const std::vector<Vertex>& singletons) {
  int ambient = 0;
  for (const Graph& g : graphs) ambient = std::max(ambient, g.ambient_size());
  for (Vertex v : singletons) ambient = std::max(ambient, v + 1);
  return ambient;
}

// Maximum number of pairwise-independent host edges from distinct vertices
// of one element to distinct other elements: a matching between the
// element's vertices and the other element indices.
int escape_count(const Graph& g, const PieceTuple& x, int piece,
                 std::vector<Edge>* realizing) {
  std::vector<Vertex> inside = x.element_vertices(piece);
  int nv = static_cast<int>(inside.size());
  int ne = x.element_count();

  // Compact bipartite graph: 0..nv-1 are the piece's vertices, nv..nv+ne-1
  // are target element slots (the piece's own slot stays isolated).
  std::vector<Edge> aux_edges;
  std::vector<std::vector<Vertex>> backing(static_cast<std::size_t>(nv) * ne);
  for (int i = 0; i < nv; ++i) {
    if (!g.has_vertex(inside[i])) continue;
    for (Vertex w : g.neighbors(inside[i])) {
      int j = x.element_of(w);
      if (j < 0 || j == piece) continue;
      auto& slot = backing[static_cast<std::size_t>(i) * ne + j];
      if (slot.empty()) aux_edges.push_back({i, nv + j});
      slot.push_back(w);  // sorted: neighbors come in ascending order
    }
  }
  Graph aux(nv + ne, aux_edges);
  Bipartition sides;
  for (int i = 0; i < nv; ++i) sides.side_a.push_back(i);
  for (int j = 0; j < ne; ++j) sides.side_b.push_back(nv + j);
  MatchingResult mr = max_bipartite_matching(aux, sides);

  if (realizing) {
    realizing->clear();
    for (const Edge& e : mr.matching.edges) {
      int i = e.u;        // aux edges always have u < nv <= v
      int j = e.v - nv;
      const auto& slot = backing[static_cast<std::size_t>(i) * ne + j];
      realizing->push_back(make_edge(inside[i], slot.front()));
    }
  }
  return static_cast<int>(mr.matching.edges.size());
}

}  // namespace

PieceTuple::PieceTuple(std::vector<Graph> graphs, std::vector<Vertex> singletons,
                       int k)
    : graphs_(std::move(graphs)), singletons_(std::move(singletons)), k_(k) {
  require(k_ >= 1, "connectivity level must be positive");
  owner_.assign(max_ambient(graphs_, singletons_), -1);
  int idx = 0;
  for (const Graph& g : graphs_) {
    require(g.vertex_count() >= 1, "empty graph piece");
    KConnReport rep = is_k_connected(g, k_);
    require(rep.ok, "piece " + std::to_string(idx) + " is not k-connected");
    for (Vertex v : g.vertices()) {
      require(owner_[v] < 0, "elements share vertex " + std::to_string(v));
      owner_[v] = idx;
    }
    ++idx;
  }
  for (Vertex v : singletons_) {
    require(v >= 0, "negative vertex id");
    require(owner_[v] < 0, "elements share vertex " + std::to_string(v));
    owner_[v] = idx++;
  }
}

std::vector<Vertex> PieceTuple::element_vertices(int i) const {
  require(i >= 0 && i < element_count(), "element index out of range");
  if (i < static_cast<int>(graphs_.size())) return graphs_[i].vertices();
  return {singletons_[i - graphs_.size()]};
}

int PieceTuple::element_of(Vertex v) const {
  if (v < 0 || v >= static_cast<int>(owner_.size())) return -1;
  return owner_[v];
}

PatternGraph::PatternGraph(Graph r, int k) : r_(std::move(r)), k_(k) {
  require(k_ >= 1, "connectivity level must be positive");
  require(is_k_connected(r_, k_).ok, "pattern graph is not k-connected");
}

Graph join_two(const Graph& g1, const Graph& g2, const Matching& bridge,
               int k) {
  require(k >= 1, "connectivity level must be positive");
  for (Vertex v : g1.vertices())
    require(!g2.has_vertex(v), "graphs share vertex " + std::to_string(v));
  require(is_k_connected(g1, k).ok, "first graph is not k-connected");
  require(is_k_connected(g2, k).ok, "second graph is not k-connected");
  require(static_cast<int>(bridge.edges.size()) >= k,
          "bridge needs at least k edges");
  std::set<Vertex> used;
  for (const Edge& e : bridge.edges) {
    bool u1 = g1.has_vertex(e.u), v1 = g1.has_vertex(e.v);
    bool u2 = g2.has_vertex(e.u), v2 = g2.has_vertex(e.v);
    require((u1 && v2) || (u2 && v1),
            "bridge edge must join one vertex of each graph");
    require(used.insert(e.u).second && used.insert(e.v).second,
            "bridge edges are not independent");
  }

  int ambient = std::max(g1.ambient_size(), g2.ambient_size());
  std::vector<Vertex> verts = g1.vertices();
  verts.insert(verts.end(), g2.vertices().begin(), g2.vertices().end());
  std::sort(verts.begin(), verts.end());
  std::vector<Edge> edges = g1.edges();
  for (const Edge& e : g2.edges()) edges.push_back(e);
  for (const Edge& e : bridge.edges) edges.push_back(e);
  Graph joined(ambient, std::move(verts), edges);
  ensure(is_k_connected(joined, k).ok, "joined graph lost k-connectivity");
  return joined;
}

FamilyMembershipReport check_family_membership(const Graph& g,
                                               const PieceTuple& x,
                                               const PatternGraph& r, int k) {
  require(k == x.k() && k == r.k(), "mismatched connectivity levels");
  require(r.graph().vertex_count() == x.element_count(),
          "pattern order differs from element count");
  // The elements must partition g's vertex set.
  long long owned = 0;
  for (Vertex v : g.vertices()) {
    require(x.element_of(v) >= 0, "vertex " + std::to_string(v) +
                                      " belongs to no element");
    ++owned;
  }
  long long total = 0;
  for (const Graph& piece : x.graphs()) total += piece.vertex_count();
  total += static_cast<long long>(x.singletons().size());
  require(owned == total, "elements cover vertices outside g");

  FamilyMembershipReport rep;
  rep.piece_edges_present = true;
  for (const Graph& piece : x.graphs())
    for (const Edge& e : piece.edges())
      if (!g.has_edge(e.u, e.v)) rep.piece_edges_present = false;

  for (const Edge& re : r.graph().edges()) {
    bool found = false;
    for (Vertex v : x.element_vertices(re.u)) {
      if (!g.has_vertex(v)) continue;
      for (Vertex w : g.neighbors(v))
        if (x.element_of(w) == re.v) {
          found = true;
          break;
        }
      if (found) break;
    }
    if (!found) rep.missing_pattern_edges.push_back(re);
  }

  for (int i = 0; i < static_cast<int>(x.graphs().size()); ++i) {
    int got = escape_count(g, x, i, nullptr);
    if (got < k) rep.escape_deficits.push_back({i, got});
  }
  return rep;
}

Graph merge_components(const PieceTuple& x, const PatternGraph& r,
                       std::span<const Edge> available_edges, int k) {
  require(k == x.k() && k == r.k(), "mismatched connectivity levels");
  require(r.graph().vertex_count() == x.element_count(),
          "pattern order differs from element count");

  std::vector<Edge> pool(available_edges.begin(), available_edges.end());
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  for (const Edge& e : pool) {
    int a = x.element_of(e.u), b = x.element_of(e.v);
    require(a >= 0 && b >= 0, "available edge endpoint outside the elements");
    require(a != b, "available edge inside one element");
  }

  // Base: disjoint union of the pieces.
  std::vector<Vertex> verts;
  std::vector<Edge> chosen;
  for (const Graph& piece : x.graphs()) {
    for (Vertex v : piece.vertices()) verts.push_back(v);
    for (const Edge& e : piece.edges()) chosen.push_back(e);
  }
  for (Vertex v : x.singletons()) verts.push_back(v);
  std::sort(verts.begin(), verts.end());

  // One edge per pattern edge, lexicographically first.
  std::set<Edge> selected;
  for (const Edge& re : r.graph().edges()) {
    bool found = false;
    for (const Edge& e : pool) {
      int a = x.element_of(e.u), b = x.element_of(e.v);
      if (std::minmax(a, b) == std::minmax(re.u, re.v)) {
        selected.insert(e);
        found = true;
        break;
      }
    }
    if (!found)
      throw precondition_error(
          "no available edge realizes pattern edge " + std::to_string(re.u) +
          "-" + std::to_string(re.v));
  }

  int ambient = max_ambient(x.graphs(), x.singletons());
  auto build = [&]() {
    std::vector<Edge> all = chosen;
    for (const Edge& e : selected) all.push_back(e);
    return Graph(ambient, verts, all);
  };

  // Top up escapes: give each graph piece a full k-matching taken from the
  // whole pool (edges may double as pattern-edge realizations).
  std::vector<Edge> chosen_and_pool = chosen;
  for (const Edge& e : pool) chosen_and_pool.push_back(e);
  Graph with_pool(ambient, verts, chosen_and_pool);
  for (int i = 0; i < static_cast<int>(x.graphs().size()); ++i) {
    std::vector<Edge> realizing;
    int got = escape_count(with_pool, x, i, &realizing);
    if (got < k)
      throw precondition_error("piece " + std::to_string(i) +
                               " can reach only " + std::to_string(got) +
                               " distinct elements");
    realizing.resize(k);
    for (const Edge& e : realizing) selected.insert(e);
  }

  Graph out = build();
  FamilyMembershipReport rep = check_family_membership(out, x, r, k);
  ensure(rep.all_clear(), "assembled graph fails its own membership check");
  ensure(is_k_connected(out, k).ok, "assembled graph is not k-connected");
  return out;
}

}  // namespace backbone
