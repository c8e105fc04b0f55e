#include "backbone/connectivity.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <queue>
#include <set>

#include "backbone/error.hpp"

namespace backbone {

namespace {

struct FlowArc {
  int to = 0;
  int cap = 0;   // residual capacity
  int orig = 0;  // capacity at construction; orig - cap is the flow carried
  int rev = 0;   // index of the reverse arc in adj[to]
};

struct FlowNet {
  std::vector<std::vector<FlowArc>> adj;

  explicit FlowNet(int nodes) : adj(nodes) {}

  void add_arc(int from, int to, int cap) {
    adj[from].push_back({to, cap, cap, static_cast<int>(adj[to].size())});
    adj[to].push_back({from, 0, 0, static_cast<int>(adj[from].size()) - 1});
  }

  // Shortest-path augmentation until exhaustion or until the flow reaches
  // limit. A return value below limit certifies a maximum flow, so the
  // residual graph then yields a minimum cut; a return equal to limit only
  // certifies "at least limit".
  int max_flow(int s, int t, int limit) {
    int flow = 0;
    std::vector<int> prev_node(adj.size()), prev_arc(adj.size());
    while (flow < limit) {
      std::fill(prev_node.begin(), prev_node.end(), -1);
      std::queue<int> q;
      q.push(s);
      prev_node[s] = s;
      while (!q.empty() && prev_node[t] < 0) {
        int v = q.front();
        q.pop();
        for (int i = 0; i < static_cast<int>(adj[v].size()); ++i) {
          const FlowArc& a = adj[v][i];
          if (a.cap > 0 && prev_node[a.to] < 0) {
            prev_node[a.to] = v;
            prev_arc[a.to] = i;
            q.push(a.to);
          }
        }
      }
      if (prev_node[t] < 0) break;
      int push = limit - flow;
      for (int v = t; v != s; v = prev_node[v])
        push = std::min(push, adj[prev_node[v]][prev_arc[v]].cap);
      for (int v = t; v != s; v = prev_node[v]) {
        FlowArc& a = adj[prev_node[v]][prev_arc[v]];
        a.cap -= push;
        adj[a.to][a.rev].cap += push;
      }
      flow += push;
    }
    return flow;
  }

  std::vector<char> residual_reachable(int s) const {
    std::vector<char> seen(adj.size(), 0);
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const FlowArc& a : adj[v])
        if (a.cap > 0 && !seen[a.to]) {
          seen[a.to] = 1;
          stack.push_back(a.to);
        }
    }
    return seen;
  }
};

// Vertex-split network for internally disjoint paths: the i-th present
// vertex becomes nodes 2i (in) and 2i+1 (out) joined by a unit-capacity arc
// (unbounded at the terminals). Edge arcs are unbounded except the direct
// s-t edge, which carries one path at most.
struct SplitNet {
  const Graph& g;
  std::vector<int> pos;  // ambient id -> compact index
  FlowNet net;
  Vertex s, t;

  SplitNet(const Graph& graph, Vertex source, Vertex sink)
      : g(graph),
        pos(graph.ambient_size(), -1),
        net(2 * graph.vertex_count()),
        s(source),
        t(sink) {
    const auto& vs = g.vertices();
    int n = static_cast<int>(vs.size());
    for (int i = 0; i < n; ++i) pos[vs[i]] = i;
    int big = n;  // strictly above any achievable flow
    for (int i = 0; i < n; ++i) {
      Vertex v = vs[i];
      net.add_arc(2 * i, 2 * i + 1, (v == s || v == t) ? big : 1);
    }
    for (const Edge& e : g.edges()) {
      bool direct = (e.u == s && e.v == t) || (e.u == t && e.v == s);
      int cap = direct ? 1 : big;
      net.add_arc(2 * pos[e.u] + 1, 2 * pos[e.v], cap);
      net.add_arc(2 * pos[e.v] + 1, 2 * pos[e.u], cap);
    }
  }

  int source_node() const { return 2 * pos[s] + 1; }  // s_out
  int sink_node() const { return 2 * pos[t]; }        // t_in

  int run(int limit) { return net.max_flow(source_node(), sink_node(), limit); }

  // Valid only after run() exhausted augmenting paths (returned below its
  // limit) and only for non-adjacent s, t: the split arcs crossing the
  // residual frontier name a minimum s-t vertex cut.
  std::vector<Vertex> extract_cut() const {
    std::vector<char> seen = net.residual_reachable(source_node());
    std::vector<Vertex> cut;
    const auto& vs = g.vertices();
    for (int i = 0; i < static_cast<int>(vs.size()); ++i)
      if (vs[i] != s && vs[i] != t && seen[2 * i] && !seen[2 * i + 1])
        cut.push_back(vs[i]);
    return cut;
  }

  // Consumes the integral flow into vertex-form paths. Every internal split
  // arc carries at most one unit, so the walks are simple and internally
  // disjoint. Destructive: call once, after run().
  std::vector<std::vector<Vertex>> decompose_paths(int flow) {
    const auto& vs = g.vertices();
    std::vector<std::vector<Vertex>> paths;
    for (int unit = 0; unit < flow; ++unit) {
      std::vector<Vertex> path{s};
      int cur = source_node();
      while (cur != sink_node()) {
        bool stepped = false;
        for (FlowArc& a : net.adj[cur]) {
          if (a.orig - a.cap > 0) {
            a.cap += 1;
            net.adj[a.to][a.rev].cap -= 1;
            cur = a.to;
            // Record a vertex when entering its in-node (skip the sink; the
            // endpoint is appended after the walk).
            if (cur % 2 == 0 && cur != sink_node()) path.push_back(vs[cur / 2]);
            // Skip over the split arc bookkeeping: the very next step leaves
            // via the out-node; recording at in-nodes is enough.
            stepped = true;
            break;
          }
        }
        ensure(stepped, "flow decomposition stalled");
      }
      path.push_back(t);
      paths.push_back(std::move(path));
    }
    return paths;
  }
};

Vertex min_degree_vertex(const Graph& g) {
  Vertex best = g.vertices().front();
  for (Vertex v : g.vertices())
    if (g.degree(v) < g.degree(best)) best = v;
  return best;
}

std::vector<Vertex> smallest_of(const std::vector<std::vector<Vertex>>& comps) {
  ensure(!comps.empty(), "no components");
  const std::vector<Vertex>* best = &comps.front();
  for (const auto& c : comps)
    if (c.size() < best->size()) best = &c;  // first-seen wins ties: lex least
  return *best;
}

std::vector<Vertex> smallest_component_without(const Graph& g,
                                               const std::vector<Vertex>& cut) {
  std::vector<char> removed(g.ambient_size(), 0);
  for (Vertex v : cut) removed[v] = 1;
  std::vector<Vertex> keep;
  for (Vertex v : g.vertices())
    if (!removed[v]) keep.push_back(v);
  return smallest_of(components(g.induced(keep)));
}

}  // namespace

DisjointPaths st_disjoint_paths(const Graph& g, Vertex s, Vertex t) {
  require(g.has_vertex(s) && g.has_vertex(t), "endpoint not in graph");
  require(s != t, "endpoints must be distinct");
  SplitNet net(g, s, t);
  int flow = net.run(g.vertex_count());
  DisjointPaths out;
  out.count = flow;
  out.paths = net.decompose_paths(flow);
  ensure(static_cast<int>(out.paths.size()) == flow, "path count mismatch");
  return out;
}

ConnectivityResult vertex_connectivity(const Graph& g) {
  int n = g.vertex_count();
  require(n >= 1, "vertex_connectivity needs a nonempty graph");
  if (n == 1) return {0, std::nullopt};
  auto comps = components(g);
  if (comps.size() > 1) return {0, VertexCutWitness{{}, smallest_of(comps)}};
  if (g.is_complete()) return {n - 1, std::nullopt};

  // Pair schedule rooted at a minimum-degree vertex r. Any minimum cut
  // either avoids r (caught by r against a non-neighbor) or contains r
  // (caught by two of r's neighbors left in different components). N(r) is
  // itself a separating set of a connected non-complete graph, so it seeds
  // the running best; later probes are capped at the current best.
  Vertex r = min_degree_vertex(g);
  int best = g.degree(r);
  std::vector<Vertex> best_cut(g.neighbors(r).begin(), g.neighbors(r).end());

  auto probe = [&](Vertex a, Vertex b) {
    SplitNet net(g, a, b);
    int flow = net.run(best);
    if (flow < best) {
      best = flow;
      best_cut = net.extract_cut();
      ensure(static_cast<int>(best_cut.size()) == flow, "cut size mismatch");
    }
  };

  for (Vertex u : g.vertices())
    if (u != r && !g.has_edge(r, u)) probe(r, u);
  auto nbrs = g.neighbors(r);
  for (std::size_t i = 0; i < nbrs.size(); ++i)
    for (std::size_t j = i + 1; j < nbrs.size(); ++j)
      if (!g.has_edge(nbrs[i], nbrs[j])) probe(nbrs[i], nbrs[j]);

  VertexCutWitness w;
  w.cut = best_cut;
  std::sort(w.cut.begin(), w.cut.end());
  w.side_small = smallest_component_without(g, w.cut);
  return {best, std::move(w)};
}

KConnReport is_k_connected(const Graph& g, int k) {
  require(k >= 0, "negative k");
  KConnReport rep;
  int n = g.vertex_count();
  if (n <= k) {
    rep.too_small = true;
    return rep;
  }
  if (k == 0) {
    rep.ok = true;
    return rep;
  }
  auto comps = components(g);
  if (comps.size() > 1) {
    rep.witness = VertexCutWitness{{}, smallest_of(comps)};
    return rep;
  }
  if (k == 1 || g.is_complete()) {
    rep.ok = true;
    return rep;
  }
  Vertex mdv = min_degree_vertex(g);
  if (g.degree(mdv) < k) {
    VertexCutWitness w;
    auto nb = g.neighbors(mdv);
    w.cut.assign(nb.begin(), nb.end());
    w.side_small = {mdv};  // isolated once its neighborhood goes
    rep.witness = std::move(w);
    return rep;
  }
  // Root schedule: any cut of size < k misses one of the k lowest-id
  // vertices, and a missed root sees the cut against some non-neighbor on
  // the far side. Universal roots have nothing to scan (no cut avoids a
  // universal vertex).
  const auto& vs = g.vertices();
  int roots = std::min(k, n);
  for (int i = 0; i < roots; ++i) {
    Vertex r = vs[i];
    for (Vertex u : vs) {
      if (u == r || g.has_edge(r, u)) continue;
      SplitNet net(g, r, u);
      int flow = net.run(k);
      if (flow < k) {
        VertexCutWitness w;
        w.cut = net.extract_cut();
        ensure(static_cast<int>(w.cut.size()) == flow, "cut size mismatch");
        std::sort(w.cut.begin(), w.cut.end());
        w.side_small = smallest_component_without(g, w.cut);
        rep.witness = std::move(w);
        return rep;
      }
    }
  }
  rep.ok = true;
  return rep;
}

EdgeConnectivityResult edge_connectivity(const Graph& g) {
  int n = g.vertex_count();
  require(n >= 2, "edge_connectivity needs n >= 2");
  auto comps = components(g);
  if (comps.size() > 1) return {0, EdgeCut{smallest_of(comps), {}}};

  const auto& vs = g.vertices();
  std::vector<int> pos(g.ambient_size(), -1);
  for (int i = 0; i < n; ++i) pos[vs[i]] = i;

  // lambda = min over v of the v0-v edge flow; seed the bound with a
  // minimum-degree star cut.
  Vertex mdv = min_degree_vertex(g);
  int best = g.degree(mdv);
  std::vector<Vertex> best_shore{mdv};

  for (int i = 1; i < n; ++i) {
    FlowNet net(n);
    for (const Edge& e : g.edges()) {
      net.add_arc(pos[e.u], pos[e.v], 1);
      net.add_arc(pos[e.v], pos[e.u], 1);
    }
    int flow = net.max_flow(pos[vs[0]], i, best);
    if (flow < best) {
      best = flow;
      auto seen = net.residual_reachable(pos[vs[0]]);
      best_shore.clear();
      for (int j = 0; j < n; ++j)
        if (seen[j]) best_shore.push_back(vs[j]);
    }
  }

  std::sort(best_shore.begin(), best_shore.end());
  EdgeCut cut;
  cut.separated_set = best_shore;
  for (const Edge& e : g.edges()) {
    bool iu = std::binary_search(best_shore.begin(), best_shore.end(), e.u);
    bool iv = std::binary_search(best_shore.begin(), best_shore.end(), e.v);
    if (iu != iv) cut.crossing_edges.push_back(e);
  }
  ensure(static_cast<int>(cut.crossing_edges.size()) == best,
         "edge cut size mismatch");
  return {best, std::move(cut)};
}

MatchingResult max_bipartite_matching(const Graph& g, const Bipartition& p) {
  require(std::is_sorted(p.side_a.begin(), p.side_a.end()) &&
              std::is_sorted(p.side_b.begin(), p.side_b.end()),
          "bipartition sides must be sorted");
  for (Vertex v : g.vertices())
    require(p.in_side_a(v) != p.in_side_b(v), "vertex not in exactly one side");
  require(static_cast<int>(p.side_a.size() + p.side_b.size()) ==
              g.vertex_count(),
          "bipartition does not partition the vertex set");
  for (const Edge& e : g.edges())
    require(p.in_side_a(e.u) != p.in_side_a(e.v),
            "edge inside one side of the bipartition");

  int na = static_cast<int>(p.side_a.size());
  int nb = static_cast<int>(p.side_b.size());
  std::vector<int> apos(g.ambient_size(), -1), bpos(g.ambient_size(), -1);
  for (int i = 0; i < na; ++i) apos[p.side_a[i]] = i;
  for (int i = 0; i < nb; ++i) bpos[p.side_b[i]] = i;
  std::vector<std::vector<int>> adj(na);
  for (int i = 0; i < na; ++i)
    if (g.has_vertex(p.side_a[i]))
      for (Vertex w : g.neighbors(p.side_a[i])) adj[i].push_back(bpos[w]);

  // Hopcroft-Karp: layered BFS phases, then DFS augmentation per phase.
  std::vector<int> match_a(na, -1), match_b(nb, -1), dist(na);
  const int kInf = INT_MAX;

  auto bfs = [&]() {
    std::queue<int> q;
    for (int a = 0; a < na; ++a) {
      if (match_a[a] < 0) {
        dist[a] = 0;
        q.push(a);
      } else {
        dist[a] = kInf;
      }
    }
    bool found = false;
    while (!q.empty()) {
      int a = q.front();
      q.pop();
      for (int b : adj[a]) {
        int a2 = match_b[b];
        if (a2 < 0) {
          found = true;
        } else if (dist[a2] == kInf) {
          dist[a2] = dist[a] + 1;
          q.push(a2);
        }
      }
    }
    return found;
  };

  std::function<bool(int)> try_augment = [&](int a) {
    for (int b : adj[a]) {
      int a2 = match_b[b];
      if (a2 < 0 || (dist[a2] == dist[a] + 1 && try_augment(a2))) {
        match_a[a] = b;
        match_b[b] = a;
        return true;
      }
    }
    dist[a] = kInf;
    return false;
  };

  while (bfs())
    for (int a = 0; a < na; ++a)
      if (match_a[a] < 0) try_augment(a);

  // Konig: alternating reachability from the free A-vertices; the cover is
  // (A minus reached) plus (B reached).
  std::vector<char> za(na, 0), zb(nb, 0);
  std::queue<int> q;
  for (int a = 0; a < na; ++a)
    if (match_a[a] < 0) {
      za[a] = 1;
      q.push(a);
    }
  while (!q.empty()) {
    int a = q.front();
    q.pop();
    for (int b : adj[a]) {
      if (match_a[a] == b || zb[b]) continue;  // cross only unmatched edges
      zb[b] = 1;
      int a2 = match_b[b];
      if (a2 >= 0 && !za[a2]) {
        za[a2] = 1;
        q.push(a2);
      }
    }
  }

  MatchingResult out;
  for (int a = 0; a < na; ++a)
    if (match_a[a] >= 0)
      out.matching.edges.push_back(make_edge(p.side_a[a], p.side_b[match_a[a]]));
  std::sort(out.matching.edges.begin(), out.matching.edges.end());
  for (int a = 0; a < na; ++a)
    if (!za[a]) out.cover.cover.push_back(p.side_a[a]);
  for (int b = 0; b < nb; ++b)
    if (zb[b]) out.cover.cover.push_back(p.side_b[b]);
  std::sort(out.cover.cover.begin(), out.cover.cover.end());

  ensure(out.cover.cover.size() == out.matching.edges.size(),
         "matching/cover size mismatch");
  std::set<Vertex> used;
  for (const Edge& e : out.matching.edges) {
    ensure(used.insert(e.u).second && used.insert(e.v).second,
           "matching edges share an endpoint");
    ensure(g.has_edge(e.u, e.v), "matching edge not in graph");
  }
  for (const Edge& e : g.edges())
    ensure(std::binary_search(out.cover.cover.begin(), out.cover.cover.end(),
                              e.u) ||
               std::binary_search(out.cover.cover.begin(),
                                  out.cover.cover.end(), e.v),
           "edge not covered");
  return out;
}

std::vector<VertexCutWitness> minimum_vertex_cuts(const Graph& g) {
  int n = g.vertex_count();
  require(n >= 1, "minimum_vertex_cuts needs a nonempty graph");
  if (n == 1) return {};
  auto comps = components(g);
  if (comps.size() > 1)
    return {VertexCutWitness{{}, smallest_of(comps)}};
  if (g.is_complete()) return {};

  int kappa = vertex_connectivity(g).kappa;
  std::set<std::vector<Vertex>> cuts;

  Vertex r = min_degree_vertex(g);
  if (g.degree(r) == kappa) {
    std::vector<Vertex> c(g.neighbors(r).begin(), g.neighbors(r).end());
    cuts.insert(std::move(c));  // neighbor lists are already sorted
  }
  auto probe = [&](Vertex a, Vertex b) {
    SplitNet net(g, a, b);
    int flow = net.run(kappa + 1);
    if (flow == kappa) {
      std::vector<Vertex> c = net.extract_cut();
      std::sort(c.begin(), c.end());
      cuts.insert(std::move(c));
    }
  };
  for (Vertex u : g.vertices())
    if (u != r && !g.has_edge(r, u)) probe(r, u);
  auto nbrs = g.neighbors(r);
  for (std::size_t i = 0; i < nbrs.size(); ++i)
    for (std::size_t j = i + 1; j < nbrs.size(); ++j)
      if (!g.has_edge(nbrs[i], nbrs[j])) probe(nbrs[i], nbrs[j]);

  ensure(!cuts.empty(), "schedule found no minimum cut");
  std::vector<VertexCutWitness> out;
  for (const auto& c : cuts) {
    VertexCutWitness w;
    w.cut = c;
    w.side_small = smallest_component_without(g, c);
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace backbone
