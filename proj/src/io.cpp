#include "backbone/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "backbone/error.hpp"

namespace backbone {

namespace {

struct LineReader {
  std::istream& in;
  int line_no = 0;

  // Next significant line (comments and blanks skipped); false at EOF.
  bool next(std::string& out) {
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_no;
      std::size_t start = raw.find_first_not_of(" \t\r");
      if (start == std::string::npos) continue;
      if (raw[start] == '#') continue;
      std::size_t end = raw.find_last_not_of(" \t\r");
      out = raw.substr(start, end - start + 1);
      return true;
    }
    return false;
  }
};

int parse_header(LineReader& r) {
  std::string line;
  if (!r.next(line)) throw parse_error(r.line_no, "missing 'n <vertex_count>' header");
  std::istringstream ss(line);
  std::string tag;
  long long n = -1;
  ss >> tag >> n;
  std::string rest;
  if (tag != "n" || ss.fail() || (ss >> rest) || n < 0)
    throw parse_error(r.line_no, "expected 'n <vertex_count>', got '" + line + "'");
  return static_cast<int>(n);
}

std::pair<int, int> parse_pair(const std::string& line, int line_no, int n) {
  std::istringstream ss(line);
  long long u = -1, v = -1;
  ss >> u >> v;
  std::string rest;
  if (ss.fail() || (ss >> rest))
    throw parse_error(line_no, "expected 'u v', got '" + line + "'");
  if (u < 0 || u >= n || v < 0 || v >= n)
    throw parse_error(line_no, "vertex out of range [0," + std::to_string(n) + ")");
  if (u == v) throw parse_error(line_no, "self-loop");
  return {static_cast<int>(u), static_cast<int>(v)};
}

}  // namespace

Graph parse_graph(std::istream& in) {
  LineReader r{in};
  int n = parse_header(r);
  std::vector<Edge> edges;
  std::set<std::pair<int, int>> seen;
  std::string line;
  while (r.next(line)) {
    auto [u, v] = parse_pair(line, r.line_no, n);
    Edge e = make_edge(u, v);
    if (!seen.insert({e.u, e.v}).second) throw parse_error(r.line_no, "duplicate edge");
    edges.push_back(e);
  }
  return Graph(n, edges);
}

Digraph parse_digraph(std::istream& in) {
  LineReader r{in};
  int n = parse_header(r);
  std::vector<Arc> arcs;
  std::set<std::pair<int, int>> seen;
  std::string line;
  while (r.next(line)) {
    auto [u, v] = parse_pair(line, r.line_no, n);
    if (!seen.insert({u, v}).second) throw parse_error(r.line_no, "duplicate arc");
    arcs.push_back({u, v});
  }
  return Digraph(n, arcs);
}

Graph parse_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error(0, "cannot open '" + path + "'");
  return parse_graph(in);
}

Digraph parse_digraph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error(0, "cannot open '" + path + "'");
  return parse_digraph(in);
}

std::string format_graph(const Graph& g) {
  std::ostringstream out;
  out << "n " << g.ambient_size() << "\n";
  for (const Edge& e : g.edges()) out << e.u << " " << e.v << "\n";
  return out.str();
}

std::string format_digraph(const Digraph& d) {
  std::ostringstream out;
  out << "n " << d.ambient_size() << "\n";
  for (const Arc& a : d.arcs()) out << a.from << " " << a.to << "\n";
  return out.str();
}

}  // namespace backbone
