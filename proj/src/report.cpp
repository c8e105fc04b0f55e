#include "backbone/report.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "backbone/connectivity.hpp"
#include "backbone/error.hpp"

namespace backbone {

namespace {

std::string join_ids(const std::vector<Vertex>& v) {
  std::string s;
  for (Vertex x : v) {
    s += ' ';
    s += std::to_string(x);
  }
  return s;
}

struct LineReader {
  std::istream& in;
  int line_no = 0;

  bool next(std::string& out) {
    if (!std::getline(in, out)) return false;
    ++line_no;
    if (!out.empty() && out.back() == '\r') out.pop_back();
    return true;
  }
  std::string need(const std::string& what) {
    std::string s;
    if (!next(s)) throw parse_error(line_no + 1, "expected " + what);
    return s;
  }
};

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

long long parse_number(const std::string& tok, int line) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    throw parse_error(line, "bad number '" + tok + "'");
  }
  if (pos != tok.size()) throw parse_error(line, "bad number '" + tok + "'");
  return v;
}

void parse_unsigned_checked(const std::string& tok, int line) {
  std::size_t pos = 0;
  try {
    (void)std::stoull(tok, &pos);
  } catch (const std::exception&) {
    throw parse_error(line, "bad seed '" + tok + "'");
  }
  if (pos != tok.size()) throw parse_error(line, "bad seed '" + tok + "'");
}

// "TAG <number>" line with exactly one value.
long long tagged_number(LineReader& lr, const std::string& tag) {
  std::vector<std::string> toks = split_ws(lr.need(tag));
  if (toks.size() != 2 || toks[0] != tag)
    throw parse_error(lr.line_no, "expected '" + tag + " <value>'");
  return parse_number(toks[1], lr.line_no);
}

std::vector<Vertex> side_line(LineReader& lr, const std::string& tag, int n) {
  std::vector<std::string> toks = split_ws(lr.need(tag));
  if (toks.empty() || toks[0] != tag)
    throw parse_error(lr.line_no, "expected '" + tag + "' line");
  std::vector<Vertex> ids;
  for (std::size_t i = 1; i < toks.size(); ++i) {
    long long v = parse_number(toks[i], lr.line_no);
    if (v < 0 || v >= n)
      throw parse_error(lr.line_no, "vertex id out of range");
    if (!ids.empty() && ids.back() >= v)
      throw parse_error(lr.line_no, tag + " ids must strictly increase");
    ids.push_back(static_cast<Vertex>(v));
  }
  return ids;
}

}  // namespace

std::vector<std::string> config_lines(const PipelineConfig& cfg,
                                      const RunManifest& m) {
  std::vector<std::string> ls = {
      "command=" + m.command,
      "input=" + m.input,
      "version=" + m.version,
      "seed=" + std::to_string(cfg.seed),
      "k=" + std::to_string(cfg.k),
      "scale=" + cfg.scale.str(),
      "max_rounds=" + std::to_string(cfg.max_rounds),
      "labeling_retries=" + std::to_string(cfg.labeling_retries),
      "size_threshold=" + std::to_string(cfg.size_threshold),
      "matching_target=" + std::to_string(cfg.matching_target),
      "degree_split_threshold=" + std::to_string(cfg.degree_split_threshold),
      "thinned_size=" + std::to_string(cfg.thinned_size),
      "touch_threshold=" + std::to_string(cfg.touch_threshold),
      "a_distinct_threshold=" + std::to_string(cfg.a_distinct_threshold),
      "b_degree_threshold=" + std::to_string(cfg.b_degree_threshold),
  };
  for (const auto& kv : m.overrides)
    ls.push_back("set." + kv.first + "=" + kv.second);
  std::sort(ls.begin(), ls.end());
  return ls;
}

std::string format_certificate(const Certificate& c, const PipelineConfig& cfg,
                               const RunManifest& m) {
  std::string out;
  out += "VERTICES " + std::to_string(c.n) + "\n";
  out += "SIDE_A" + join_ids(c.sides.side_a) + "\n";
  out += "SIDE_B" + join_ids(c.sides.side_b) + "\n";
  out += "EDGES " + std::to_string(c.edges.size()) + "\n";
  for (const Edge& e : c.edges)
    out += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  out += "KAPPA_VERIFIED " + std::to_string(c.kappa_verified) + "\n";
  out += "SEED " + std::to_string(c.seed) + "\n";
  out += "CONFIG\n";
  for (const std::string& line : config_lines(cfg, m)) out += line + "\n";
  out += "END\n";
  return out;
}

std::string format_failure(const FailureReport& f, const PipelineConfig& cfg,
                           const RunManifest& m) {
  std::string out;
  out += "FAILURE\n";
  out += std::string("STAGE ") + stage_name(f.stage) + "\n";
  out += "DETAIL " + f.detail + "\n";
  for (const std::string& w : f.witness) out += "WITNESS " + w + "\n";
  out += "SEED " + std::to_string(f.seed) + "\n";
  out += "CONFIG\n";
  for (const std::string& line : config_lines(cfg, m)) out += line + "\n";
  out += "END\n";
  return out;
}

ParsedCertificate parse_certificate(std::istream& in) {
  LineReader lr{in};
  ParsedCertificate c;

  long long n = tagged_number(lr, "VERTICES");
  if (n < 1) throw parse_error(lr.line_no, "vertex count must be positive");
  c.n = static_cast<int>(n);

  c.side_a = side_line(lr, "SIDE_A", c.n);
  c.side_b = side_line(lr, "SIDE_B", c.n);

  long long m = tagged_number(lr, "EDGES");
  if (m < 0) throw parse_error(lr.line_no, "negative edge count");
  std::set<Edge> seen;
  for (long long i = 0; i < m; ++i) {
    std::vector<std::string> toks = split_ws(lr.need("edge line"));
    if (toks.size() != 2)
      throw parse_error(lr.line_no, "expected 'u v'");
    long long u = parse_number(toks[0], lr.line_no);
    long long v = parse_number(toks[1], lr.line_no);
    if (u < 0 || u >= c.n || v < 0 || v >= c.n)
      throw parse_error(lr.line_no, "vertex id out of range");
    if (u == v) throw parse_error(lr.line_no, "self-loop");
    Edge e = make_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
    if (!seen.insert(e).second)
      throw parse_error(lr.line_no, "duplicate edge");
    c.edges.push_back(e);
  }
  std::sort(c.edges.begin(), c.edges.end());

  long long kappa = tagged_number(lr, "KAPPA_VERIFIED");
  if (kappa < 0) throw parse_error(lr.line_no, "negative connectivity");
  c.kappa_verified = static_cast<int>(kappa);

  std::vector<std::string> toks = split_ws(lr.need("SEED"));
  if (toks.size() != 2 || toks[0] != "SEED")
    throw parse_error(lr.line_no, "expected 'SEED <value>'");
  parse_unsigned_checked(toks[1], lr.line_no);

  if (lr.need("CONFIG") != "CONFIG")
    throw parse_error(lr.line_no, "expected 'CONFIG'");
  while (true) {
    std::string s = lr.need("END");
    if (s == "END") break;
    std::size_t eq = s.find('=');
    if (eq == std::string::npos || eq == 0)
      throw parse_error(lr.line_no, "expected key=value or END");
  }

  std::string rest;
  while (lr.next(rest))
    if (!split_ws(rest).empty())
      throw parse_error(lr.line_no, "content after END");
  return c;
}

ParsedCertificate parse_certificate_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open " + path);
  return parse_certificate(in);
}

std::string verify_certificate(const Graph& host, const ParsedCertificate& c) {
  std::vector<Vertex> overlap;
  std::set_intersection(c.side_a.begin(), c.side_a.end(), c.side_b.begin(),
                        c.side_b.end(), std::back_inserter(overlap));
  if (!overlap.empty()) return "SIDES_OVERLAP";

  std::vector<Vertex> all;
  all.reserve(c.side_a.size() + c.side_b.size());
  std::merge(c.side_a.begin(), c.side_a.end(), c.side_b.begin(),
             c.side_b.end(), std::back_inserter(all));
  if (c.n != host.vertex_count() || all != host.vertices())
    return "NOT_SPANNING";

  for (const Edge& e : c.edges)
    if (!host.has_edge(e.u, e.v)) return "EDGE_NOT_IN_HOST";

  Bipartition p{c.side_a, c.side_b};
  for (const Edge& e : c.edges)
    if (p.in_side_a(e.u) == p.in_side_a(e.v)) return "NOT_BIPARTITE";

  Graph cert(host.ambient_size(), all, c.edges);
  if (!is_k_connected(cert, c.kappa_verified).ok) return "KAPPA_TOO_LOW";
  return "";
}

}  // namespace backbone
