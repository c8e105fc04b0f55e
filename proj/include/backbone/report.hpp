#pragma once

#include <string>
#include <utility>
#include <vector>

#include "backbone/graph.hpp"
#include "backbone/pipeline.hpp"

namespace backbone {

// Provenance recorded in the CONFIG block of every certificate and failure
// report, alongside the PipelineConfig values.
struct RunManifest {
  std::string command;  // CLI subcommand that produced the output
  std::string input;    // input path or generator description
  std::string version;  // library version string
  // Explicit knob overrides, recorded as set.<key>=<value>.
  std::vector<std::pair<std::string, std::string>> overrides;
};

// Sorted key=value lines for the CONFIG block.
std::vector<std::string> config_lines(const PipelineConfig& cfg,
                                      const RunManifest& m);

// VERTICES / SIDE_A / SIDE_B / EDGES / KAPPA_VERIFIED / SEED / CONFIG / END.
std::string format_certificate(const Certificate& c, const PipelineConfig& cfg,
                               const RunManifest& m);

// FAILURE / STAGE / DETAIL / WITNESS... / SEED / CONFIG / END.
std::string format_failure(const FailureReport& f, const PipelineConfig& cfg,
                           const RunManifest& m);

struct ParsedCertificate {
  int n = 0;
  std::vector<Vertex> side_a;
  std::vector<Vertex> side_b;
  std::vector<Edge> edges;
  int kappa_verified = 0;
};

// Strict reader for the certificate format; throws parse_error with the
// offending line number. The CONFIG block is validated but not interpreted.
ParsedCertificate parse_certificate(std::istream& in);
ParsedCertificate parse_certificate_file(const std::string& path);

// First failed check against the host graph, or "" when the certificate
// holds. Clauses in order: SIDES_OVERLAP (a vertex on both sides),
// NOT_SPANNING (sides do not cover the host exactly), EDGE_NOT_IN_HOST,
// NOT_BIPARTITE (an edge inside one side), KAPPA_TOO_LOW (the edge set is
// not kappa_verified-connected).
std::string verify_certificate(const Graph& host, const ParsedCertificate& c);

}  // namespace backbone
