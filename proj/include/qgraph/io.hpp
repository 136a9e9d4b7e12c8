#pragma once

// Graph spec files (JSON) and CSV output.
//
//   { "vertices": ["a", "b", ...],
//     "edges": [ { "id": "e1", "from": "a", "to": "b", "length": 3.14,
//                  "potential": {"type": "zero"} }, ... ] }
//
// Potential types: zero, constant {value}, piecewise {pieces: [{length,
// value}]}, sampled {values: [...]}. Edges are indexed in file order.

#include "qgraph/linalg.hpp"
#include "qgraph/metric_graph.hpp"
#include "qgraph/spectrum.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qg {

struct GraphSpec {
  std::vector<std::string> vertex_names;
  std::vector<std::string> edge_ids;
  MetricGraph graph;
};

/// Throws Error(Parse) with line and column for malformed JSON or with the
/// offending field path for wrong types, Error(Validation) for semantic
/// problems (unknown vertex, self-loop, disconnected, bad lengths).
GraphSpec parse_graph_spec(std::string_view text,
                           std::string_view source = "<input>");
GraphSpec read_graph_spec(const std::string& path);
MetricGraph parse_graph(const std::string& path);

/// Spec with vertices "v0", "v1", ... and edges "e0", "e1", ...
GraphSpec default_spec(const MetricGraph& g);

/// Pretty-printed JSON that parses back to an identical spec.
std::string serialize_graph_spec(const GraphSpec& spec);

/// Shortest decimal text with 17 significant digits ("nan", "inf" allowed).
std::string format_double(double v);
double parse_double(std::string_view text);

inline constexpr std::string_view kScanHeader =
    "k,det_bond,det_one_plus_phi_tau,det_vertex,is_pole,det_oracle";

void write_scan_csv(std::ostream& out, const ScanResult& s);
/// Throws Error(Parse) on a bad header or row.
ScanResult read_scan_csv(std::istream& in);

/// Row-major CSV preceded by "# <name> rows=<r> cols=<c>".
void write_matrix_csv(std::ostream& out, std::string_view name,
                      const Matrix& m);
void write_matrix_csv(std::ostream& out, std::string_view name,
                      const IntMatrix& m);

/// Writes S, D, A, L, H, tau, the normalized and the 1-down Laplacian into
/// `dir` (created if missing). Returns the file names written. Throws
/// Error(Io).
std::vector<std::string> write_graph_matrices(const CombinatorialGraph& g,
                                              const std::string& dir);

}  // namespace qg
