#include "qgraph/io.hpp"

#include "qgraph/errors.hpp"
#include "qgraph/graph.hpp"

#include <json.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace qg {

namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& path, const std::string& msg) {
  throw Error(ErrorKind::Parse, path + ": " + msg);
}

const json& member(const json& obj, const std::string& key,
                   const std::string& path) {
  if (!obj.is_object()) field_error(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) field_error(path + "." + key, "missing");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) field_error(path, "expected a number");
  return j.get<double>();
}

std::string name_of(const json& j, const std::string& path) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  field_error(path, "expected a string");
}

Potential parse_potential(const json& j, const std::string& path) {
  const auto type = name_of(member(j, "type", path), path + ".type");
  if (type == "zero") return ZeroPotential{};
  if (type == "constant") {
    return ConstantPotential{number(member(j, "value", path), path + ".value")};
  }
  if (type == "piecewise") {
    const auto& pieces = member(j, "pieces", path);
    if (!pieces.is_array()) field_error(path + ".pieces", "expected an array");
    PiecewisePotential p;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const auto at = path + ".pieces[" + std::to_string(i) + "]";
      p.segments.push_back({number(member(pieces[i], "length", at), at + ".length"),
                            number(member(pieces[i], "value", at), at + ".value")});
    }
    return p;
  }
  if (type == "sampled") {
    const auto& values = member(j, "values", path);
    if (!values.is_array()) field_error(path + ".values", "expected an array");
    SampledPotential p;
    for (std::size_t i = 0; i < values.size(); ++i) {
      p.values.push_back(
          number(values[i], path + ".values[" + std::to_string(i) + "]"));
    }
    return p;
  }
  field_error(path + ".type", "unknown potential type '" + type + "'");
}

json potential_json(const Potential& p) {
  return std::visit(
      [](const auto& pot) -> json {
        using T = std::decay_t<decltype(pot)>;
        if constexpr (std::is_same_v<T, ZeroPotential>) {
          return {{"type", "zero"}};
        } else if constexpr (std::is_same_v<T, ConstantPotential>) {
          return {{"type", "constant"}, {"value", pot.value}};
        } else if constexpr (std::is_same_v<T, PiecewisePotential>) {
          json pieces = json::array();
          for (const auto& s : pot.segments) {
            pieces.push_back({{"length", s.length}, {"value", s.value}});
          }
          return {{"type", "piecewise"}, {"pieces", pieces}};
        } else {
          return {{"type", "sampled"}, {"values", pot.values}};
        }
      },
      p);
}

std::pair<std::size_t, std::size_t> line_col(std::string_view text,
                                             std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

void write_row(std::ostream& out, const double* v, Eigen::Index n,
               Eigen::Index stride) {
  for (Eigen::Index j = 0; j < n; ++j) {
    if (j) out << ',';
    out << format_double(v[j * stride]);
  }
  out << '\n';
}

}  // namespace

GraphSpec parse_graph_spec(std::string_view text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte);
    throw Error(ErrorKind::Parse, std::string(source) + ":" +
                                      std::to_string(line) + ":" +
                                      std::to_string(col) +
                                      ": malformed JSON");
  }
  const std::string prefix(source);
  try {
    const auto& verts = member(doc, "vertices", "$");
    if (!verts.is_array()) field_error("$.vertices", "expected an array");
    GraphSpec spec{{}, {}, MetricGraph(CombinatorialGraph(2, {{0, 1}}), {1.0})};
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      auto name = name_of(verts[i], "$.vertices[" + std::to_string(i) + "]");
      if (!index.emplace(name, static_cast<int>(i)).second) {
        throw Error(ErrorKind::Validation,
                    "$.vertices[" + std::to_string(i) + "]: duplicate name '" +
                        name + "'");
      }
      spec.vertex_names.push_back(std::move(name));
    }
    const auto& edges = member(doc, "edges", "$");
    if (!edges.is_array()) field_error("$.edges", "expected an array");
    std::vector<EdgeEnds> ends;
    std::vector<double> lengths;
    std::vector<Potential> pots;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const auto at = "$.edges[" + std::to_string(i) + "]";
      const auto& e = edges[i];
      if (!e.is_object()) field_error(at, "expected an object");
      spec.edge_ids.push_back(e.contains("id") ? name_of(e["id"], at + ".id")
                                               : "e" + std::to_string(i));
      int endpoint[2];
      const char* keys[2] = {"from", "to"};
      for (int s = 0; s < 2; ++s) {
        const auto name = name_of(member(e, keys[s], at), at + "." + keys[s]);
        const auto it = index.find(name);
        if (it == index.end()) {
          throw Error(ErrorKind::Validation, at + "." + keys[s] +
                                                 ": unknown vertex '" + name +
                                                 "'");
        }
        endpoint[s] = it->second;
      }
      if (endpoint[0] == endpoint[1]) {
        throw Error(ErrorKind::Validation,
                    at + ": self-loop at '" + spec.vertex_names[static_cast<std::size_t>(endpoint[0])] +
                        "'; subdivide it with a degree-2 vertex");
      }
      const double len = number(member(e, "length", at), at + ".length");
      if (!(len > 0.0) || !std::isfinite(len)) {
        throw Error(ErrorKind::Validation, at + ".length: must be positive");
      }
      Potential pot = ZeroPotential{};
      if (e.contains("potential")) {
        pot = parse_potential(e["potential"], at + ".potential");
      }
      try {
        validate_potential(pot, len);
      } catch (const Error& err) {
        throw Error(err.kind(), at + ".potential: " + err.what());
      }
      ends.push_back({endpoint[0], endpoint[1]});
      lengths.push_back(len);
      pots.push_back(std::move(pot));
    }
    spec.graph = MetricGraph(
        CombinatorialGraph(static_cast<int>(verts.size()), std::move(ends)),
        std::move(lengths), std::move(pots));
    return spec;
  } catch (const Error& e) {
    throw Error(e.kind(), prefix + ": " + e.what());
  }
}

GraphSpec read_graph_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph_spec(buf.str(), path);
}

MetricGraph parse_graph(const std::string& path) {
  return read_graph_spec(path).graph;
}

GraphSpec default_spec(const MetricGraph& g) {
  GraphSpec spec{{}, {}, g};
  for (int v = 0; v < g.vertex_count(); ++v) {
    spec.vertex_names.push_back("v" + std::to_string(v));
  }
  for (int e = 0; e < g.edge_count(); ++e) {
    spec.edge_ids.push_back("e" + std::to_string(e));
  }
  return spec;
}

std::string serialize_graph_spec(const GraphSpec& spec) {
  const auto& g = spec.graph.graph();
  json edges = json::array();
  for (int e = 0; e < g.edge_count(); ++e) {
    edges.push_back(
        {{"id", spec.edge_ids[static_cast<std::size_t>(e)]},
         {"from", spec.vertex_names[static_cast<std::size_t>(g.source(e))]},
         {"to", spec.vertex_names[static_cast<std::size_t>(g.target(e))]},
         {"length", spec.graph.length(e)},
         {"potential", potential_json(spec.graph.potential(e))}});
  }
  json doc = {{"vertices", spec.vertex_names}, {"edges", edges}};
  return doc.dump(2) + "\n";
}

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v,
                               std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

double parse_double(std::string_view text) {
  double v = 0.0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec != std::errc() || r.ptr != text.data() + text.size()) {
    throw Error(ErrorKind::Parse,
                "not a number: '" + std::string(text) + "'");
  }
  return v;
}

void write_scan_csv(std::ostream& out, const ScanResult& s) {
  out << kScanHeader << '\n';
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << format_double(s.k[i]) << ',' << format_double(s.det_bond[i]) << ','
        << format_double(s.det_one_plus_phi_tau[i]) << ','
        << format_double(s.det_vertex[i]) << ',' << (s.is_pole[i] ? 1 : 0)
        << ',' << format_double(s.det_oracle[i]) << '\n';
  }
}

ScanResult read_scan_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kScanHeader) {
    throw Error(ErrorKind::Parse, "scan CSV: bad header");
  }
  ScanResult s;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<std::string_view> cells;
    std::string_view rest(line);
    for (;;) {
      const auto comma = rest.find(',');
      cells.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (cells.size() != 6) {
      throw Error(ErrorKind::Parse, "scan CSV line " + std::to_string(row) +
                                        ": expected 6 fields");
    }
    try {
      s.k.push_back(parse_double(cells[0]));
      s.det_bond.push_back(parse_double(cells[1]));
      s.det_one_plus_phi_tau.push_back(parse_double(cells[2]));
      s.det_vertex.push_back(parse_double(cells[3]));
      if (cells[4] != "0" && cells[4] != "1") {
        throw Error(ErrorKind::Parse, "is_pole must be 0 or 1");
      }
      s.is_pole.push_back(cells[4] == "1");
      s.det_oracle.push_back(parse_double(cells[5]));
    } catch (const Error& e) {
      throw Error(ErrorKind::Parse,
                  "scan CSV line " + std::to_string(row) + ": " + e.what());
    }
  }
  return s;
}

void write_matrix_csv(std::ostream& out, std::string_view name,
                      const Matrix& m) {
  out << "# " << name << " rows=" << m.rows() << " cols=" << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    write_row(out, m.data() + i, m.cols(), m.rows());
  }
}

void write_matrix_csv(std::ostream& out, std::string_view name,
                      const IntMatrix& m) {
  out << "# " << name << " rows=" << m.rows() << " cols=" << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << m(i, j);
    }
    out << '\n';
  }
}

std::vector<std::string> write_graph_matrices(const CombinatorialGraph& g,
                                              const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + dir + ": " + ec.message());
  std::vector<std::string> written;
  auto open = [&](const std::string& file) {
    const auto path = (std::filesystem::path(dir) / file).string();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
    written.push_back(file);
    return out;
  };
  auto put_real = [&](const std::string& file, const Matrix& m) {
    auto out = open(file);
    write_matrix_csv(out, file.substr(0, file.size() - 4), m);
    if (!out) throw Error(ErrorKind::Io, "write failed for " + file);
  };
  auto put_int = [&](const std::string& file, const IntMatrix& m) {
    auto out = open(file);
    write_matrix_csv(out, file.substr(0, file.size() - 4), m);
    if (!out) throw Error(ErrorKind::Io, "write failed for " + file);
  };
  put_real("S.csv", bond_scattering(g));
  put_int("D.csv", degree_matrix(g));
  put_int("A.csv", adjacency(g));
  put_int("L.csv", laplacian(g));
  put_int("H.csv", nonbacktracking(g));
  put_int("tau.csv", tau_matrix(g));
  put_real("normalized_laplacian.csv", normalized_laplacian(g));
  put_real("one_down_laplacian.csv", one_down_laplacian(g));
  return written;
}

}  // namespace qg
