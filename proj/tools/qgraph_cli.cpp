// qgraph: command-line front end for the quantum graph library.

#include "qgraph/casestudy.hpp"
#include "qgraph/errors.hpp"
#include "qgraph/io.hpp"
#include "qgraph/secular.hpp"
#include "qgraph/spectrum.hpp"
#include "qgraph/topology.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace qg;

void cmd_info(const std::string& file) {
  const auto spec = read_graph_spec(file);
  const auto& g = spec.graph.graph();
  std::cout << "vertices " << g.vertex_count() << '\n'
            << "edges " << g.edge_count() << '\n'
            << "betti " << betti(g) << '\n'
            << "zero_potential " << (spec.graph.all_potentials_zero() ? 1 : 0)
            << '\n';
  for (int e = 0; e < g.edge_count(); ++e) {
    std::cout << "edge " << e << ' ' << spec.edge_ids[e] << ' '
              << spec.vertex_names[g.source(e)] << ' '
              << spec.vertex_names[g.target(e)] << ' '
              << format_double(spec.graph.length(e)) << '\n';
  }
}

void cmd_matrices(const std::string& file, const std::string& dir) {
  const auto g = parse_graph(file);
  for (const auto& name : write_graph_matrices(g.graph(), dir)) {
    std::cout << name << '\n';
  }
}

void check_window(double kmin, double kmax) {
  if (!(kmin > 0.0) || !(kmax > kmin)) {
    throw Error(ErrorKind::Argument, "need 0 < kmin < kmax");
  }
}

void cmd_scan(const std::string& file, double kmin, double kmax,
              std::optional<std::size_t> samples, const std::string& out) {
  check_window(kmin, kmax);
  const SecularSystem sys(parse_graph(file));
  const auto s =
      scan(sys, kmin, kmax, samples.value_or(default_samples(kmin, kmax)));
  if (out.empty() || out == "-") {
    write_scan_csv(std::cout, s);
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw Error(ErrorKind::Io, "cannot open " + out);
  write_scan_csv(f, s);
  if (!f) throw Error(ErrorKind::Io, "write failed: " + out);
}

void cmd_eigs(const std::string& file, double kmin, double kmax, double tol) {
  check_window(kmin, kmax);
  if (!(tol > 0.0)) throw Error(ErrorKind::Argument, "tol must be positive");
  const SecularSystem sys(parse_graph(file));
  RootOptions opt;
  opt.refine_tol = tol;
  std::cout << "k,multiplicity,class,dim_topological,residual\n";
  for (const auto& r :
       eigenvalues(sys, kmin, kmax, default_samples(kmin, kmax), opt)) {
    std::cout << format_double(r.k) << ',' << r.multiplicity << ','
              << to_string(r.eigen_class) << ',' << r.dim_topological << ','
              << format_double(r.residual) << '\n';
  }
}

void cmd_topo(const std::string& file, double k) {
  if (!(k > 0.0)) throw Error(ErrorKind::Argument, "k must be positive");
  const SecularSystem sys(parse_graph(file));
  const auto& g = sys.graph().graph();
  const auto cycles = fundamental_cycles(g);
  const auto equi = spectrally_equilateral_cycles(sys.graph(), k, cycles);
  std::cout << "cycle,edges,closure,state,bond_residual,s_plus_tau,value_max\n";
  for (const auto& c : equi) {
    std::string edges;
    for (int e : c.edges) edges += (edges.empty() ? "" : " ") + std::to_string(e);
    const auto x = construct_topological_state(sys.graph(), c, k);
    std::cout << (&c - equi.data()) << ',' << edges << ','
              << format_double(closure_product(sys.graph(), c, k)) << ','
              << (x ? 1 : 0);
    if (x) {
      const auto res = verify_topological(sys, *x);
      const double bond = (sys.bond_matrix(k) * *x).norm() / res.norm;
      std::cout << ',' << format_double(bond) << ','
                << format_double(res.s_plus_tau / res.norm) << ','
                << format_double(res.max_value / res.norm);
    } else {
      std::cout << ",,,";
    }
    std::cout << '\n';
  }
  const auto rec = classify(sys, k);
  std::cout << "# k=" << format_double(rec.k)
            << " multiplicity=" << rec.multiplicity
            << " class=" << to_string(rec.eigen_class)
            << " dim_topological=" << rec.dim_topological << '\n';
}

int cmd_casestudy(int index, std::optional<std::uint64_t> seed) {
  const auto report = run_case_study(index, seed);
  print_report(std::cout, report);
  if (!report.passed()) {
    throw Error(ErrorKind::Assertion,
                "case study " + std::to_string(index) + " failed");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra and topological states of quantum graphs"};
  app.require_subcommand(1);

  std::string file;
  std::string dir;
  std::string out;
  double kmin = 0.0;
  double kmax = 0.0;
  double k = 0.0;
  double tol = kDefaultRefineTol;
  std::optional<std::size_t> samples;
  int index = 0;
  std::optional<std::uint64_t> seed;

  auto* info = app.add_subcommand("info", "summarize a graph file");
  info->add_option("file", file)->required();

  auto* matrices = app.add_subcommand("matrices", "write graph matrices as CSV");
  matrices->add_option("file", file)->required();
  matrices->add_option("dir", dir)->required();

  auto* scan_cmd = app.add_subcommand("scan", "sample the secular determinants");
  scan_cmd->add_option("file", file)->required();
  scan_cmd->add_option("--kmin", kmin)->required();
  scan_cmd->add_option("--kmax", kmax)->required();
  scan_cmd->add_option("--samples", samples);
  scan_cmd->add_option("--out", out, "output path, - for stdout");

  auto* eigs = app.add_subcommand("eigs", "eigenvalues with classification");
  eigs->add_option("file", file)->required();
  eigs->add_option("--kmin", kmin)->required();
  eigs->add_option("--kmax", kmax)->required();
  eigs->add_option("--tol", tol, "root refinement tolerance");

  auto* topo = app.add_subcommand("topo", "topological states at k");
  topo->add_option("file", file)->required();
  topo->add_option("--k", k)->required();

  auto* cs = app.add_subcommand("casestudy", "run a built-in case study");
  cs->add_option("index", index)->required()->check(CLI::Range(1, 6));
  cs->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    if (rc != 0) {
      std::cerr << "error: " << to_string(ErrorKind::Argument) << '\n';
      return exit_code(ErrorKind::Argument);
    }
    return 0;
  }

  try {
    if (*info) cmd_info(file);
    if (*matrices) cmd_matrices(file, dir);
    if (*scan_cmd) cmd_scan(file, kmin, kmax, samples, out);
    if (*eigs) cmd_eigs(file, kmin, kmax, tol);
    if (*topo) cmd_topo(file, k);
    if (*cs) return cmd_casestudy(index, seed);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << to_string(ErrorKind::InternalConsistency) << ": "
              << e.what() << '\n';
    return exit_code(ErrorKind::InternalConsistency);
  }
  return 0;
}
