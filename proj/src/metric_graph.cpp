#include "qgraph/metric_graph.hpp"

#include "qgraph/errors.hpp"

#include <algorithm>

namespace qg {

MetricGraph::MetricGraph(CombinatorialGraph graph, std::vector<double> lengths,
                         std::vector<Potential> potentials)
    : graph_(std::move(graph)),
      lengths_(std::move(lengths)),
      potentials_(std::move(potentials)) {
  const auto m = static_cast<std::size_t>(graph_.edge_count());
  if (lengths_.size() != m || potentials_.size() != m) {
    throw Error(ErrorKind::Validation,
                "metric graph needs one length and potential per edge");
  }
  for (std::size_t j = 0; j < m; ++j) validate_potential(potentials_[j], lengths_[j]);
}

MetricGraph::MetricGraph(CombinatorialGraph graph, std::vector<double> lengths)
    : MetricGraph(graph, lengths,
                  std::vector<Potential>(lengths.size(), ZeroPotential{})) {}

double MetricGraph::length(int e) const {
  return lengths_[static_cast<std::size_t>(e % graph_.edge_count())];
}

const Potential& MetricGraph::potential(int undirected) const {
  return potentials_[static_cast<std::size_t>(undirected)];
}

bool MetricGraph::all_potentials_zero() const {
  return std::all_of(potentials_.begin(), potentials_.end(),
                     [](const Potential& p) { return is_zero_potential(p); });
}

TransferMatrix MetricGraph::transfer(int e, double k) const {
  const int m = graph_.edge_count();
  const int base = e % m;
  const TransferMatrix phi = edge_transfer(potential(base), length(base), k);
  return e < m ? phi : reverse_transfer(phi);
}

std::vector<TransferMatrix> MetricGraph::transfers(double k) const {
  const int m = graph_.edge_count();
  std::vector<TransferMatrix> out(static_cast<std::size_t>(2 * m));
  for (int e = 0; e < m; ++e) {
    const TransferMatrix phi = edge_transfer(potential(e), length(e), k);
    out[static_cast<std::size_t>(e)] = phi;
    out[static_cast<std::size_t>(e + m)] = reverse_transfer(phi);
  }
  return out;
}

MetricGraph glue_at_vertices(const MetricGraph& g1, int v1,
                             const MetricGraph& g2, int v2) {
  CombinatorialGraph glued = glue_at_vertices(g1.graph(), v1, g2.graph(), v2);
  std::vector<double> lengths = g1.lengths();
  lengths.insert(lengths.end(), g2.lengths().begin(), g2.lengths().end());
  std::vector<Potential> pots = g1.potentials();
  pots.insert(pots.end(), g2.potentials().begin(), g2.potentials().end());
  return MetricGraph(std::move(glued), std::move(lengths), std::move(pots));
}

MetricGraph rescaled(const MetricGraph& g, double factor) {
  if (!g.all_potentials_zero()) {
    throw Error(ErrorKind::NonzeroPotential, "rescaling needs V = 0");
  }
  std::vector<double> lengths = g.lengths();
  for (double& l : lengths) l *= factor;
  return MetricGraph(g.graph(), std::move(lengths));
}

}  // namespace qg
