#pragma once

#include "qgraph/graph.hpp"
#include "qgraph/transfer.hpp"

#include <vector>

namespace qg {

/// Combinatorial graph plus a length and potential per undirected edge.
/// Potentials are read from the source of the edge's input orientation.
class MetricGraph {
 public:
  MetricGraph(CombinatorialGraph graph, std::vector<double> lengths,
              std::vector<Potential> potentials);
  /// All potentials zero.
  MetricGraph(CombinatorialGraph graph, std::vector<double> lengths);

  const CombinatorialGraph& graph() const { return graph_; }
  int edge_count() const { return graph_.edge_count(); }
  int vertex_count() const { return graph_.vertex_count(); }
  double length(int e) const;  // any directed index
  const Potential& potential(int undirected) const;
  const std::vector<double>& lengths() const { return lengths_; }
  const std::vector<Potential>& potentials() const { return potentials_; }
  bool all_potentials_zero() const;

  /// Phi_e(k) for a directed edge; reversals go through reverse_transfer.
  TransferMatrix transfer(int e, double k) const;
  /// Transfer matrices of all 2m directed edges in edge-major order.
  std::vector<TransferMatrix> transfers(double k) const;

  friend bool operator==(const MetricGraph&, const MetricGraph&) = default;

 private:
  CombinatorialGraph graph_;
  std::vector<double> lengths_;
  std::vector<Potential> potentials_;
};

/// Glues two metric graphs at a vertex pair, edge data carried along.
MetricGraph glue_at_vertices(const MetricGraph& g1, int v1,
                             const MetricGraph& g2, int v2);

/// Same graph with every length multiplied by `factor` (potentials must be
/// zero).
MetricGraph rescaled(const MetricGraph& g, double factor);

}  // namespace qg
