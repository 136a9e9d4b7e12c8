#pragma once

// Cycles, fixed vectors of the bond-scattering matrix and topological states
// built from Dirichlet solutions on spectrally equilateral cycles.

#include "qgraph/graph.hpp"
#include "qgraph/linalg.hpp"
#include "qgraph/metric_graph.hpp"

#include <optional>
#include <vector>

namespace qg {

/// Closed walk of directed edges: t(e_j) = s(e_{j+1}) cyclically, no directed
/// edge repeated, at least two edges.
struct Cycle {
  std::vector<int> edges;

  friend bool operator==(const Cycle&, const Cycle&) = default;
};

/// Closed, at least two edges, no edge used twice in either direction.
/// Throws Error(Validation) naming the first violated condition.
void validate_cycle(const CombinatorialGraph& g, const Cycle& c);

/// One cycle per non-tree edge of the BFS tree rooted at vertex 0: the
/// non-tree edge in its stored orientation followed by the tree path back.
/// Exactly betti(g) cycles, in edge-index order.
std::vector<Cycle> fundamental_cycles(const CombinatorialGraph& g);

/// +1 on the cycle's edges, -1 on their reversals (2m entries).
Vector cycle_fixed_vector(const CombinatorialGraph& g, const Cycle& c);

struct FixedSpace {
  Matrix even;  // Sx = x, τx = x
  Matrix odd;   // Sx = x, τx = -x

  Eigen::Index dimension() const { return even.cols() + odd.cols(); }
  Matrix basis() const;
};

/// Numerical null spaces of [S - I; τ - I] and [S - I; τ + I].
FixedSpace fixed_space(const CombinatorialGraph& g, double tol = 1e-9);

inline constexpr double kDirichletTolerance = 1e-9;
inline constexpr double kClosureTolerance = 1e-9;

/// True when k^2 is a Dirichlet eigenvalue of edge e: |Phi_e(k)[0, 1]| <= tol.
bool dirichlet_eigen_test(const MetricGraph& g, int e, double k,
                          double tol = kDirichletTolerance);

/// Cycles on which every edge passes dirichlet_eigen_test.
std::vector<Cycle> spectrally_equilateral_cycles(
    const MetricGraph& g, double k, const std::vector<Cycle>& cycles,
    double tol = kDirichletTolerance);

/// psi = c_j psi_2 on e_j with c_{j+1} = c_j psi_2'(l_j); a state exists iff
/// the product of the psi_2'(l_j) is 1. Returns the counterpart vector (4m,
/// terminal data per directed edge, zero off the cycle) or nullopt. Throws
/// Error(NotSpectrallyEquilateral) when some edge fails the Dirichlet test.
std::optional<Vector> construct_topological_state(const MetricGraph& g,
                                                  const Cycle& c, double k);

/// Product of psi_2'(l_j) over the cycle.
double closure_product(const MetricGraph& g, const Cycle& c, double k);

/// Cycle visiting `vertices` in order and returning to the first, using the
/// lowest-index edge between consecutive vertices. Throws Error(Validation)
/// if two consecutive vertices are not adjacent.
Cycle cycle_through(const CombinatorialGraph& g, const std::vector<int>& vertices);

}  // namespace qg
