#pragma once

// Per-edge transfer matrices for -u'' + V u = k^2 u.
//
//   Phi_e(k) = [[psi1(l), psi2(l)], [psi1'(l), psi2'(l)]]
//
// maps (value, derivative) at the source of an edge to (value, derivative
// along the edge) at its target. All supported potentials give det Phi = 1.

#include <Eigen/Dense>

#include <span>
#include <variant>
#include <vector>

namespace qg {

using TransferMatrix = Eigen::Matrix2d;

struct ZeroPotential {
  friend bool operator==(const ZeroPotential&, const ZeroPotential&) = default;
};

struct ConstantPotential {
  double value = 0.0;
  friend bool operator==(const ConstantPotential&,
                         const ConstantPotential&) = default;
};

struct PotentialSegment {
  double length = 0.0;
  double value = 0.0;
  friend bool operator==(const PotentialSegment&,
                         const PotentialSegment&) = default;
};

/// Segments listed from the source end.
struct PiecewisePotential {
  std::vector<PotentialSegment> segments;
  friend bool operator==(const PiecewisePotential&,
                         const PiecewisePotential&) = default;
};

/// Samples on a uniform grid from source to target, linearly interpolated.
struct SampledPotential {
  std::vector<double> values;
  friend bool operator==(const SampledPotential&,
                         const SampledPotential&) = default;
};

using Potential = std::variant<ZeroPotential, ConstantPotential,
                               PiecewisePotential, SampledPotential>;

/// Validates a potential against its edge length (segments positive and
/// summing to `length` within 1e-12, at least two samples). Throws
/// Error(Validation).
void validate_potential(const Potential& p, double length);

bool is_zero_potential(const Potential& p);

/// Integration steps used for sampled potentials when none are requested.
inline constexpr std::size_t kDefaultSampledSteps = 1024;

TransferMatrix propagate_constant(double q, double length, double k);
TransferMatrix propagate_piecewise(const PiecewisePotential& p, double k);
TransferMatrix propagate_sampled(const SampledPotential& p, double length,
                                 double k, std::size_t steps);

/// One transfer matrix per entry of `ks`, integrated lane-parallel.
std::vector<TransferMatrix> propagate_sampled_batch(
    const SampledPotential& p, double length, std::span<const double> ks,
    std::size_t steps);

/// Transfer matrix over [0, x] of an edge of total length `length`.
TransferMatrix propagate_partial(const Potential& p, double length, double x,
                                 double k,
                                 std::size_t steps = kDefaultSampledSteps);

TransferMatrix edge_transfer(const Potential& p, double length, double k,
                             std::size_t steps = kDefaultSampledSteps);

/// J Phi^{-1} J with J = diag(1, -1); the transfer matrix of the reversed
/// edge. Uses the adjugate divided by the determinant.
TransferMatrix reverse_transfer(const TransferMatrix& phi);

/// Phi_e Phi_{-e}: the round trip along the doubled edge.
TransferMatrix doubled_edge_matrix(const TransferMatrix& phi);

/// True when the doubled edge carries a periodic solution, |tr M - 2| <= tol.
bool is_doubled_edge_periodic(const TransferMatrix& phi, double tol);

}  // namespace qg
