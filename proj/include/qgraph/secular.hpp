#pragma once

// Secular objects of a quantum graph at a real spectral parameter k:
//
//   bond form      I_4m - Phi(k) Ŝ,            Ŝ = S ⊗ I_2
//   pole factor    I_4m + Phi(k) τ̂
//   vertex form    δ̂_t* (2 (I + Phi τ̂)^{-1} - I) δ̂_t       (2n x 2n)
//   KS form        n x n complex matrix, V = 0 only
//   oracle         2m x 2m continuity + Kirchhoff system on edge amplitudes
//
// Counterpart vectors carry one 2-block per directed edge in edge-major
// order: the value and the derivative along e, both at the terminal vertex
// t(e). The start data of e is then J x_{-e} with J = diag(1, -1), and
// Ŝ maps the terminal data arriving at a vertex to the start data leaving it.

#include "qgraph/linalg.hpp"
#include "qgraph/metric_graph.hpp"

#include <vector>

namespace qg {

/// Relative threshold on |2 - tr(Phi_e Phi_{-e})| / (1 + max|Phi_e Phi_{-e}|)
/// below which an edge is doubled-edge periodic and the vertex forms are
/// treated as singular.
inline constexpr double kPoleTolerance = 1e-10;

struct PoleReport {
  bool is_pole = false;
  double worst = 0.0;  // smallest relative |2 - tr M_e| over edges
  int edge = -1;       // undirected edge attaining it
};

/// Caches the k-independent pieces (Ŝ, τ̂, incidence blocks) for one graph.
class SecularSystem {
 public:
  explicit SecularSystem(MetricGraph graph);

  const MetricGraph& graph() const { return graph_; }
  const Matrix& scattering() const { return s_; }
  const Matrix& scattering_hat() const { return s_hat_; }
  const Matrix& tau_hat() const { return tau_hat_; }
  /// δ̂_t* = δ_t* ⊗ I_2, 2n x 4m.
  const Matrix& incidence_t_hat() const { return dt_hat_; }
  const Matrix& incidence_s_hat() const { return ds_hat_; }
  /// Diagonal of D^{-1} ⊗ I_2.
  const Vector& inverse_degree_hat() const { return inv_deg_hat_; }

  /// Transfer matrices of all 2m directed edges at k. Every k-dependent
  /// method has an overload taking them, so one evaluation can be shared.
  std::vector<TransferMatrix> transfers(double k) const {
    return graph_.transfers(k);
  }

  Matrix phi(double k) const;
  Matrix bond_matrix(double k) const { return bond_matrix(transfers(k)); }
  Matrix bond_matrix(const std::vector<TransferMatrix>& phis) const;
  double bond_det(double k) const;
  Matrix one_plus_phi_tau(double k) const {
    return one_plus_phi_tau(transfers(k));
  }
  Matrix one_plus_phi_tau(const std::vector<TransferMatrix>& phis) const;
  double one_plus_phi_tau_det(double k) const;
  /// Product over edges of (2 - tr(Phi_e Phi_{-e})); equals the determinant
  /// above.
  double one_plus_phi_tau_det_by_edges(double k) const;
  PoleReport poles(double k) const { return poles(transfers(k)); }
  PoleReport poles(const std::vector<TransferMatrix>& phis) const;

  /// Both vertex forms throw Error(PoleAtK) at doubled-edge periodic k.
  Matrix vertex_direct(double k) const { return vertex_direct(k, transfers(k)); }
  Matrix vertex_direct(double k, const std::vector<TransferMatrix>& phis) const;
  Matrix vertex_blocks(double k) const;
  ComplexMatrix ks(double k) const;
  Matrix oracle(double k) const { return oracle(transfers(k)); }
  Matrix oracle(const std::vector<TransferMatrix>& phis) const;

  // Balanced forms. Tunnelling edges (k^2 below the potential) make Phi_e
  // grow like e^{wl} and its two rows nearly parallel, so the plain matrices
  // look singular at every k. With Phi_e = U diag(s1, s2) V^T, each block row
  // is multiplied by diag(1/s1, 1) U^T (bond, pole factor, consistency) and
  // each oracle amplitude pair is expressed in the basis V diag(1/s1, 1).
  // These are invertible block transforms: singularity and nullity are
  // unchanged, and the oracle null vectors map back through that basis.
  Matrix bond_balanced(const std::vector<TransferMatrix>& phis) const;
  Matrix one_plus_phi_tau_balanced(
      const std::vector<TransferMatrix>& phis) const;
  Matrix consistency_balanced(const std::vector<TransferMatrix>& phis) const;
  Matrix oracle_balanced(const std::vector<TransferMatrix>& phis) const;

  /// I - Phi Ĵ τ̂: its null space holds the counterpart vectors whose e and
  /// -e blocks describe the same function on each edge.
  Matrix consistency(double k) const { return consistency(transfers(k)); }
  Matrix consistency(const std::vector<TransferMatrix>& phis) const;

 private:
  void require_no_pole(double k,
                       const std::vector<TransferMatrix>& phis) const;

  MetricGraph graph_;
  Matrix s_;
  Matrix s_hat_;
  Matrix tau_hat_;
  Matrix dt_hat_;
  Matrix ds_hat_;
  Vector inv_deg_hat_;
};

/// BMat layout: blocks e_1..e_m then -e_1..-e_m.
Matrix phi_block(const MetricGraph& g, double k);
Matrix bond_secular_matrix(const MetricGraph& g, double k);
double bond_secular_det(const MetricGraph& g, double k);
double one_plus_phi_tau_det(const MetricGraph& g, double k);

/// Vertex form through the global inverse (I - Phi τ̂)(I - BMat[Phi_e Phi_-e])^{-1}.
/// Throws Error(PoleAtK) on doubled-edge periodic k.
Matrix vertex_secular_direct(const MetricGraph& g, double k);
/// Vertex form assembled block by block:
///   (v, v): sum over e into v of (Phi_-e^{-1} + Phi_e)(Phi_-e^{-1} - Phi_e)^{-1}
///   (v, w): -2 sum over e: v -> w of (Phi_-e^{-1} - Phi_e)^{-1}
Matrix vertex_secular_blocks(const MetricGraph& g, double k);

/// Kottos-Smilansky vertex matrix (overall factor i kept). Throws
/// Error(NonzeroPotential) unless V = 0 and Error(PoleAtK) at sin(k l_e) = 0.
ComplexMatrix ks_matrix(const MetricGraph& g, double k);

/// Direct matching system: unknowns (A_e, B_e) = (value, derivative) at the
/// source of each undirected edge; rows are continuity and Kirchhoff at every
/// vertex. Singular exactly when k^2 is an eigenvalue.
Matrix oracle_secular(const MetricGraph& g, double k);
double oracle_det(const MetricGraph& g, double k);

/// Counterpart vector (4m) of the eigenfunction with edge amplitudes `ab`
/// (2m, as in oracle_secular).
Vector counterpart_from_amplitudes(const MetricGraph& g, double k,
                                   const Vector& ab);

}  // namespace qg
