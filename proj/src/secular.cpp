#include "qgraph/secular.hpp"

#include "qgraph/errors.hpp"
#include "qgraph/simd/kernels.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <string>

namespace qg {

namespace {

Matrix to_double(const IntMatrix& m) { return m.cast<double>(); }

// Row-major (a, b, c, d) of every directed edge, the layout the block kernel
// expects.
std::vector<double> packed_blocks(const std::vector<TransferMatrix>& phis) {
  std::vector<double> out;
  out.reserve(4 * phis.size());
  for (const auto& p : phis) {
    out.push_back(p(0, 0));
    out.push_back(p(0, 1));
    out.push_back(p(1, 0));
    out.push_back(p(1, 1));
  }
  return out;
}

Matrix apply_blocks(const std::vector<TransferMatrix>& phis, const Matrix& in) {
  Matrix out(in.rows(), in.cols());
  const auto blocks = packed_blocks(phis);
  simd::apply_block_diag2(blocks.data(), phis.size(), in.data(), out.data(),
                          static_cast<std::size_t>(in.cols()));
  return out;
}

// diag(1/s1, 1) U^T for Phi = U diag(s1, s2) V^T.
Eigen::Matrix2d left_balancer(const Eigen::Matrix2d& phi) {
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(phi, Eigen::ComputeFullU);
  Eigen::Matrix2d l = svd.matrixU().transpose();
  const double s1 = svd.singularValues()(0);
  if (s1 > 0.0) l.row(0) /= s1;
  return l;
}

// V diag(1/s1, 1) for Phi = U diag(s1, s2) V^T.
Eigen::Matrix2d right_balancer(const Eigen::Matrix2d& phi) {
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(phi, Eigen::ComputeFullV);
  Eigen::Matrix2d r = svd.matrixV();
  const double s1 = svd.singularValues()(0);
  if (s1 > 0.0) r.col(0) /= s1;
  return r;
}

Eigen::Matrix2d inverse2(const Eigen::Matrix2d& a) {
  const double det = a.determinant();
  Eigen::Matrix2d adj;
  adj << a(1, 1), -a(0, 1), -a(1, 0), a(0, 0);
  return adj / det;
}

std::string k_text(double k) { return std::to_string(k); }

}  // namespace

SecularSystem::SecularSystem(MetricGraph graph)
    : graph_(std::move(graph)),
      s_(bond_scattering(graph_.graph())),
      s_hat_(kron_identity2(s_)),
      tau_hat_(kron_identity2(to_double(tau_matrix(graph_.graph())))),
      dt_hat_(kron_identity2(to_double(incidence_t(graph_.graph())))),
      ds_hat_(kron_identity2(to_double(incidence_s(graph_.graph())))) {
  const auto& g = graph_.graph();
  inv_deg_hat_.resize(2 * g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    inv_deg_hat_(2 * v) = inv_deg_hat_(2 * v + 1) = 1.0 / g.degree(v);
  }
}

Matrix SecularSystem::phi(double k) const {
  const auto phis = graph_.transfers(k);
  const Eigen::Index n = 2 * static_cast<Eigen::Index>(phis.size());
  Matrix out = Matrix::Zero(n, n);
  for (std::size_t e = 0; e < phis.size(); ++e) {
    out.block<2, 2>(2 * static_cast<Eigen::Index>(e),
                    2 * static_cast<Eigen::Index>(e)) = phis[e];
  }
  return out;
}

Matrix SecularSystem::bond_matrix(
    const std::vector<TransferMatrix>& phis) const {
  Matrix m = -apply_blocks(phis, s_hat_);
  m.diagonal().array() += 1.0;
  return m;
}

double SecularSystem::bond_det(double k) const {
  return determinant(bond_matrix(k));
}

Matrix SecularSystem::one_plus_phi_tau(
    const std::vector<TransferMatrix>& phis) const {
  Matrix m = apply_blocks(phis, tau_hat_);
  m.diagonal().array() += 1.0;
  return m;
}

double SecularSystem::one_plus_phi_tau_det(double k) const {
  return determinant(one_plus_phi_tau(k));
}

double SecularSystem::one_plus_phi_tau_det_by_edges(double k) const {
  double prod = 1.0;
  for (int e = 0; e < graph_.edge_count(); ++e) {
    prod *= 2.0 - doubled_edge_matrix(graph_.transfer(e, k)).trace();
  }
  return prod;
}

PoleReport SecularSystem::poles(
    const std::vector<TransferMatrix>& phis) const {
  PoleReport r;
  r.worst = std::numeric_limits<double>::infinity();
  for (int e = 0; e < graph_.edge_count(); ++e) {
    const auto m = phis[static_cast<std::size_t>(e)] *
                   phis[static_cast<std::size_t>(e + graph_.edge_count())];
    const double rel =
        std::abs(2.0 - m.trace()) / (1.0 + m.cwiseAbs().maxCoeff());
    if (rel < r.worst) {
      r.worst = rel;
      r.edge = e;
    }
  }
  r.is_pole = r.worst < kPoleTolerance;
  return r;
}

void SecularSystem::require_no_pole(
    double k, const std::vector<TransferMatrix>& phis) const {
  const auto r = poles(phis);
  if (r.is_pole) {
    throw Error(ErrorKind::PoleAtK,
                "k = " + k_text(k) + " is doubled-edge periodic on edge " +
                    std::to_string(r.edge) +
                    "; the vertex secular form is undefined there");
  }
}

Matrix SecularSystem::vertex_direct(
    double k, const std::vector<TransferMatrix>& phis) const {
  require_no_pole(k, phis);
  const int m = graph_.edge_count();
  std::vector<TransferMatrix> inv_round(phis.size());
  for (int e = 0; e < 2 * m; ++e) {
    const int r = graph_.graph().reverse(e);
    inv_round[static_cast<std::size_t>(e)] =
        inverse2(Eigen::Matrix2d::Identity() -
                 phis[static_cast<std::size_t>(e)] *
                     phis[static_cast<std::size_t>(r)]);
  }
  // (I + Phi τ̂)^{-1} = (I - Phi τ̂) BMat[(I - Phi_e Phi_-e)^{-1}]
  Matrix lhs = -apply_blocks(phis, tau_hat_);
  lhs.diagonal().array() += 1.0;
  Matrix bm = Matrix::Zero(4 * m, 4 * m);
  for (int e = 0; e < 2 * m; ++e) {
    bm.block<2, 2>(2 * e, 2 * e) = inv_round[static_cast<std::size_t>(e)];
  }
  Matrix inner = 2.0 * (lhs * bm);
  inner.diagonal().array() -= 1.0;
  return dt_hat_ * inner * dt_hat_.transpose();
}

Matrix SecularSystem::vertex_blocks(double k) const {
  const auto phis = transfers(k);
  require_no_pole(k, phis);
  const auto& g = graph_.graph();
  const int n = g.vertex_count();
  Matrix out = Matrix::Zero(2 * n, 2 * n);
  for (int e = 0; e < g.directed_count(); ++e) {
    const auto& p = phis[static_cast<std::size_t>(e)];
    const auto pr_inv =
        inverse2(phis[static_cast<std::size_t>(g.reverse(e))]);
    const auto x_inv = inverse2(pr_inv - p);
    const int v = g.target(e);
    const int w = g.source(e);
    out.block<2, 2>(2 * v, 2 * v) += (pr_inv + p) * x_inv;
    out.block<2, 2>(2 * w, 2 * v) -= 2.0 * x_inv;
  }
  return out;
}

ComplexMatrix SecularSystem::ks(double k) const {
  if (!graph_.all_potentials_zero()) {
    throw Error(ErrorKind::NonzeroPotential,
                "the KS vertex matrix is defined only for V = 0");
  }
  require_no_pole(k, transfers(k));
  const auto& g = graph_.graph();
  const int n = g.vertex_count();
  const std::complex<double> i(0.0, 1.0);
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (int e = 0; e < g.edge_count(); ++e) {
    const double kl = k * graph_.length(e);
    const int a = g.source(e);
    const int b = g.target(e);
    const double c = std::cos(kl) / std::sin(kl);
    out(a, a) += i * c / static_cast<double>(g.degree(a));
    out(b, b) += i * c / static_cast<double>(g.degree(b));
    const std::complex<double> off =
        -i / (std::sqrt(static_cast<double>(g.degree(a)) * g.degree(b)) *
              std::sin(kl));
    out(a, b) += off;
    out(b, a) += off;
  }
  return out;
}

Matrix SecularSystem::oracle(
    const std::vector<TransferMatrix>& phis) const {
  const auto& g = graph_.graph();
  const int m = g.edge_count();
  Matrix out = Matrix::Zero(2 * m, 2 * m);
  Eigen::Index row = 0;
  // Value and outgoing derivative at the source end of directed edge e as
  // linear forms in the amplitudes of its undirected edge.
  auto end_forms = [&](int e, Eigen::RowVector2d& value,
                       Eigen::RowVector2d& deriv) {
    if (e < m) {
      value << 1.0, 0.0;
      deriv << 0.0, 1.0;
    } else {
      const auto& phi = phis[static_cast<std::size_t>(e - m)];
      value = phi.row(0);
      deriv = -phi.row(1);
    }
  };
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto ends = g.out_edges(v);
    Eigen::RowVector2d v0, d0;
    end_forms(ends.front(), v0, d0);
    const int u0 = ends.front() % m;
    Eigen::RowVectorXd kirchhoff = Eigen::RowVectorXd::Zero(2 * m);
    kirchhoff.segment<2>(2 * u0) += d0;
    for (std::size_t j = 1; j < ends.size(); ++j) {
      Eigen::RowVector2d vj, dj;
      end_forms(ends[j], vj, dj);
      const int uj = ends[j] % m;
      out.block<1, 2>(row, 2 * uj) += vj;
      out.block<1, 2>(row, 2 * u0) -= v0;
      ++row;
      kirchhoff.segment<2>(2 * uj) += dj;
    }
    out.row(row++) = kirchhoff;
  }
  return out;
}

Matrix SecularSystem::consistency(
    const std::vector<TransferMatrix>& phis) const {
  // Row block e: x_e - Phi_e J x_{-e}.
  const int m = graph_.edge_count();
  Matrix out = Matrix::Identity(4 * m, 4 * m);
  for (int e = 0; e < 2 * m; ++e) {
    TransferMatrix pj = phis[static_cast<std::size_t>(e)];
    pj.col(1) *= -1.0;
    out.block<2, 2>(2 * e, 2 * graph_.graph().reverse(e)) = -pj;
  }
  return out;
}

Matrix SecularSystem::bond_balanced(
    const std::vector<TransferMatrix>& phis) const {
  std::vector<TransferMatrix> ls;
  ls.reserve(phis.size());
  for (const auto& p : phis) ls.push_back(left_balancer(p));
  return apply_blocks(ls, bond_matrix(phis));
}

Matrix SecularSystem::one_plus_phi_tau_balanced(
    const std::vector<TransferMatrix>& phis) const {
  std::vector<TransferMatrix> ls;
  ls.reserve(phis.size());
  for (const auto& p : phis) ls.push_back(left_balancer(p));
  return apply_blocks(ls, one_plus_phi_tau(phis));
}

Matrix SecularSystem::consistency_balanced(
    const std::vector<TransferMatrix>& phis) const {
  std::vector<TransferMatrix> ls;
  ls.reserve(phis.size());
  for (const auto& p : phis) ls.push_back(left_balancer(p));
  return apply_blocks(ls, consistency(phis));
}

Matrix SecularSystem::oracle_balanced(
    const std::vector<TransferMatrix>& phis) const {
  // O R = (R^T O^T)^T with R = BMat[right_balancer(Phi_e)], e undirected.
  const int m = graph_.edge_count();
  std::vector<TransferMatrix> rt;
  rt.reserve(static_cast<std::size_t>(m));
  for (int e = 0; e < m; ++e) {
    rt.push_back(right_balancer(phis[static_cast<std::size_t>(e)]).transpose());
  }
  const Matrix ot = oracle(phis).transpose();
  return apply_blocks(rt, ot).transpose();
}

Matrix phi_block(const MetricGraph& g, double k) {
  return SecularSystem(g).phi(k);
}

Matrix bond_secular_matrix(const MetricGraph& g, double k) {
  return SecularSystem(g).bond_matrix(k);
}

double bond_secular_det(const MetricGraph& g, double k) {
  return SecularSystem(g).bond_det(k);
}

double one_plus_phi_tau_det(const MetricGraph& g, double k) {
  return SecularSystem(g).one_plus_phi_tau_det(k);
}

Matrix vertex_secular_direct(const MetricGraph& g, double k) {
  return SecularSystem(g).vertex_direct(k);
}

Matrix vertex_secular_blocks(const MetricGraph& g, double k) {
  return SecularSystem(g).vertex_blocks(k);
}

ComplexMatrix ks_matrix(const MetricGraph& g, double k) {
  return SecularSystem(g).ks(k);
}

Matrix oracle_secular(const MetricGraph& g, double k) {
  return SecularSystem(g).oracle(k);
}

double oracle_det(const MetricGraph& g, double k) {
  return determinant(oracle_secular(g, k));
}

Vector counterpart_from_amplitudes(const MetricGraph& g, double k,
                                   const Vector& ab) {
  const int m = g.edge_count();
  if (ab.size() != 2 * m) {
    throw Error(ErrorKind::Argument, "amplitude vector has size " +
                                         std::to_string(ab.size()) +
                                         ", expected " + std::to_string(2 * m));
  }
  Vector x(4 * m);
  for (int e = 0; e < m; ++e) {
    const Eigen::Vector2d a = ab.segment<2>(2 * e);
    x.segment<2>(2 * e) = g.transfer(e, k) * a;
    x.segment<2>(2 * (e + m)) = Eigen::Vector2d(a(0), -a(1));
  }
  return x;
}

}  // namespace qg
