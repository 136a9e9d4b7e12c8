#include "qgraph/linalg.hpp"

#include "qgraph/simd/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace qg {

double determinant(const Matrix& m) {
  if (m.rows() == 0) return 1.0;
  return Eigen::PartialPivLU<Matrix>(m).determinant();
}

std::complex<double> determinant(const ComplexMatrix& m) {
  if (m.rows() == 0) return 1.0;
  return Eigen::PartialPivLU<ComplexMatrix>(m).determinant();
}

NullSpace null_space(const Matrix& m, double tol) {
  NullSpace out;
  const Eigen::Index cols = m.cols();
  if (cols == 0) return out;
  if (m.rows() == 0) {
    out.basis = Matrix::Identity(cols, cols);
    return out;
  }
  // Pad to at least square so that the SVD yields a full set of right
  // singular vectors.
  Matrix a = m;
  if (a.rows() < cols) {
    a.conservativeResize(cols, Eigen::NoChange);
    a.bottomRows(cols - m.rows()).setZero();
  }
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  out.sigma_max = s(0);
  out.sigma_min = s(s.size() - 1);
  Eigen::Index rank = 0;
  const double cutoff = tol * out.sigma_max;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (out.sigma_max > 0.0 && s(i) > cutoff) ++rank;
  }
  out.basis = svd.matrixV().rightCols(cols - rank);
  return out;
}

Matrix equilibrate_rows(const Matrix& m) {
  Matrix out = m;
  for (Eigen::Index r = 0; r < out.rows(); ++r) {
    const double scale = out.row(r).cwiseAbs().maxCoeff();
    if (scale > 0.0) out.row(r) /= scale;
  }
  return out;
}

double relative_sigma_min(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(equilibrate_rows(m));
  const Vector& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0.0;
  if (m.rows() < m.cols()) return 0.0;
  return s(s.size() - 1) / s(0);
}

double sigma_min_estimate(const Matrix& m) {
  const Eigen::Index n = m.rows();
  if (n == 0 || m.cols() != n) return relative_sigma_min(m);
  const Matrix a = equilibrate_rows(m);
  const double fro = a.norm();
  if (fro == 0.0) return 0.0;
  const Eigen::PartialPivLU<Matrix> lu(a);
  // Fixed, nowhere-zero start vector so the estimate is a deterministic
  // function of the matrix.
  Vector x(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x(i) = 1.0 + 0.5 * std::sin(1.0 + 2.0 * static_cast<double>(i));
  }
  x.normalize();
  double growth = 0.0;
  for (int it = 0; it < 3; ++it) {
    const Vector y = lu.solve(x);
    growth = y.norm();
    if (!std::isfinite(growth)) return 0.0;
    const Vector z = lu.transpose().solve(y);
    const double zn = z.norm();
    if (!std::isfinite(zn) || zn == 0.0) return 0.0;
    x = z / zn;
  }
  const Vector y = lu.solve(x);
  growth = std::max(growth, y.norm());
  if (!std::isfinite(growth)) return 0.0;
  return 1.0 / (growth * fro);
}

Eigen::Index intersection_dimension(const Matrix& a, const Matrix& b,
                                    double tol) {
  if (a.cols() == 0 || b.cols() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(a.transpose() * b);
  Eigen::Index count = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > 1.0 - tol) ++count;
  }
  return count;
}

Matrix intersection_basis(const Matrix& a, const Matrix& b, double tol) {
  if (a.cols() == 0 || b.cols() == 0) return Matrix(a.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(a.transpose() * b, Eigen::ComputeFullU);
  Eigen::Index count = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > 1.0 - tol) ++count;
  }
  // Left principal vectors are orthonormal combinations of a's columns.
  return a * svd.matrixU().leftCols(count);
}

double max_abs(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
  return simd::max_abs_diff(a.data(), b.data(),
                            static_cast<std::size_t>(a.size()));
}

Matrix kron_identity2(const Matrix& m) {
  Matrix out = Matrix::Zero(2 * m.rows(), 2 * m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      out(2 * i, 2 * j) = m(i, j);
      out(2 * i + 1, 2 * j + 1) = m(i, j);
    }
  }
  return out;
}

}  // namespace qg
