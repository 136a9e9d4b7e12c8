#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>

namespace qg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Orthonormal basis of an (approximate) null space, columns of `basis`.
struct NullSpace {
  Matrix basis;
  double sigma_max = 0.0;
  double sigma_min = 0.0;  // smallest singular value of the input

  Eigen::Index dimension() const { return basis.cols(); }
};

/// Determinant by partial-pivot LU.
double determinant(const Matrix& m);
std::complex<double> determinant(const ComplexMatrix& m);

/// Right singular vectors with sigma <= tol * sigma_max. A zero matrix has the
/// whole space as its null space.
NullSpace null_space(const Matrix& m, double tol);

/// Scales every nonzero row to unit max-norm. Leaves the null space unchanged
/// and makes singular-value thresholds meaningful when rows differ in scale by
/// many orders of magnitude (transfer matrices with k^2 far below V).
Matrix equilibrate_rows(const Matrix& m);

/// Smallest singular value of the row-equilibrated matrix divided by its
/// largest one.
double relative_sigma_min(const Matrix& m);

/// Cheap stand-in for relative_sigma_min on square matrices: inverse
/// iteration on one LU factorization of the row-equilibrated matrix, scaled
/// by its Frobenius norm. Zero when the factorization is singular. Good for
/// locating minima; certify with relative_sigma_min.
double sigma_min_estimate(const Matrix& m);

/// Number of principal angles between the column spans of two orthonormal
/// bases whose cosine exceeds 1 - tol.
Eigen::Index intersection_dimension(const Matrix& a, const Matrix& b,
                                    double tol);

/// Orthonormal basis of span(a) ∩ span(b) (both orthonormal).
Matrix intersection_basis(const Matrix& a, const Matrix& b, double tol);

double max_abs(const Matrix& m);
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Kronecker product m ⊗ I_2 in the edge-major / component-minor layout.
Matrix kron_identity2(const Matrix& m);

template <typename Scalar>
Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic> to_real(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m) {
  return m.template cast<double>();
}

}  // namespace qg
