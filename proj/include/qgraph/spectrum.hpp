#pragma once

// Root location in k, null spaces at a root and the three-way classification
// of eigenvalues into topological, non-topological and mixed.

#include "qgraph/linalg.hpp"
#include "qgraph/secular.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace qg {

/// Relative singular-value threshold for every null space computed here.
inline constexpr double kNullTolerance = 1e-8;
/// Grid density used when the caller gives none.
inline constexpr double kDefaultSamplesPerUnitK = 1000.0;
inline constexpr double kDefaultRefineTol = 1e-9;

enum ScanChannel : unsigned {
  kChannelBond = 1u << 0,
  kChannelOnePlusPhiTau = 1u << 1,
  kChannelVertex = 1u << 2,
  kChannelOracle = 1u << 3,
  kAllChannels = 0xfu,
};

/// Secular channels on a uniform grid. Channels not requested hold NaN; the
/// vertex determinant is NaN wherever is_pole is set.
struct ScanResult {
  std::vector<double> k;
  std::vector<double> det_bond;
  std::vector<double> det_one_plus_phi_tau;
  std::vector<double> det_vertex;
  std::vector<bool> is_pole;
  std::vector<double> det_oracle;

  std::size_t size() const { return k.size(); }
};

/// Grid of `samples` points from kmin to kmax inclusive. Throws
/// Error(Argument) unless 0 < kmin < kmax and samples >= 2.
ScanResult scan(const SecularSystem& sys, double kmin, double kmax,
                std::size_t samples, unsigned channels = kAllChannels);
ScanResult scan(const MetricGraph& g, double kmin, double kmax,
                std::size_t samples);

/// Default sample count for [kmin, kmax].
std::size_t default_samples(double kmin, double kmax);

struct RootOptions {
  double refine_tol = kDefaultRefineTol;
  /// Grid minima whose (estimated) relative sigma_min exceeds this are not
  /// refined further.
  double probe_threshold = 0.05;
  /// A refined minimum is a root when its relative sigma_min is at most this.
  double accept_threshold = 1e-8;
};

/// Roots of a determinant sampled on `ks`. Sign changes are bisected on
/// `det`; local minima of |det| (roots of even order give no sign change) are
/// refined by golden-section search on `rel_sigma`, the relative smallest
/// singular value of the underlying matrix. Roots closer than
/// 10 * refine_tol are merged, as are roots within 1e4 * refine_tol with no
/// clearly regular point between them. Sorted ascending.
std::vector<double> locate_roots(std::span<const double> ks,
                                 std::span<const double> dets,
                                 const std::function<double(double)>& det,
                                 const std::function<double(double)>& rel_sigma,
                                 const RootOptions& opt = {});

/// As above, but candidate minima are taken from `estimate` (a cheap
/// approximation of rel_sigma) evaluated on the whole grid and refined on it;
/// `rel_sigma` is only used to accept the result. This also separates roots
/// of even order that share a grid cell with another root.
std::vector<double> locate_roots(std::span<const double> ks,
                                 std::span<const double> dets,
                                 const std::function<double(double)>& det,
                                 const std::function<double(double)>& rel_sigma,
                                 const std::function<double(double)>& estimate,
                                 const RootOptions& opt = {});

/// Roots of the bond determinant within the scanned window.
std::vector<double> find_roots(const SecularSystem& sys, const ScanResult& s,
                               const RootOptions& opt = {});
/// Roots of the direct matching oracle within the scanned window.
std::vector<double> find_oracle_roots(const SecularSystem& sys,
                                      const ScanResult& s,
                                      const RootOptions& opt = {});

/// Spurious marks a root of the bond determinant that carries no
/// eigenfunction: null(I - Phi Ŝ) is nontrivial but none of it is
/// consistent. This happens for V != 0, where the bond determinant also
/// vanishes on the spectrum of the companion problem (values summing to zero,
/// equal derivatives) that V = 0 maps onto the Kirchhoff one by u -> u'.
enum class EigenClass { Topological, NonTopological, Mixed, Spurious };
std::string_view to_string(EigenClass c);

struct EigenvalueRecord {
  double k = 0.0;
  /// |det(I - Phi Ŝ)| at k.
  double residual = 0.0;
  /// Relative smallest singular value of the row-equilibrated bond matrix.
  double sigma_rel = 0.0;
  /// Eigenfunctions: counterpart vectors in null(I - Phi Ŝ) whose e and -e
  /// blocks agree.
  int multiplicity = 0;
  /// dim null(I - Phi Ŝ) without the agreement constraint.
  int bond_nullity = 0;
  /// dim null of the direct matching system.
  int oracle_multiplicity = 0;
  /// Set when multiplicity and oracle_multiplicity differ.
  bool multiplicity_mismatch = false;
  int dim_topological = 0;
  EigenClass eigen_class = EigenClass::NonTopological;
  /// Orthonormal counterpart vectors (4m x multiplicity).
  Matrix basis;
  /// Orthonormal basis of the topological part (4m x dim_topological).
  Matrix topological_basis;
};

/// Threshold on sigma_rel above which classify refuses k.
inline constexpr double kNotARootThreshold = 1e-6;

/// Null spaces at k. Throws Error(NotARoot) when the bond matrix is not
/// numerically singular.
EigenvalueRecord classify(const SecularSystem& sys, double k);
EigenvalueRecord classify(const MetricGraph& g, double k);

/// scan + find_roots + classify.
std::vector<EigenvalueRecord> eigenvalues(const SecularSystem& sys,
                                          double kmin, double kmax,
                                          std::size_t samples,
                                          const RootOptions& opt = {});

struct TopologicalResiduals {
  double norm = 0.0;
  double s_plus_tau = 0.0;   // |(Ŝ + τ̂) x|
  double twisted = 0.0;      // |δ̂_s D̂^{-1} δ̂_t* x|
  double max_value = 0.0;    // max over directed edges of |value component|

  /// All three residuals within tol * |x|.
  bool passes(double tol = 1e-8) const;
};

/// Throws Error(Argument) for the zero vector or a wrong size.
TopologicalResiduals verify_topological(const SecularSystem& sys,
                                        const Vector& x);

struct Eigenfunction {
  /// Per undirected edge, samples of psi at i * l_e / (samples - 1).
  std::vector<std::vector<double>> values;
  /// Per undirected edge, (value, derivative) at the edge's source.
  std::vector<Eigen::Vector2d> amplitudes;
  double sup_norm = 0.0;
  /// Largest value mismatch among the ends meeting at a vertex.
  double continuity_residual = 0.0;
  /// Largest |sum of outgoing derivatives| over vertices.
  double kirchhoff_residual = 0.0;
  /// Largest |x_e - Phi_e J x_{-e}| relative to |x|.
  double consistency_residual = 0.0;
};

/// Reads each edge's start data from the block of its reversal. Throws
/// Error(InconsistentCounterpart) when the e and -e blocks disagree by more
/// than 1e-7 |x|, Error(Argument) for samples_per_edge < 2.
Eigenfunction reconstruct_eigenfunction(const SecularSystem& sys,
                                        const Vector& x, double k,
                                        std::size_t samples_per_edge);

}  // namespace qg
