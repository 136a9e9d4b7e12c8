#include "qgraph/spectrum.hpp"

#include "qgraph/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qg {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInvPhi = 0.6180339887498949;  // (sqrt 5 - 1) / 2

Matrix stack(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() + b.rows(), a.cols());
  out << a, b;
  return out;
}

double bisect(const std::function<double(double)>& f, double lo, double hi,
              double flo, double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct Minimum {
  double x;
  double fx;
};

Minimum golden_section(const std::function<double(double)>& f, double lo,
                       double hi, double tol) {
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? Minimum{x1, f1} : Minimum{x2, f2};
}

int null_dim(const Matrix& m) {
  return static_cast<int>(
      null_space(equilibrate_rows(m), kNullTolerance).dimension());
}

}  // namespace

std::size_t default_samples(double kmin, double kmax) {
  const double n = std::ceil((kmax - kmin) * kDefaultSamplesPerUnitK) + 1.0;
  return static_cast<std::size_t>(std::max(2.0, n));
}

ScanResult scan(const SecularSystem& sys, double kmin, double kmax,
                std::size_t samples, unsigned channels) {
  if (!(kmin > 0.0) || !(kmax > kmin) || !std::isfinite(kmax)) {
    throw Error(ErrorKind::Argument,
                "scan window needs 0 < kmin < kmax, got [" +
                    std::to_string(kmin) + ", " + std::to_string(kmax) + "]");
  }
  if (samples < 2) {
    throw Error(ErrorKind::Argument, "scan needs at least 2 samples");
  }
  ScanResult r;
  r.k.resize(samples);
  r.det_bond.assign(samples, kNaN);
  r.det_one_plus_phi_tau.assign(samples, kNaN);
  r.det_vertex.assign(samples, kNaN);
  r.is_pole.assign(samples, false);
  r.det_oracle.assign(samples, kNaN);
  const double h = (kmax - kmin) / static_cast<double>(samples - 1);
  for (std::size_t i = 0; i < samples; ++i) {
    const double k = i + 1 == samples ? kmax : kmin + static_cast<double>(i) * h;
    r.k[i] = k;
    const auto phis = sys.transfers(k);
    if (channels & kChannelBond) {
      r.det_bond[i] = determinant(sys.bond_matrix(phis));
    }
    if (channels & kChannelOnePlusPhiTau) {
      r.det_one_plus_phi_tau[i] = determinant(sys.one_plus_phi_tau(phis));
    }
    if (channels & kChannelVertex) {
      const bool pole = sys.poles(phis).is_pole;
      r.is_pole[i] = pole;
      if (!pole) r.det_vertex[i] = determinant(sys.vertex_direct(k, phis));
    }
    if (channels & kChannelOracle) {
      r.det_oracle[i] = determinant(sys.oracle(phis));
    }
  }
  return r;
}

ScanResult scan(const MetricGraph& g, double kmin, double kmax,
                std::size_t samples) {
  return scan(SecularSystem(g), kmin, kmax, samples);
}

namespace {

// Candidates within 10 * tol are one root. Farther apart but still close,
// two candidates are the same root unless the matrix is clearly regular
// between them; the better conditioned candidate is kept.
std::vector<double> merge_roots(std::vector<double> found, const RootOptions& opt,
                                const std::function<double(double)>& rel_sigma) {
  std::sort(found.begin(), found.end());
  const double tol = opt.refine_tol;
  std::vector<double> merged;
  double best = 0.0;
  for (double k : found) {
    if (!merged.empty() && k - merged.back() <= 10.0 * tol) continue;
    if (!merged.empty() && k - merged.back() <= 1e4 * tol &&
        rel_sigma(0.5 * (k + merged.back())) <= 100.0 * opt.accept_threshold) {
      const double sk = rel_sigma(k);
      if (sk < best) {
        merged.back() = k;
        best = sk;
      }
      continue;
    }
    merged.push_back(k);
    best = rel_sigma(k);
  }
  return merged;
}

void check_options(const RootOptions& opt) {
  if (!(opt.refine_tol > 0.0)) {
    throw Error(ErrorKind::Argument, "refine_tol must be positive");
  }
}

// A cell can hold several roots closer than the grid spacing. Once `root`
// is known inside [lo, hi], a sign mismatch between an end of the cell and
// the near side of the root means an odd number of further roots there.
void split_bracket(const std::function<double(double)>& det,
                   const std::function<double(double)>& rel_sigma, double lo,
                   double hi, double root, const RootOptions& opt,
                   std::vector<double>& found, int depth) {
  if (depth > 4) return;
  const double gap = 10.0 * opt.refine_tol;
  const double fine = 1e-2 * opt.refine_tol;
  auto sign_differs = [](double a, double b) {
    return std::isfinite(a) && std::isfinite(b) && a != 0.0 && b != 0.0 &&
           (a < 0.0) != (b < 0.0);
  };
  // Near the conditioning floor the determinant's sign is noise; a second
  // root only counts if the matrix is clearly regular between the two.
  auto separated = [&](double k) {
    return rel_sigma(0.5 * (k + root)) > 100.0 * opt.accept_threshold;
  };
  const double left = root - gap;
  if (left - lo > gap) {
    const double flo = det(lo);
    if (sign_differs(flo, det(left))) {
      const double k = bisect(det, lo, left, flo, fine);
      if (rel_sigma(k) <= opt.accept_threshold && separated(k)) {
        found.push_back(k);
        split_bracket(det, rel_sigma, lo, left, k, opt, found, depth + 1);
      }
    }
  }
  const double right = root + gap;
  if (hi - right > gap) {
    const double fr = det(right);
    if (sign_differs(fr, det(hi))) {
      const double k = bisect(det, right, hi, fr, fine);
      if (rel_sigma(k) <= opt.accept_threshold && separated(k)) {
        found.push_back(k);
        split_bracket(det, rel_sigma, right, hi, k, opt, found, depth + 1);
      }
    }
  }
}

// Even-order zeros leave no sign change, so the parity test above misses a
// second double root in the same cell. Search each side of `root` for its
// own minimum of the estimate instead.
void split_minimum(const std::function<double(double)>& estimate,
                   const std::function<double(double)>& rel_sigma, double lo,
                   double hi, double root, const RootOptions& opt,
                   std::vector<double>& found, int depth) {
  if (depth > 4) return;
  const double gap = 10.0 * opt.refine_tol;
  const double fine = 1e-2 * opt.refine_tol;
  auto accept = [&](double a, double b) {
    if (b - a <= gap) return;
    const auto m = golden_section(estimate, a, b, fine);
    if (std::abs(m.x - root) <= 2.0 * gap) return;
    if (m.fx > opt.probe_threshold) return;
    if (rel_sigma(m.x) > opt.accept_threshold) return;
    if (rel_sigma(0.5 * (m.x + root)) <= 100.0 * opt.accept_threshold) return;
    found.push_back(m.x);
    split_minimum(estimate, rel_sigma, a, b, m.x, opt, found, depth + 1);
  };
  accept(lo, root - gap);
  accept(root + gap, hi);
}

// Exact zeros on the grid and bisected sign changes, each confirmed by the
// singular-value test.
void bracketed_roots(std::span<const double> ks, std::span<const double> dets,
                     const std::function<double(double)>& det,
                     const std::function<double(double)>& rel_sigma,
                     const RootOptions& opt, std::vector<double>& found) {
  const double fine = 1e-2 * opt.refine_tol;
  const std::size_t n = std::min(ks.size(), dets.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (dets[i] == 0.0 && rel_sigma(ks[i]) <= opt.accept_threshold) {
      found.push_back(ks[i]);
    }
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = dets[i];
    const double b = dets[i + 1];
    if (!std::isfinite(a) || !std::isfinite(b) || a == 0.0 || b == 0.0) {
      continue;
    }
    if ((a < 0.0) != (b < 0.0)) {
      // The sign of a badly conditioned determinant can be noise, so a
      // bracketed root still has to pass the singular-value test.
      const double k = bisect(det, ks[i], ks[i + 1], a, fine);
      if (rel_sigma(k) <= opt.accept_threshold) {
        found.push_back(k);
        split_bracket(det, rel_sigma, ks[i], ks[i + 1], k, opt, found, 0);
      }
    }
  }
}

// Local minima of `profile` on the grid, including the two ends.
std::vector<std::size_t> grid_minima(std::span<const double> profile) {
  std::vector<std::size_t> out;
  const std::size_t n = profile.size();
  for (std::size_t i = 0; i < n && n >= 2; ++i) {
    const double b = profile[i];
    const double a = i > 0 ? profile[i - 1] : b;
    const double c = i + 1 < n ? profile[i + 1] : b;
    if (b <= a && b <= c) out.push_back(i);
  }
  return out;
}

}  // namespace

std::vector<double> locate_roots(std::span<const double> ks,
                                 std::span<const double> dets,
                                 const std::function<double(double)>& det,
                                 const std::function<double(double)>& rel_sigma,
                                 const RootOptions& opt) {
  check_options(opt);
  const double fine = 1e-2 * opt.refine_tol;
  std::vector<double> found;
  bracketed_roots(ks, dets, det, rel_sigma, opt, found);
  const std::size_t n = std::min(ks.size(), dets.size());
  std::vector<double> mag(n);
  for (std::size_t i = 0; i < n; ++i) mag[i] = std::abs(dets[i]);
  for (std::size_t i : grid_minima(mag)) {
    if (mag[i] == 0.0) continue;
    if (rel_sigma(ks[i]) > opt.probe_threshold) continue;
    const double lo = ks[i > 0 ? i - 1 : 0];
    const double hi = ks[i + 1 < n ? i + 1 : n - 1];
    const auto m = golden_section(rel_sigma, lo, hi, fine);
    if (m.fx <= opt.accept_threshold) {
      found.push_back(m.x);
      split_bracket(det, rel_sigma, lo, hi, m.x, opt, found, 0);
    }
  }
  return merge_roots(std::move(found), opt, rel_sigma);
}

std::vector<double> locate_roots(std::span<const double> ks,
                                 std::span<const double> dets,
                                 const std::function<double(double)>& det,
                                 const std::function<double(double)>& rel_sigma,
                                 const std::function<double(double)>& estimate,
                                 const RootOptions& opt) {
  check_options(opt);
  const double fine = 1e-2 * opt.refine_tol;
  std::vector<double> found;
  bracketed_roots(ks, dets, det, rel_sigma, opt, found);
  const std::size_t n = std::min(ks.size(), dets.size());
  std::vector<double> profile(n);
  for (std::size_t i = 0; i < n; ++i) profile[i] = estimate(ks[i]);
  for (std::size_t i : grid_minima(profile)) {
    if (profile[i] > opt.probe_threshold) continue;
    const double lo = ks[i > 0 ? i - 1 : 0];
    const double hi = ks[i + 1 < n ? i + 1 : n - 1];
    const auto m = golden_section(estimate, lo, hi, fine);
    if (m.fx <= opt.probe_threshold && rel_sigma(m.x) <= opt.accept_threshold) {
      found.push_back(m.x);
      split_bracket(det, rel_sigma, lo, hi, m.x, opt, found, 0);
      split_minimum(estimate, rel_sigma, lo, hi, m.x, opt, found, 0);
    }
  }
  return merge_roots(std::move(found), opt, rel_sigma);
}

std::vector<double> find_roots(const SecularSystem& sys, const ScanResult& s,
                               const RootOptions& opt) {
  return locate_roots(
      s.k, s.det_bond, [&](double k) { return sys.bond_det(k); },
      [&](double k) {
        return relative_sigma_min(sys.bond_balanced(sys.transfers(k)));
      },
      [&](double k) {
        return sigma_min_estimate(sys.bond_balanced(sys.transfers(k)));
      },
      opt);
}

std::vector<double> find_oracle_roots(const SecularSystem& sys,
                                      const ScanResult& s,
                                      const RootOptions& opt) {
  return locate_roots(
      s.k, s.det_oracle,
      [&](double k) { return determinant(sys.oracle(k)); },
      [&](double k) {
        return relative_sigma_min(sys.oracle_balanced(sys.transfers(k)));
      },
      [&](double k) {
        return sigma_min_estimate(sys.oracle_balanced(sys.transfers(k)));
      },
      opt);
}

std::string_view to_string(EigenClass c) {
  switch (c) {
    case EigenClass::Topological: return "topological";
    case EigenClass::NonTopological: return "non_topological";
    case EigenClass::Mixed: return "mixed";
    case EigenClass::Spurious: return "spurious";
  }
  return "unknown";
}

EigenvalueRecord classify(const SecularSystem& sys, double k) {
  const auto phis = sys.transfers(k);
  const Matrix bond = sys.bond_balanced(phis);
  EigenvalueRecord r;
  r.k = k;
  r.residual = std::abs(determinant(sys.bond_matrix(phis)));
  r.sigma_rel = relative_sigma_min(bond);
  if (r.sigma_rel > kNotARootThreshold) {
    throw Error(ErrorKind::NotARoot,
                "k = " + std::to_string(k) +
                    " is not a root: relative sigma_min of I - Phi S is " +
                    std::to_string(r.sigma_rel));
  }
  r.bond_nullity = null_dim(bond);
  const auto physical = null_space(
      equilibrate_rows(stack(bond, sys.consistency_balanced(phis))), kNullTolerance);
  r.basis = physical.basis;
  r.multiplicity = static_cast<int>(physical.dimension());
  r.oracle_multiplicity = null_dim(sys.oracle_balanced(phis));
  r.multiplicity_mismatch = r.multiplicity != r.oracle_multiplicity;
  const auto n2 = null_space(equilibrate_rows(sys.one_plus_phi_tau_balanced(phis)),
                             kNullTolerance);
  r.topological_basis = intersection_basis(r.basis, n2.basis, kNullTolerance);
  r.dim_topological = static_cast<int>(r.topological_basis.cols());
  if (r.multiplicity == 0) {
    r.eigen_class = EigenClass::Spurious;
  } else if (r.dim_topological == 0) {
    r.eigen_class = EigenClass::NonTopological;
  } else if (r.dim_topological == r.multiplicity) {
    r.eigen_class = EigenClass::Topological;
  } else {
    r.eigen_class = EigenClass::Mixed;
  }
  return r;
}

EigenvalueRecord classify(const MetricGraph& g, double k) {
  return classify(SecularSystem(g), k);
}

std::vector<EigenvalueRecord> eigenvalues(const SecularSystem& sys,
                                          double kmin, double kmax,
                                          std::size_t samples,
                                          const RootOptions& opt) {
  const auto s = scan(sys, kmin, kmax, samples, kChannelBond);
  std::vector<EigenvalueRecord> out;
  for (double k : find_roots(sys, s, opt)) out.push_back(classify(sys, k));
  return out;
}

bool TopologicalResiduals::passes(double tol) const {
  const double bound = tol * norm;
  return norm > 0.0 && s_plus_tau <= bound && twisted <= bound &&
         max_value <= bound;
}

TopologicalResiduals verify_topological(const SecularSystem& sys,
                                        const Vector& x) {
  const Eigen::Index n = 4 * sys.graph().edge_count();
  if (x.size() != n) {
    throw Error(ErrorKind::Argument, "counterpart vector has size " +
                                         std::to_string(x.size()) +
                                         ", expected " + std::to_string(n));
  }
  TopologicalResiduals r;
  r.norm = x.norm();
  if (!(r.norm > 0.0)) {
    throw Error(ErrorKind::Argument,
                "verify_topological needs a nonzero counterpart vector");
  }
  r.s_plus_tau = ((sys.scattering_hat() + sys.tau_hat()) * x).norm();
  const Vector at_vertices =
      sys.inverse_degree_hat().cwiseProduct(sys.incidence_t_hat() * x);
  r.twisted = (sys.incidence_s_hat().transpose() * at_vertices).norm();
  for (Eigen::Index e = 0; 2 * e < n; ++e) {
    r.max_value = std::max(r.max_value, std::abs(x(2 * e)));
  }
  return r;
}

Eigenfunction reconstruct_eigenfunction(const SecularSystem& sys,
                                        const Vector& x, double k,
                                        std::size_t samples_per_edge) {
  const auto& mg = sys.graph();
  const auto& g = mg.graph();
  const int m = g.edge_count();
  if (x.size() != 4 * m) {
    throw Error(ErrorKind::Argument, "counterpart vector has size " +
                                         std::to_string(x.size()) +
                                         ", expected " +
                                         std::to_string(4 * m));
  }
  if (samples_per_edge < 2) {
    throw Error(ErrorKind::Argument, "need at least 2 samples per edge");
  }
  const auto phis = sys.transfers(k);
  Eigenfunction f;
  const double xnorm = x.norm();
  for (int e = 0; e < m; ++e) {
    const Eigen::Vector2d back = x.segment<2>(2 * (e + m));
    const Eigen::Vector2d ab(back(0), -back(1));
    const double gap =
        (x.segment<2>(2 * e) - phis[static_cast<std::size_t>(e)] * ab).norm();
    f.consistency_residual =
        std::max(f.consistency_residual, xnorm > 0.0 ? gap / xnorm : gap);
    f.amplitudes.push_back(ab);
  }
  if (f.consistency_residual > 1e-7) {
    throw Error(ErrorKind::InconsistentCounterpart,
                "counterpart blocks of e and -e disagree (relative gap " +
                    std::to_string(f.consistency_residual) + ")");
  }
  for (int e = 0; e < m; ++e) {
    const double len = mg.length(e);
    const auto& ab = f.amplitudes[static_cast<std::size_t>(e)];
    std::vector<double> vals(samples_per_edge);
    for (std::size_t i = 0; i < samples_per_edge; ++i) {
      const double s = len * static_cast<double>(i) /
                       static_cast<double>(samples_per_edge - 1);
      const auto t = i == 0 ? TransferMatrix(TransferMatrix::Identity())
                     : i + 1 == samples_per_edge
                         ? phis[static_cast<std::size_t>(e)]
                         : propagate_partial(mg.potential(e), len, s, k);
      vals[i] = (t * ab)(0);
      f.sup_norm = std::max(f.sup_norm, std::abs(vals[i]));
    }
    f.values.push_back(std::move(vals));
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    double first = 0.0;
    double deriv_sum = 0.0;
    bool have_first = false;
    for (int e : g.out_edges(v)) {
      const int u = e % m;
      const auto& ab = f.amplitudes[static_cast<std::size_t>(u)];
      double value = ab(0);
      double deriv = ab(1);
      if (e >= m) {
        const Eigen::Vector2d far = phis[static_cast<std::size_t>(u)] * ab;
        value = far(0);
        deriv = -far(1);
      }
      if (!have_first) {
        first = value;
        have_first = true;
      }
      f.continuity_residual =
          std::max(f.continuity_residual, std::abs(value - first));
      deriv_sum += deriv;
    }
    f.kirchhoff_residual = std::max(f.kirchhoff_residual, std::abs(deriv_sum));
  }
  return f;
}

}  // namespace qg
