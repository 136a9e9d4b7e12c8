#include "qgraph/transfer.hpp"

#include "qgraph/errors.hpp"
#include "qgraph/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qg {

namespace {

// Below this |omega * length| the trigonometric forms are replaced by their
// Taylor series so that k^2 = q is not a 0/0.
constexpr double kSeriesThreshold = 1e-4;

std::size_t checked_steps(std::size_t steps) {
  if (steps < 16) {
    throw Error(ErrorKind::Argument, "sampled propagation needs >= 16 steps");
  }
  return steps;
}

}  // namespace

void validate_potential(const Potential& p, double length) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw Error(ErrorKind::Validation, "edge length must be positive");
  }
  if (const auto* c = std::get_if<ConstantPotential>(&p)) {
    if (!std::isfinite(c->value)) {
      throw Error(ErrorKind::Validation, "potential value is not finite");
    }
  } else if (const auto* pw = std::get_if<PiecewisePotential>(&p)) {
    if (pw->segments.empty()) {
      throw Error(ErrorKind::Validation, "piecewise potential has no pieces");
    }
    double total = 0.0;
    for (const auto& s : pw->segments) {
      if (!(s.length > 0.0) || !std::isfinite(s.value)) {
        throw Error(ErrorKind::Validation,
                    "piecewise segment lengths must be positive");
      }
      total += s.length;
    }
    if (std::abs(total - length) > 1e-12 * std::max(1.0, length)) {
      throw Error(ErrorKind::Validation,
                  "piecewise lengths sum to " + std::to_string(total) +
                      " but the edge length is " + std::to_string(length));
    }
  } else if (const auto* s = std::get_if<SampledPotential>(&p)) {
    if (s->values.size() < 2) {
      throw Error(ErrorKind::Validation, "sampled potential needs >= 2 points");
    }
    for (double v : s->values) {
      if (!std::isfinite(v)) {
        throw Error(ErrorKind::Validation, "sampled potential is not finite");
      }
    }
  }
}

bool is_zero_potential(const Potential& p) {
  if (std::holds_alternative<ZeroPotential>(p)) return true;
  if (const auto* c = std::get_if<ConstantPotential>(&p)) return c->value == 0.0;
  if (const auto* pw = std::get_if<PiecewisePotential>(&p)) {
    return std::all_of(pw->segments.begin(), pw->segments.end(),
                       [](const PotentialSegment& s) { return s.value == 0.0; });
  }
  const auto& s = std::get<SampledPotential>(p);
  return std::all_of(s.values.begin(), s.values.end(),
                     [](double v) { return v == 0.0; });
}

TransferMatrix propagate_constant(double q, double length, double k) {
  const double w2 = k * k - q;  // omega^2
  const double z = w2 * length * length;
  double c = 0.0;
  double s = 0.0;  // sin(omega l) / omega
  if (std::abs(z) < kSeriesThreshold * kSeriesThreshold) {
    // cos = sum (-z)^n / (2n)!, sin/omega = l * sum (-z)^n / (2n+1)!
    double term_c = 1.0;
    double term_s = 1.0;
    c = 0.0;
    s = 0.0;
    for (int n = 0; n < 6; ++n) {
      c += term_c;
      s += term_s;
      term_c *= -z / static_cast<double>((2 * n + 1) * (2 * n + 2));
      term_s *= -z / static_cast<double>((2 * n + 2) * (2 * n + 3));
    }
    s *= length;
  } else if (w2 > 0.0) {
    const double omega = std::sqrt(w2);
    c = std::cos(omega * length);
    s = std::sin(omega * length) / omega;
  } else {
    const double kappa = std::sqrt(-w2);
    c = std::cosh(kappa * length);
    s = std::sinh(kappa * length) / kappa;
  }
  TransferMatrix out;
  out << c, s, -w2 * s, c;
  return out;
}

TransferMatrix propagate_piecewise(const PiecewisePotential& p, double k) {
  TransferMatrix out = TransferMatrix::Identity();
  for (const auto& seg : p.segments) {
    out = propagate_constant(seg.value, seg.length, k) * out;
  }
  return out;
}

TransferMatrix propagate_sampled(const SampledPotential& p, double length,
                                 double k, std::size_t steps) {
  const double ks[1] = {k};
  return propagate_sampled_batch(p, length, ks, steps).front();
}

std::vector<TransferMatrix> propagate_sampled_batch(
    const SampledPotential& p, double length, std::span<const double> ks,
    std::size_t steps) {
  checked_steps(steps);
  std::vector<double> k2(ks.size());
  std::transform(ks.begin(), ks.end(), k2.begin(),
                 [](double k) { return k * k; });
  std::vector<double> raw(4 * ks.size());
  simd::rk4_fundamental(p.values.data(), p.values.size(), length, length,
                        steps, k2.data(), k2.size(), raw.data());
  std::vector<TransferMatrix> out(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) {
    out[i] << raw[4 * i], raw[4 * i + 1], raw[4 * i + 2], raw[4 * i + 3];
  }
  return out;
}

TransferMatrix propagate_partial(const Potential& p, double length, double x,
                                 double k, std::size_t steps) {
  if (x <= 0.0) return TransferMatrix::Identity();
  x = std::min(x, length);
  return std::visit(
      [&](const auto& pot) -> TransferMatrix {
        using T = std::decay_t<decltype(pot)>;
        if constexpr (std::is_same_v<T, ZeroPotential>) {
          return propagate_constant(0.0, x, k);
        } else if constexpr (std::is_same_v<T, ConstantPotential>) {
          return propagate_constant(pot.value, x, k);
        } else if constexpr (std::is_same_v<T, PiecewisePotential>) {
          PiecewisePotential head;
          double left = x;
          for (const auto& seg : pot.segments) {
            if (left <= 0.0) break;
            head.segments.push_back({std::min(seg.length, left), seg.value});
            left -= seg.length;
          }
          return propagate_piecewise(head, k);
        } else {
          checked_steps(steps);
          const auto partial_steps = std::max<std::size_t>(
              16, static_cast<std::size_t>(
                      std::ceil(static_cast<double>(steps) * x / length)));
          const double k2 = k * k;
          double raw[4];
          simd::rk4_fundamental(pot.values.data(), pot.values.size(), length,
                                x, partial_steps, &k2, 1, raw);
          TransferMatrix out;
          out << raw[0], raw[1], raw[2], raw[3];
          return out;
        }
      },
      p);
}

TransferMatrix edge_transfer(const Potential& p, double length, double k,
                             std::size_t steps) {
  return std::visit(
      [&](const auto& pot) -> TransferMatrix {
        using T = std::decay_t<decltype(pot)>;
        if constexpr (std::is_same_v<T, ZeroPotential>) {
          return propagate_constant(0.0, length, k);
        } else if constexpr (std::is_same_v<T, ConstantPotential>) {
          return propagate_constant(pot.value, length, k);
        } else if constexpr (std::is_same_v<T, PiecewisePotential>) {
          return propagate_piecewise(pot, k);
        } else {
          return propagate_sampled(pot, length, k, steps);
        }
      },
      p);
}

TransferMatrix reverse_transfer(const TransferMatrix& phi) {
  const double ad = phi(0, 0) * phi(1, 1);
  const double bc = phi(0, 1) * phi(1, 0);
  double det = ad - bc;
  // Propagators have unit Wronskian. With large entries the difference above
  // is mostly rounding, so take 1 whenever it is consistent with that.
  if (std::abs(det - 1.0) <=
      64.0 * std::numeric_limits<double>::epsilon() *
          (std::abs(ad) + std::abs(bc))) {
    det = 1.0;
  }
  // J * adj(phi) * J / det: the off-diagonal signs of the adjugate cancel
  // against the conjugation.
  TransferMatrix out;
  out << phi(1, 1), phi(0, 1), phi(1, 0), phi(0, 0);
  return out / det;
}

TransferMatrix doubled_edge_matrix(const TransferMatrix& phi) {
  return phi * reverse_transfer(phi);
}

bool is_doubled_edge_periodic(const TransferMatrix& phi, double tol) {
  return std::abs(doubled_edge_matrix(phi).trace() - 2.0) <= tol;
}

}  // namespace qg
