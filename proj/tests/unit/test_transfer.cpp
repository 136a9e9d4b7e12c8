#include "qgraph/errors.hpp"
#include "qgraph/transfer.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace qg;

namespace {

constexpr double kPi = std::numbers::pi;

double max_diff(const TransferMatrix& a, const TransferMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

SampledPotential sampled_constant(double q, std::size_t n = 2) {
  return SampledPotential{std::vector<double>(n, q)};
}

// Integrates each constant piece numerically and composes the results.
TransferMatrix integrated(const PiecewisePotential& p, double k,
                          std::size_t steps) {
  TransferMatrix out = TransferMatrix::Identity();
  for (const auto& s : p.segments) {
    out = propagate_sampled(sampled_constant(s.value), s.length, k, steps) * out;
  }
  return out;
}

PiecewisePotential step_potential() {
  return PiecewisePotential{{{kPi / 2, 0.0}, {kPi / 2, 144.0}}};
}

SampledPotential smooth_potential() {
  SampledPotential p;
  for (int i = 0; i <= 4096; ++i) {
    p.values.push_back(20.0 * std::sin(kPi * i / 4096.0));
  }
  return p;
}

}  // namespace

TEST_SUITE("transfer") {
  TEST_CASE("closed forms") {
    TransferMatrix minus_one = -TransferMatrix::Identity();
    CHECK(max_diff(propagate_constant(0.0, kPi, 1.0), minus_one) <= 1e-15);
    CHECK(max_diff(propagate_constant(144.0, kPi, 13.0), minus_one) <= 1e-14);
    TransferMatrix jordan;
    jordan << 1.0, 2.5, 0.0, 1.0;
    CHECK(max_diff(propagate_constant(4.0, 2.5, 2.0), jordan) == 0.0);
  }

  TEST_CASE("entire across k^2 = q") {
    const double q = 9.0;
    for (double d : {1e-6, -1e-6}) {
      const double k = std::sqrt(q + d);
      CHECK(max_diff(propagate_constant(q, 2.0, k),
                     propagate_constant(q, 2.0, 3.0)) <= 1e-5);
    }
    // Series branch on either side of the switch agrees with the closed form.
    const double k = std::sqrt(q + 4e-8);
    CHECK(max_diff(propagate_constant(q, 1.0, k),
                   propagate_constant(q, 1.0, 3.0)) <= 1e-7);
  }

  TEST_CASE("tunnelling regime is real and unimodular") {
    const auto phi = propagate_constant(144.0, kPi, 3.0);
    CHECK(phi(0, 0) > 1e10);
    CHECK(std::abs(phi.determinant() - 1.0) <= 1e-10 * phi.squaredNorm());
  }

  TEST_CASE("unit determinant for every potential class") {
    const PiecewisePotential pw{{{0.4, 3.0}, {0.9, -2.0}, {0.7, 10.0}}};
    const auto smooth = smooth_potential();
    for (double k = 0.1; k <= 20.0; k += 0.37) {
      CHECK(std::abs(propagate_constant(0.0, 2.0, k).determinant() - 1.0) <= 1e-10);
      CHECK(std::abs(propagate_constant(5.0, 2.0, k).determinant() - 1.0) <= 1e-10);
      CHECK(std::abs(propagate_piecewise(pw, k).determinant() - 1.0) <= 1e-10);
      // Tunnelling makes the entries large; the determinant is then limited
      // by cancellation, not by the integrator.
      const auto phi = propagate_sampled(smooth, kPi, k, 8192);
      const double scale = std::abs(phi(0, 0) * phi(1, 1)) + std::abs(phi(0, 1) * phi(1, 0));
      CHECK(std::abs(phi.determinant() - 1.0) <= 1e-10 * std::max(1.0, scale));
    }
  }

  TEST_CASE("piecewise composition") {
    const double q = 7.0;
    const double len = 1.3;
    const double k = 2.2;
    CHECK(max_diff(propagate_piecewise({{{len, q}}}, k),
                   propagate_constant(q, len, k)) == 0.0);
    CHECK(max_diff(propagate_piecewise({{{len / 2, q}, {len / 2, q}}}, k),
                   propagate_constant(q, len, k)) <= 1e-12);
  }

  TEST_CASE("step potential matches numerical integration") {
    const auto p = step_potential();
    CHECK(max_diff(propagate_piecewise(p, 13.0), integrated(p, 13.0, 2048)) <= 1e-6);
  }

  // Classical RK4 at 256 steps has global error ~ k^5 h^4 l / 120, about
  // 6e-4 at k = 10. Kept as a documented expectation that this method
  // cannot meet.
  TEST_CASE("sampled zero potential at 256 steps" * doctest::may_fail()) {
    for (double k = 0.5; k <= 10.0; k += 0.5) {
      CHECK(max_diff(propagate_sampled(sampled_constant(0.0), kPi, k, 256),
                     propagate_constant(0.0, kPi, k)) <= 1e-8);
    }
  }

  TEST_CASE("sampled against closed forms") {
    for (double k = 0.5; k <= 10.0; k += 0.5) {
      CHECK(max_diff(propagate_sampled(sampled_constant(0.0), kPi, k, 8192),
                     propagate_constant(0.0, kPi, k)) <= 1e-8);
    }
    CHECK(max_diff(propagate_sampled(sampled_constant(144.0), kPi, 13.0, 2048),
                   propagate_constant(144.0, kPi, 13.0)) <= 1e-8);
  }

  TEST_CASE("fourth-order convergence") {
    const auto v = sampled_constant(4.0);
    const double k = 3.0;
    const auto exact = propagate_constant(4.0, kPi, k);
    const double e1 = max_diff(propagate_sampled(v, kPi, k, 64), exact);
    const double e2 = max_diff(propagate_sampled(v, kPi, k, 128), exact);
    const double ratio = e1 / e2;
    INFO("ratio " << ratio);
    CHECK(ratio >= 13.0);
    CHECK(ratio <= 19.0);
  }

  TEST_CASE("reversal") {
    const auto sym = propagate_constant(3.0, 1.7, 2.4);
    CHECK(max_diff(reverse_transfer(sym), sym) <= 1e-15);
    TransferMatrix jordan;
    jordan << 1.0, 0.8, 0.0, 1.0;
    CHECK(max_diff(reverse_transfer(jordan), jordan) == 0.0);
    const auto asym = propagate_piecewise(step_potential(), 11.0);
    CHECK(max_diff(reverse_transfer(asym), asym) > 1e-3);
    CHECK(max_diff(reverse_transfer(reverse_transfer(asym)), asym) <= 1e-12);
    // The reversed step integrates the pieces in the opposite order.
    const PiecewisePotential flipped{{{kPi / 2, 144.0}, {kPi / 2, 0.0}}};
    CHECK(max_diff(reverse_transfer(asym), propagate_piecewise(flipped, 11.0)) <=
          1e-9 * asym.cwiseAbs().maxCoeff());
  }

  TEST_CASE("doubled edge periodicity") {
    for (int j = 1; j <= 4; ++j) {
      const auto phi = propagate_constant(0.0, kPi, j);
      CHECK(is_doubled_edge_periodic(phi, 1e-10));
      CHECK_FALSE(is_doubled_edge_periodic(propagate_constant(0.0, kPi, j + 0.3), 1e-10));
      CHECK(is_doubled_edge_periodic(propagate_constant(0.0, 1.0, j * kPi), 1e-10));
    }
    const auto m = doubled_edge_matrix(propagate_constant(4.0, 1.5, 2.0));
    TransferMatrix expect;
    expect << 1.0, 3.0, 0.0, 1.0;
    CHECK(max_diff(m, expect) <= 1e-15);
    CHECK(is_doubled_edge_periodic(propagate_constant(4.0, 1.5, 2.0), 1e-12));
  }

  TEST_CASE("potential validation") {
    CHECK_NOTHROW(validate_potential(ConstantPotential{2.0}, 1.0));
    CHECK_THROWS_AS(validate_potential(ZeroPotential{}, 0.0), Error);
    CHECK_THROWS_AS(
        validate_potential(PiecewisePotential{{{0.45, 1.0}, {0.45, 1.0}}}, 1.0),
        Error);
    CHECK_THROWS_AS(validate_potential(SampledPotential{{1.0}}, 1.0), Error);
    CHECK_THROWS_AS(validate_potential(ConstantPotential{NAN}, 1.0), Error);
    CHECK(is_zero_potential(PiecewisePotential{{{1.0, 0.0}}}));
    CHECK_FALSE(is_zero_potential(SampledPotential{{0.0, 1e-300}}));
  }

  TEST_CASE("partial propagation") {
    const auto p = Potential{step_potential()};
    CHECK(max_diff(propagate_partial(p, kPi, kPi, 5.0, 1024),
                   edge_transfer(p, kPi, 5.0)) <= 1e-15);
    CHECK(max_diff(propagate_partial(p, kPi, 1.0, 5.0, 1024),
                   propagate_constant(0.0, 1.0, 5.0)) <= 1e-15);
    CHECK(propagate_partial(p, kPi, 0.0, 5.0, 1024) == TransferMatrix::Identity());
  }
}
