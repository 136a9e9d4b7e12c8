#include "common/corpus.hpp"
#include "qgraph/casestudy.hpp"
#include "qgraph/errors.hpp"
#include "qgraph/spectrum.hpp"
#include "qgraph/topology.hpp"

#include <doctest.h>

#include <cmath>

using namespace qg;

namespace {

bool near_any(const std::vector<double>& xs, double x, double tol) {
  for (double v : xs) {
    if (std::abs(v - x) <= tol) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("spectrum") {
  TEST_CASE("scan arguments") {
    const SecularSystem sys(equilateral_tetrahedron());
    CHECK_THROWS_AS(scan(sys, 0.0, 1.0, 10), Error);
    CHECK_THROWS_AS(scan(sys, 2.0, 1.0, 10), Error);
    CHECK_THROWS_AS(scan(sys, 1.0, 2.0, 1), Error);
    CHECK(default_samples(0.5, 5.5) >= 5000);
  }

  TEST_CASE("tetrahedron scan flags poles at integer grid points") {
    const SecularSystem sys(equilateral_tetrahedron());
    const auto s = scan(sys, 0.5, 3.5, 601);
    REQUIRE(s.size() == 601);
    for (std::size_t i = 0; i < s.size(); ++i) {
      const bool integer = std::abs(s.k[i] - std::round(s.k[i])) < 1e-12;
      CHECK(s.is_pole[i] == integer);
      if (s.is_pole[i]) CHECK(std::isnan(s.det_vertex[i]));
      if (!s.is_pole[i]) CHECK(std::isfinite(s.det_vertex[i]));
    }
  }

  TEST_CASE("unused channels are NaN") {
    const SecularSystem sys(equilateral_tetrahedron());
    const auto s = scan(sys, 0.5, 1.5, 11, kChannelBond);
    CHECK(std::isfinite(s.det_bond[3]));
    CHECK(std::isnan(s.det_oracle[3]));
    CHECK(std::isnan(s.det_one_plus_phi_tau[3]));
  }

  TEST_CASE("sign changes of the bond determinant bracket roots") {
    const SecularSystem sys(testing::incommensurate_tetrahedron());
    const auto s = scan(sys, 0.5, 4.0, default_samples(0.5, 4.0), kChannelBond);
    const auto roots = find_roots(sys, s);
    REQUIRE(roots.size() > 3);
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      if (s.det_bond[i] * s.det_bond[i + 1] < 0.0) {
        bool bracketed = false;
        for (double r : roots) bracketed |= r >= s.k[i] - 1e-9 && r <= s.k[i + 1] + 1e-9;
        CHECK(bracketed);
      }
    }
  }

  TEST_CASE("locate_roots on a known function") {
    std::vector<double> ks;
    std::vector<double> ds;
    auto f = [](double k) { return std::sin(3.0 * k) * (k - 1.0) * (k - 1.0); };
    for (int i = 0; i <= 400; ++i) {
      ks.push_back(0.05 + 0.01 * i);
      ds.push_back(f(ks.back()));
    }
    // Relative "sigma" that vanishes exactly at the zeros of f.
    auto sigma = [&](double k) { return std::abs(f(k)); };
    const auto roots = locate_roots(ks, ds, f, sigma);
    CHECK(near_any(roots, std::acos(-1.0) / 3.0, 1e-9));
    CHECK(near_any(roots, 2.0 * std::acos(-1.0) / 3.0, 1e-9));
    // Double root without a sign change, found by minimum refinement.
    CHECK(near_any(roots, 1.0, 1e-6));
  }

  TEST_CASE("two double roots inside one grid cell") {
    const double a = 1.23401;
    const double b = 1.23409;
    std::vector<double> ks;
    std::vector<double> ds;
    auto f = [&](double k) { return (k - a) * (k - a) * (k - b) * (k - b); };
    for (int i = 0; i <= 100; ++i) {
      ks.push_back(0.5 + 0.02 * i);
      ds.push_back(f(ks.back()));
    }
    auto sigma = [&](double k) { return std::min(std::abs(k - a), std::abs(k - b)); };
    const auto roots = locate_roots(ks, ds, f, sigma, sigma);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == doctest::Approx(a).epsilon(1e-9));
    CHECK(roots[1] == doctest::Approx(b).epsilon(1e-9));
  }

  TEST_CASE("a flat minimum is reported once") {
    std::vector<double> ks;
    std::vector<double> ds;
    // sigma sits below the acceptance level across a 1e-8 wide plateau.
    auto sigma = [](double k) { return std::max(0.0, std::abs(k - 2.0) - 1e-8) + 1e-9; };
    auto f = [](double k) { return (k - 2.0) * (k - 2.0); };
    for (int i = 0; i <= 100; ++i) {
      ks.push_back(1.0 + 0.02 * i + 0.003);
      ds.push_back(f(ks.back()));
    }
    const auto roots = locate_roots(ks, ds, f, sigma, sigma);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0] == doctest::Approx(2.0).epsilon(1e-7));
  }

  TEST_CASE("tetrahedron records") {
    const SecularSystem sys(equilateral_tetrahedron());
    const auto r1 = classify(sys, 1.0);
    CHECK(r1.eigen_class == EigenClass::Topological);
    CHECK(r1.multiplicity == r1.oracle_multiplicity);
    CHECK(r1.bond_nullity == 2 * r1.multiplicity);
    const auto r2 = classify(sys, 2.0);
    CHECK(r2.eigen_class == EigenClass::Mixed);
    CHECK(r2.multiplicity == 4);
    CHECK(classify(sys, 3.0).eigen_class == EigenClass::Topological);
    CHECK_THROWS_AS(classify(sys, 1.25), Error);
  }

  TEST_CASE("incommensurate lengths give only non-topological eigenvalues") {
    const SecularSystem sys(testing::incommensurate_tetrahedron());
    const auto recs = eigenvalues(sys, 0.5, 3.5, default_samples(0.5, 3.5));
    REQUIRE(recs.size() > 3);
    for (const auto& r : recs) {
      CHECK(r.eigen_class == EigenClass::NonTopological);
      CHECK(r.multiplicity == 1);
      CHECK_FALSE(r.multiplicity_mismatch);
    }
  }

  TEST_CASE("potential on an edge produces roots the matching system lacks") {
    // The bond system also admits solutions with zero value sum and equal
    // derivatives at each vertex; with V != 0 these no longer coincide with
    // Kirchhoff eigenvalues.
    const SecularSystem sys(case4_graph());
    const auto s = scan(sys, 10.0, 10.6, 601, kChannelBond);
    bool spurious = false;
    for (double k : find_roots(sys, s)) {
      const auto r = classify(sys, k);
      if (r.eigen_class == EigenClass::Spurious) {
        spurious = true;
        CHECK(r.oracle_multiplicity == 0);
      }
    }
    CHECK(spurious);
  }

  TEST_CASE("verify_topological arguments") {
    const SecularSystem sys(equilateral_tetrahedron());
    CHECK_THROWS_AS(verify_topological(sys, Vector::Zero(24)), Error);
    CHECK_THROWS_AS(verify_topological(sys, Vector::Ones(5)), Error);
  }

  TEST_CASE("eigenfunction reconstruction") {
    for (const auto& [mg, k] : {std::pair{case2_graph(), 2.0},
                                std::pair{case4_graph(), 13.0},
                                std::pair{equilateral_tetrahedron(), 2.0}}) {
      const SecularSystem sys(mg);
      const auto rec = classify(sys, k);
      REQUIRE(rec.multiplicity >= 1);
      for (Eigen::Index j = 0; j < rec.basis.cols(); ++j) {
        const auto f = reconstruct_eigenfunction(sys, rec.basis.col(j), k, 33);
        CHECK(f.values.size() == static_cast<std::size_t>(mg.edge_count()));
        CHECK(f.continuity_residual <= 1e-8 * f.sup_norm);
        CHECK(f.kirchhoff_residual <= 1e-8 * k * f.sup_norm);
        CHECK(f.consistency_residual <= 1e-8);
      }
    }
  }

  TEST_CASE("inconsistent counterpart is rejected") {
    const SecularSystem sys(equilateral_tetrahedron());
    Vector x = Vector::Zero(24);
    x(1) = 1.0;
    CHECK_THROWS_AS(reconstruct_eigenfunction(sys, x, 1.5, 8), Error);
  }
}
