#include "common/corpus.hpp"
#include "qgraph/casestudy.hpp"
#include "qgraph/errors.hpp"
#include "qgraph/secular.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace qg;

namespace {

double rel_gap(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

MetricGraph with_potentials(const MetricGraph& g) {
  std::vector<Potential> pots;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (e % 3 == 0) {
      pots.emplace_back(ConstantPotential{2.5});
    } else if (e % 3 == 1) {
      const double l = g.length(e);
      pots.emplace_back(PiecewisePotential{{{0.3 * l, 4.0}, {0.7 * l, -1.0}}});
    } else {
      pots.emplace_back(ZeroPotential{});
    }
  }
  return MetricGraph(g.graph(), g.lengths(), pots);
}

}  // namespace

TEST_SUITE("secular") {
  TEST_CASE("bond determinant vanishes at equilateral integer k") {
    const SecularSystem sys(equilateral_tetrahedron());
    for (int k = 1; k <= 4; ++k) CHECK(std::abs(sys.bond_det(k)) <= 1e-10);
    CHECK(std::abs(sys.bond_det(1.5)) > 1e-3);
  }

  TEST_CASE("determinant factorization") {
    const SecularSystem sys(testing::incommensurate_tetrahedron());
    const double deg = determinant(Matrix(degree_matrix(sys.graph().graph()).cast<double>()));
    CHECK(deg * deg == doctest::Approx(81.0 * 81.0));
    for (double k : {0.37, 1.1, 2.9, 5.3, 7.7}) {
      REQUIRE_FALSE(sys.poles(k).is_pole);
      const double rhs = sys.one_plus_phi_tau_det(k) *
                         determinant(sys.vertex_direct(k)) / (deg * deg);
      CHECK(rel_gap(sys.bond_det(k), rhs) <= 1e-8);
      CHECK(rel_gap(sys.one_plus_phi_tau_det(k),
                    sys.one_plus_phi_tau_det_by_edges(k)) <= 1e-10);
    }
  }

  TEST_CASE("vertex forms agree") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 10; ++i) {
      const auto g = testing::random_graph(100 + i);
      for (const auto& mg : {g, with_potentials(g)}) {
        const SecularSystem sys(mg);
        const double k = 0.3 + 6.0 * testing::uniform01(rng);
        if (sys.poles(k).worst < 1e-6) continue;
        const Matrix a = sys.vertex_direct(k);
        const Matrix b = sys.vertex_blocks(k);
        CHECK(max_abs_diff(a, b) <= 1e-10 * std::max(1.0, max_abs(a)));
      }
    }
  }

  TEST_CASE("poles") {
    const SecularSystem sys(equilateral_tetrahedron());
    CHECK(sys.poles(1.0).is_pole);
    CHECK_FALSE(sys.poles(1.25).is_pole);
    CHECK_THROWS_AS(sys.vertex_direct(1.0), Error);
    try {
      sys.vertex_blocks(2.0);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::PoleAtK);
    }
  }

  TEST_CASE("vertex matrix of zero potential is i times a real symmetric matrix") {
    const SecularSystem sys(testing::incommensurate_tetrahedron());
    const ComplexMatrix ks = sys.ks(1.3);
    CHECK(ks.rows() == 4);
    CHECK(max_abs(ks.real()) == 0.0);
    const Matrix r = ks.imag();
    CHECK(max_abs(r - r.transpose()) <= 1e-15);
    CHECK_THROWS_AS(SecularSystem(case4_graph()).ks(1.3), Error);
  }

  TEST_CASE("fixed-vector triad") {
    // At k = 2 on the pi tetrahedron every Phi_e is the identity.
    const SecularSystem sys(equilateral_tetrahedron());
    const Matrix phi = sys.phi(2.0);
    const Matrix& s = sys.scattering_hat();
    const Eigen::Index n = s.rows();
    const Matrix id = Matrix::Identity(n, n);
    const auto fixed_s = null_space(id - s, 1e-9).basis;
    CHECK(fixed_s.cols() == 8);
    CHECK(max_abs((id - phi) * fixed_s) <= 1e-12);
    CHECK(max_abs((id - phi * s) * fixed_s) <= 1e-12);
    const auto fixed_phis = null_space(id - phi * s, 1e-9).basis;
    CHECK(max_abs((id - s) * fixed_phis) <= 1e-12);

    // Generic k: Phi x = x and Phi S x = x force S x = x and vice versa.
    const SecularSystem gen(testing::random_graph(3));
    const Matrix p = gen.phi(1.7);
    const Matrix& sg = gen.scattering_hat();
    const Matrix idg = Matrix::Identity(p.rows(), p.cols());
    Matrix stacked(2 * p.rows(), p.cols());
    stacked << idg - p, idg - p * sg;
    const auto both = null_space(stacked, 1e-9).basis;
    if (both.cols() > 0) CHECK(max_abs((idg - sg) * both) <= 1e-10);
  }

  TEST_CASE("oracle null vectors give bond null vectors") {
    const SecularSystem sys(case2_graph());
    const double k = 2.0;
    const auto ns = null_space(sys.oracle(k), 1e-9);
    REQUIRE(ns.dimension() >= 1);
    for (Eigen::Index j = 0; j < ns.dimension(); ++j) {
      const Vector x = counterpart_from_amplitudes(sys.graph(), k, ns.basis.col(j));
      CHECK((sys.bond_matrix(k) * x).norm() <= 1e-10 * x.norm());
      CHECK((sys.consistency(k) * x).norm() <= 1e-10 * x.norm());
    }
  }

  TEST_CASE("balanced forms keep singularity") {
    const SecularSystem sys(case4_graph());
    const auto phis = sys.transfers(13.0);
    CHECK(relative_sigma_min(sys.bond_balanced(phis)) <= 1e-10);
    const auto off = sys.transfers(12.5);
    CHECK(relative_sigma_min(sys.bond_balanced(off)) > 1e-6);
    CHECK(null_space(equilibrate_rows(sys.oracle_balanced(phis)), 1e-8).dimension() >= 1);
    CHECK(null_space(equilibrate_rows(sys.oracle_balanced(off)), 1e-8).dimension() == 0);
  }

  TEST_CASE("free-function wrappers") {
    const auto g = testing::incommensurate_tetrahedron();
    const SecularSystem sys(g);
    CHECK(bond_secular_det(g, 1.3) == sys.bond_det(1.3));
    CHECK(max_abs_diff(vertex_secular_direct(g, 1.3), sys.vertex_direct(1.3)) == 0.0);
    CHECK(max_abs_diff(oracle_secular(g, 1.3), sys.oracle(1.3)) == 0.0);
    CHECK(oracle_det(g, 1.3) == doctest::Approx(determinant(sys.oracle(1.3))));
    CHECK(one_plus_phi_tau_det(g, 1.3) == sys.one_plus_phi_tau_det(1.3));
  }
}
