#include "common/corpus.hpp"
#include "qgraph/casestudy.hpp"
#include "qgraph/errors.hpp"
#include "qgraph/spectrum.hpp"
#include "qgraph/topology.hpp"

#include <doctest.h>

using namespace qg;

TEST_SUITE("topology") {
  TEST_CASE("cycle validation") {
    const auto g = tetrahedron_graph();
    CHECK_NOTHROW(validate_cycle(g, cycle_through(g, {0, 1, 2})));
    CHECK_THROWS_AS(validate_cycle(g, Cycle{{0}}), Error);
    CHECK_THROWS_AS(validate_cycle(g, Cycle{{0, 3}}), Error);    // not closed
    CHECK_THROWS_AS(validate_cycle(g, Cycle{{0, 99}}), Error);   // out of range
    CHECK_THROWS_AS(validate_cycle(g, Cycle{{0, 6}}), Error);    // back-tracks
    CHECK_THROWS_AS(cycle_through(CombinatorialGraph(3, {{0, 1}, {1, 2}}), {0, 1, 2}),
                    Error);
  }

  TEST_CASE("fundamental cycles are odd fixed vectors") {
    for (const auto& mg : testing::corpus()) {
      const auto& g = mg.graph();
      const auto cycles = fundamental_cycles(g);
      REQUIRE(static_cast<int>(cycles.size()) == betti(g));
      const Matrix s = bond_scattering(g);
      const Matrix tau = tau_matrix(g).cast<double>();
      for (const auto& c : cycles) {
        CHECK_NOTHROW(validate_cycle(g, c));
        const Vector v = cycle_fixed_vector(g, c);
        CHECK(max_abs(s * v - v) <= 1e-12);
        CHECK(max_abs(tau * v + v) == 0.0);
      }
    }
  }

  TEST_CASE("fixed space dimension") {
    for (const auto& mg : testing::corpus()) {
      const auto fs = fixed_space(mg.graph());
      CHECK(fs.dimension() == betti(mg.graph()) + 1);
      CHECK(fs.odd.cols() == betti(mg.graph()));
      CHECK(fs.even.cols() == 1);
    }
  }

  TEST_CASE("triangles close only at even k") {
    const auto mg = equilateral_tetrahedron();
    const SecularSystem sys(mg);
    const auto tri = cycle_through(mg.graph(), {0, 1, 2});
    const auto quad = cycle_through(mg.graph(), {0, 1, 2, 3});
    CHECK(closure_product(mg, tri, 1.0) == doctest::Approx(-1.0));
    CHECK(closure_product(mg, tri, 2.0) == doctest::Approx(1.0));
    CHECK_FALSE(construct_topological_state(mg, tri, 1.0).has_value());
    for (double k : {1.0, 2.0, 3.0}) {
      const auto x = construct_topological_state(mg, quad, k);
      REQUIRE(x.has_value());
      CHECK(verify_topological(sys, *x).passes());
      CHECK((sys.bond_matrix(k) * *x).norm() <= 1e-8 * x->norm());
    }
    const auto x2 = construct_topological_state(mg, tri, 2.0);
    REQUIRE(x2.has_value());
    CHECK(verify_topological(sys, *x2).passes());
    CHECK_THROWS_AS(construct_topological_state(mg, tri, 1.5), Error);
  }

  TEST_CASE("Dirichlet test with a potential") {
    const auto mg = case4_graph();
    CHECK(dirichlet_eigen_test(mg, 0, 13.0));
    CHECK_FALSE(dirichlet_eigen_test(mg, 0, 12.0));
    CHECK(dirichlet_eigen_test(mg, 1, 12.0));
    const auto through = cycle_through(mg.graph(), {0, 1, 2});
    CHECK(spectrally_equilateral_cycles(mg, 13.0, {through}).size() == 1);
    CHECK(spectrally_equilateral_cycles(mg, 14.0, {through}).empty());
  }

  TEST_CASE("constructed states lie in the topological part") {
    const SecularSystem sys(equilateral_tetrahedron());
    const auto rec = classify(sys, 2.0);
    const auto x = construct_topological_state(
        sys.graph(), cycle_through(sys.graph().graph(), {0, 1, 2}), 2.0);
    REQUIRE(x.has_value());
    const Vector unit = *x / x->norm();
    const Vector proj = rec.topological_basis * (rec.topological_basis.transpose() * unit);
    CHECK((proj - unit).norm() <= 1e-8);
  }
}
