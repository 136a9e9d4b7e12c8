#include "common/corpus.hpp"
#include "qgraph/errors.hpp"
#include "qgraph/graph.hpp"

#include <doctest.h>

using namespace qg;

namespace {

CombinatorialGraph k4() {
  return CombinatorialGraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

CombinatorialGraph path3() { return CombinatorialGraph(3, {{0, 1}, {1, 2}}); }

}  // namespace

TEST_SUITE("graph") {
  TEST_CASE("edge-major layout") {
    const auto g = k4();
    CHECK(g.directed_count() == 12);
    CHECK(g.reverse(0) == 6);
    CHECK(g.reverse(6) == 0);
    CHECK(g.source(6) == g.target(0));
    CHECK(g.target(6) == g.source(0));
    CHECK(betti(g) == 3);
    CHECK(g.out_edges(0).size() == 3);
    CHECK(g.in_edges(0).size() == 3);
  }

  TEST_CASE("validation") {
    CHECK_THROWS_AS(CombinatorialGraph(2, {{0, 0}}), Error);
    CHECK_THROWS_AS(CombinatorialGraph(4, {{0, 1}, {2, 3}}), Error);
    CHECK_THROWS_AS(CombinatorialGraph(3, {{0, 1}}), Error);
    CHECK_THROWS_AS(CombinatorialGraph(2, {{0, 5}}), Error);
    try {
      CombinatorialGraph(4, {{0, 1}, {2, 3}});
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Validation);
    }
    // Parallel edges are a multigraph, not an error.
    CHECK(betti(CombinatorialGraph(2, {{0, 1}, {0, 1}})) == 1);
  }

  TEST_CASE("tetrahedron scattering entries") {
    const auto s = bond_scattering(k4());
    CHECK(s.rows() == 12);
    for (Eigen::Index i = 0; i < s.rows(); ++i) {
      for (Eigen::Index j = 0; j < s.cols(); ++j) {
        const double v = s(i, j);
        const bool ok = std::abs(v) < 1e-15 || std::abs(v - 2.0 / 3.0) < 1e-15 ||
                        std::abs(v + 1.0 / 3.0) < 1e-15;
        CHECK(ok);
      }
    }
  }

  TEST_CASE("single edge scattering is tau") {
    const CombinatorialGraph g(2, {{0, 1}});
    CHECK(max_abs_diff(bond_scattering(g), tau_matrix(g).cast<double>()) == 0.0);
  }

  TEST_CASE("degree-2 vertices transmit, leaves reflect") {
    const auto s = bond_scattering(path3());
    CHECK(s(1, 0) == 1.0);  // 0->1 continues as 1->2
    CHECK(s(2, 0) == 0.0);  // no back-scattering at degree 2
    CHECK(s(0, 2) == 1.0);  // reflection at leaf 0
    CHECK(s(3, 1) == 1.0);  // reflection at leaf 2
  }

  TEST_CASE("scattering structure on the corpus") {
    for (const auto& mg : testing::corpus()) {
      const auto& g = mg.graph();
      const Matrix a = bond_scattering_entrywise(g);
      const Matrix b = bond_scattering_factored(g);
      CHECK(max_abs_diff(a, b) == 0.0);
      const Eigen::Index n = a.rows();
      CHECK(max_abs(a.transpose() * a - Matrix::Identity(n, n)) <= 1e-12);
      CHECK(max_abs(a.rowwise().sum() - Vector::Ones(n)) <= 1e-12);
      CHECK(max_abs(a.colwise().sum().transpose() - Vector::Ones(n)) <= 1e-12);
      const Matrix tau = tau_matrix(g).cast<double>();
      CHECK(max_abs(tau * a * tau - a.transpose()) <= 1e-12);
    }
  }

  TEST_CASE("nonbacktracking factorization") {
    for (const auto& mg : testing::corpus()) {
      CHECK(nonbacktracking(mg.graph()) ==
            nonbacktracking_enumerated(mg.graph()));
    }
  }

  TEST_CASE("laplacians") {
    const auto g = k4();
    const IntMatrix l = laplacian(g);
    CHECK(l.rowwise().sum().cwiseAbs().maxCoeff() == 0);
    CHECK(l == degree_matrix(g) - adjacency(g));
    const Matrix nl = normalized_laplacian(g);
    CHECK(max_abs(nl - nl.transpose()) <= 1e-15);
    const Matrix down = one_down_laplacian(g);
    CHECK(down.rows() == 12);
    CHECK(max_abs(down - down.transpose()) <= 1e-15);
  }

  TEST_CASE("glue") {
    const auto g = glue_at_vertices(path3(), 1, k4(), 0);
    CHECK(g.vertex_count() == 6);
    CHECK(g.edge_count() == 8);
    CHECK(g.degree(1) == 5);
    CHECK(betti(g) == 3);
    CHECK(glued_vertex_index(path3(), 1, k4(), 0, 0) == 1);
    CHECK(glued_vertex_index(path3(), 1, k4(), 0, 1) == 3);
  }
}
