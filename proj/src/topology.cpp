#include "qgraph/topology.hpp"

#include "qgraph/errors.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <string>

namespace qg {

namespace {

Matrix stack(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() + b.rows(), a.cols());
  out << a, b;
  return out;
}

}  // namespace

void validate_cycle(const CombinatorialGraph& g, const Cycle& c) {
  const int dm = g.directed_count();
  if (c.edges.size() < 2) {
    throw Error(ErrorKind::Validation, "a cycle needs at least two edges");
  }
  std::set<int> seen;
  for (std::size_t j = 0; j < c.edges.size(); ++j) {
    const int e = c.edges[j];
    if (e < 0 || e >= dm) {
      throw Error(ErrorKind::Validation,
                  "cycle edge " + std::to_string(e) + " is out of range");
    }
    if (!seen.insert(e).second) {
      throw Error(ErrorKind::Validation,
                  "cycle repeats directed edge " + std::to_string(e));
    }
    // Both orientations of one edge cancel in the fixed vector.
    if (seen.count(g.reverse(e))) {
      throw Error(ErrorKind::Validation,
                  "cycle uses edge " + std::to_string(e % g.edge_count()) +
                      " in both directions");
    }
    const int next = c.edges[(j + 1) % c.edges.size()];
    if (next >= 0 && next < dm && g.target(e) != g.source(next)) {
      throw Error(ErrorKind::Validation,
                  "cycle is not closed at position " + std::to_string(j));
    }
  }
}

std::vector<Cycle> fundamental_cycles(const CombinatorialGraph& g) {
  const int n = g.vertex_count();
  const int m = g.edge_count();
  std::vector<int> parent_edge(static_cast<std::size_t>(n), -1);
  std::vector<int> depth(static_cast<std::size_t>(n), -1);
  std::vector<bool> tree(static_cast<std::size_t>(m), false);
  std::queue<int> q;
  depth[0] = 0;
  q.push(0);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int e : g.out_edges(v)) {
      const int w = g.target(e);
      if (depth[static_cast<std::size_t>(w)] >= 0) continue;
      depth[static_cast<std::size_t>(w)] = depth[static_cast<std::size_t>(v)] + 1;
      parent_edge[static_cast<std::size_t>(w)] = e;
      tree[static_cast<std::size_t>(e % m)] = true;
      q.push(w);
    }
  }
  std::vector<Cycle> out;
  for (int e = 0; e < m; ++e) {
    if (tree[static_cast<std::size_t>(e)]) continue;
    // e runs u -> v; close it with the tree path v -> lca -> u.
    int a = g.target(e);
    int b = g.source(e);
    std::vector<int> up;    // from v towards the lca, child -> parent
    std::vector<int> down;  // from u towards the lca, parent -> child, reversed
    while (a != b) {
      const auto da = depth[static_cast<std::size_t>(a)];
      const auto db = depth[static_cast<std::size_t>(b)];
      if (da >= db) {
        const int pe = parent_edge[static_cast<std::size_t>(a)];
        up.push_back(g.reverse(pe));
        a = g.source(pe);
      } else {
        const int pe = parent_edge[static_cast<std::size_t>(b)];
        down.push_back(pe);
        b = g.source(pe);
      }
    }
    Cycle c;
    c.edges.push_back(e);
    c.edges.insert(c.edges.end(), up.begin(), up.end());
    c.edges.insert(c.edges.end(), down.rbegin(), down.rend());
    out.push_back(std::move(c));
  }
  return out;
}

Vector cycle_fixed_vector(const CombinatorialGraph& g, const Cycle& c) {
  validate_cycle(g, c);
  Vector x = Vector::Zero(g.directed_count());
  for (int e : c.edges) {
    x(e) += 1.0;
    x(g.reverse(e)) -= 1.0;
  }
  return x;
}

Matrix FixedSpace::basis() const {
  Matrix out(even.rows(), even.cols() + odd.cols());
  out << even, odd;
  return out;
}

FixedSpace fixed_space(const CombinatorialGraph& g, double tol) {
  const Matrix s = bond_scattering(g);
  const Matrix tau = tau_matrix(g).cast<double>();
  const Matrix id = Matrix::Identity(s.rows(), s.cols());
  FixedSpace f;
  f.even = null_space(stack(s - id, tau - id), tol).basis;
  f.odd = null_space(stack(s - id, tau + id), tol).basis;
  return f;
}

bool dirichlet_eigen_test(const MetricGraph& g, int e, double k, double tol) {
  return std::abs(g.transfer(e, k)(0, 1)) <= tol;
}

std::vector<Cycle> spectrally_equilateral_cycles(
    const MetricGraph& g, double k, const std::vector<Cycle>& cycles,
    double tol) {
  std::vector<Cycle> out;
  for (const auto& c : cycles) {
    const bool ok = std::all_of(c.edges.begin(), c.edges.end(), [&](int e) {
      return dirichlet_eigen_test(g, e, k, tol);
    });
    if (ok) out.push_back(c);
  }
  return out;
}

double closure_product(const MetricGraph& g, const Cycle& c, double k) {
  double p = 1.0;
  for (int e : c.edges) p *= g.transfer(e, k)(1, 1);
  return p;
}

std::optional<Vector> construct_topological_state(const MetricGraph& g,
                                                  const Cycle& c, double k) {
  validate_cycle(g.graph(), c);
  for (int e : c.edges) {
    if (!dirichlet_eigen_test(g, e, k)) {
      throw Error(ErrorKind::NotSpectrallyEquilateral,
                  "k^2 is not a Dirichlet eigenvalue of directed edge " +
                      std::to_string(e) + " at k = " + std::to_string(k));
    }
  }
  if (std::abs(closure_product(g, c, k) - 1.0) > kClosureTolerance) {
    return std::nullopt;
  }
  const auto& cg = g.graph();
  Vector x = Vector::Zero(2 * cg.directed_count());
  double coeff = 1.0;
  for (int e : c.edges) {
    const double p = g.transfer(e, k)(1, 1);
    // Terminal data of e is (0, coeff * p); that of -e, at s(e), is
    // (0, -coeff).
    x(2 * e + 1) += coeff * p;
    x(2 * cg.reverse(e) + 1) -= coeff;
    coeff *= p;
  }
  return x;
}

Cycle cycle_through(const CombinatorialGraph& g,
                    const std::vector<int>& vertices) {
  Cycle c;
  for (std::size_t j = 0; j < vertices.size(); ++j) {
    const int a = vertices[j];
    const int b = vertices[(j + 1) % vertices.size()];
    int found = -1;
    if (a >= 0 && a < g.vertex_count()) {
      for (int e : g.out_edges(a)) {
        if (g.target(e) == b && (found < 0 || e % g.edge_count() < found % g.edge_count())) {
          found = e;
        }
      }
    }
    if (found < 0) {
      throw Error(ErrorKind::Validation, "no edge from vertex " +
                                             std::to_string(a) + " to " +
                                             std::to_string(b));
    }
    c.edges.push_back(found);
  }
  validate_cycle(g, c);
  return c;
}

}  // namespace qg
