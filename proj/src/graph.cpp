#include "qgraph/graph.hpp"

#include "qgraph/errors.hpp"

#include <cmath>
#include <numeric>
#include <queue>
#include <string>

namespace qg {

CombinatorialGraph::CombinatorialGraph(int n_vertices,
                                       std::vector<EdgeEnds> edges)
    : n_(n_vertices), edges_(std::move(edges)) {
  if (n_ < 1) throw Error(ErrorKind::Validation, "graph needs a vertex");
  if (edges_.empty()) throw Error(ErrorKind::Validation, "graph needs an edge");
  degrees_.assign(static_cast<std::size_t>(n_), 0);
  for (std::size_t j = 0; j < edges_.size(); ++j) {
    const auto [a, b] = edges_[j];
    if (a < 0 || a >= n_ || b < 0 || b >= n_) {
      throw Error(ErrorKind::Validation,
                  "edge " + std::to_string(j) + " has an endpoint out of range");
    }
    if (a == b) {
      throw Error(ErrorKind::Validation,
                  "edge " + std::to_string(j) +
                      " is a self-loop; subdivide it with a degree-2 vertex");
    }
    ++degrees_[static_cast<std::size_t>(a)];
    ++degrees_[static_cast<std::size_t>(b)];
  }
  for (int v = 0; v < n_; ++v) {
    if (degrees_[static_cast<std::size_t>(v)] == 0) {
      throw Error(ErrorKind::Validation,
                  "vertex " + std::to_string(v) + " has no edges");
    }
  }
  // Connectivity by BFS over undirected edges.
  std::vector<std::vector<int>> nbr(static_cast<std::size_t>(n_));
  for (const auto& e : edges_) {
    nbr[static_cast<std::size_t>(e.from)].push_back(e.to);
    nbr[static_cast<std::size_t>(e.to)].push_back(e.from);
  }
  std::vector<bool> seen(static_cast<std::size_t>(n_), false);
  std::queue<int> todo;
  todo.push(0);
  seen[0] = true;
  int reached = 1;
  while (!todo.empty()) {
    const int v = todo.front();
    todo.pop();
    for (int w : nbr[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        ++reached;
        todo.push(w);
      }
    }
  }
  if (reached != n_) throw Error(ErrorKind::Validation, "graph is disconnected");
}

int CombinatorialGraph::source(int e) const {
  const int m = edge_count();
  return e < m ? edges_[static_cast<std::size_t>(e)].from
               : edges_[static_cast<std::size_t>(e - m)].to;
}

int CombinatorialGraph::target(int e) const {
  const int m = edge_count();
  return e < m ? edges_[static_cast<std::size_t>(e)].to
               : edges_[static_cast<std::size_t>(e - m)].from;
}

std::vector<int> CombinatorialGraph::out_edges(int v) const {
  std::vector<int> out;
  for (int e = 0; e < directed_count(); ++e) {
    if (source(e) == v) out.push_back(e);
  }
  return out;
}

std::vector<int> CombinatorialGraph::in_edges(int v) const {
  std::vector<int> out;
  for (int e = 0; e < directed_count(); ++e) {
    if (target(e) == v) out.push_back(e);
  }
  return out;
}

bool operator==(const CombinatorialGraph& a, const CombinatorialGraph& b) {
  if (a.n_ != b.n_ || a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t j = 0; j < a.edges_.size(); ++j) {
    if (a.edges_[j].from != b.edges_[j].from ||
        a.edges_[j].to != b.edges_[j].to) {
      return false;
    }
  }
  return true;
}

int betti(const CombinatorialGraph& g) {
  return g.edge_count() - g.vertex_count() + 1;
}

int glued_vertex_index(const CombinatorialGraph& g1, int v1,
                       const CombinatorialGraph& g2, int v2, int v) {
  if (v1 < 0 || v1 >= g1.vertex_count() || v2 < 0 ||
      v2 >= g2.vertex_count() || v < 0 || v >= g2.vertex_count()) {
    throw Error(ErrorKind::Validation, "glue: vertex index out of range");
  }
  if (v == v2) return v1;
  return g1.vertex_count() + (v < v2 ? v : v - 1);
}

CombinatorialGraph glue_at_vertices(const CombinatorialGraph& g1, int v1,
                                    const CombinatorialGraph& g2, int v2) {
  std::vector<EdgeEnds> edges = g1.edges();
  for (const auto& e : g2.edges()) {
    edges.push_back({glued_vertex_index(g1, v1, g2, v2, e.from),
                     glued_vertex_index(g1, v1, g2, v2, e.to)});
  }
  return CombinatorialGraph(g1.vertex_count() + g2.vertex_count() - 1,
                            std::move(edges));
}

IntMatrix incidence_t(const CombinatorialGraph& g) {
  IntMatrix out = IntMatrix::Zero(g.vertex_count(), g.directed_count());
  for (int e = 0; e < g.directed_count(); ++e) out(g.target(e), e) = 1;
  return out;
}

IntMatrix incidence_s(const CombinatorialGraph& g) {
  IntMatrix out = IntMatrix::Zero(g.vertex_count(), g.directed_count());
  for (int e = 0; e < g.directed_count(); ++e) out(g.source(e), e) = 1;
  return out;
}

IntMatrix tau_matrix(const CombinatorialGraph& g) {
  const int dm = g.directed_count();
  IntMatrix out = IntMatrix::Zero(dm, dm);
  for (int e = 0; e < dm; ++e) out(g.reverse(e), e) = 1;
  return out;
}

IntMatrix degree_matrix(const CombinatorialGraph& g) {
  const IntMatrix dt = incidence_t(g);
  return dt * dt.transpose();
}

IntMatrix adjacency(const CombinatorialGraph& g) {
  return incidence_t(g) * incidence_s(g).transpose();
}

IntMatrix laplacian(const CombinatorialGraph& g) {
  const IntMatrix dt = incidence_t(g);
  const IntMatrix ds = incidence_s(g);
  return dt * (dt - ds).transpose();
}

IntMatrix nonbacktracking(const CombinatorialGraph& g) {
  const IntMatrix tau = tau_matrix(g);
  const IntMatrix back = incidence_t(g).transpose() * incidence_s(g);
  return tau * back * tau - tau;
}

IntMatrix nonbacktracking_enumerated(const CombinatorialGraph& g) {
  const int dm = g.directed_count();
  IntMatrix out = IntMatrix::Zero(dm, dm);
  for (int e = 0; e < dm; ++e) {
    for (int f = 0; f < dm; ++f) {
      if (g.target(e) == g.source(f) && f != g.reverse(e)) out(f, e) = 1;
    }
  }
  return out;
}

Matrix normalized_laplacian(const CombinatorialGraph& g) {
  const Matrix inc = (incidence_t(g) - incidence_s(g)).cast<double>();
  Vector inv_sqrt(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    inv_sqrt(v) = 1.0 / std::sqrt(static_cast<double>(g.degree(v)));
  }
  // The 2m-column incidence counts each undirected edge twice.
  const Matrix core = 0.5 * inc * inc.transpose();
  return inv_sqrt.asDiagonal() * core * inv_sqrt.asDiagonal();
}

Matrix one_down_laplacian(const CombinatorialGraph& g) {
  const Matrix inc = (incidence_t(g) - incidence_s(g)).cast<double>();
  Vector inv_deg(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    inv_deg(v) = 1.0 / static_cast<double>(g.degree(v));
  }
  return inc.transpose() * inv_deg.asDiagonal() * inc;
}

Matrix bond_scattering_entrywise(const CombinatorialGraph& g) {
  const int dm = g.directed_count();
  Matrix out = Matrix::Zero(dm, dm);
  for (int e = 0; e < dm; ++e) {
    const double d = static_cast<double>(g.degree(g.target(e)));
    for (int f = 0; f < dm; ++f) {
      if (g.target(e) != g.source(f)) continue;
      out(f, e) = f == g.reverse(e) ? 2.0 / d - 1.0 : 2.0 / d;
    }
  }
  return out;
}

Matrix bond_scattering_factored(const CombinatorialGraph& g) {
  const Matrix dt = incidence_t(g).cast<double>();
  const Matrix ds = incidence_s(g).cast<double>();
  Vector inv_deg(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    inv_deg(v) = 1.0 / static_cast<double>(g.degree(v));
  }
  const Matrix tau = tau_matrix(g).cast<double>();
  return 2.0 * (ds.transpose() * inv_deg.asDiagonal() * dt) - tau;
}

Matrix bond_scattering(const CombinatorialGraph& g) {
  Matrix direct = bond_scattering_entrywise(g);
  const Matrix factored = bond_scattering_factored(g);
  const double diff = max_abs_diff(direct, factored);
  if (!(diff <= 1e-12)) {
    throw Error(ErrorKind::InternalConsistency,
                "bond-scattering constructions disagree by " +
                    std::to_string(diff));
  }
  return direct;
}

}  // namespace qg
