#pragma once

// Combinatorial model: vertices, paired oriented edges, and the matrices built
// from the oriented incidence maps.
//
// Directed edges use the edge-major layout: indices 0..m-1 carry the input
// orientation and index j+m is the reversal of j. Every 2m- and 4m-sized
// object in the library follows this ordering.

#include "qgraph/linalg.hpp"

#include <utility>
#include <vector>

namespace qg {

struct EdgeEnds {
  int from = 0;
  int to = 0;
};

class CombinatorialGraph {
 public:
  /// Validates: indices in range, no self-loops, every vertex has an edge,
  /// connected. Parallel edges are allowed. Throws Error(Validation).
  CombinatorialGraph(int n_vertices, std::vector<EdgeEnds> edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int directed_count() const { return 2 * edge_count(); }

  int source(int e) const;
  int target(int e) const;
  int reverse(int e) const { return (e + edge_count()) % directed_count(); }
  int degree(int v) const { return degrees_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& degrees() const { return degrees_; }
  const std::vector<EdgeEnds>& edges() const { return edges_; }

  /// Directed edges leaving / entering v, in index order.
  std::vector<int> out_edges(int v) const;
  std::vector<int> in_edges(int v) const;

  friend bool operator==(const CombinatorialGraph& a,
                         const CombinatorialGraph& b);

 private:
  int n_;
  std::vector<EdgeEnds> edges_;
  std::vector<int> degrees_;
};

/// First Betti number m - n + 1.
int betti(const CombinatorialGraph& g);

/// Disjoint union with v1 in g1 and v2 in g2 identified. Vertices of g1 keep
/// their indices, g2's remaining vertices follow in order; g1's edges precede
/// g2's.
CombinatorialGraph glue_at_vertices(const CombinatorialGraph& g1, int v1,
                                    const CombinatorialGraph& g2, int v2);

/// Index of g2's vertex `v` inside glue_at_vertices(g1, v1, g2, v2).
int glued_vertex_index(const CombinatorialGraph& g1, int v1,
                       const CombinatorialGraph& g2, int v2, int v);

// Integer-valued matrices, exact.
IntMatrix incidence_t(const CombinatorialGraph& g);  // n x 2m, δ_t*
IntMatrix incidence_s(const CombinatorialGraph& g);  // n x 2m, δ_s*
IntMatrix tau_matrix(const CombinatorialGraph& g);   // 2m x 2m
IntMatrix degree_matrix(const CombinatorialGraph& g);
IntMatrix adjacency(const CombinatorialGraph& g);
IntMatrix laplacian(const CombinatorialGraph& g);
/// H[e', e] = 1 iff t(e) = s(e') and e' != -e, built as τδ_tδ_s*τ - τ.
IntMatrix nonbacktracking(const CombinatorialGraph& g);
/// Same matrix by direct enumeration of (e', e) pairs.
IntMatrix nonbacktracking_enumerated(const CombinatorialGraph& g);

// Real-valued matrices.
Matrix normalized_laplacian(const CombinatorialGraph& g);
/// (δ_t - δ_s) D^{-1} (δ_t* - δ_s*), 2m x 2m.
Matrix one_down_laplacian(const CombinatorialGraph& g);

/// Bond-scattering matrix from the case definition: S[e', e] = 2/d_{t(e)}
/// when t(e) = s(e'), minus 1 when e' = -e.
Matrix bond_scattering_entrywise(const CombinatorialGraph& g);
/// Bond-scattering matrix from 2 δ_s D^{-1} δ_t* - τ.
Matrix bond_scattering_factored(const CombinatorialGraph& g);
/// Builds both and throws Error(InternalConsistency) if they differ by more
/// than 1e-12 anywhere.
Matrix bond_scattering(const CombinatorialGraph& g);

}  // namespace qg
