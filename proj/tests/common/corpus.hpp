#pragma once

// Seeded random connected graphs shared by the unit and acceptance suites.

#include "qgraph/metric_graph.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace qg::testing {

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

/// Simple connected graph on 4..12 vertices: a random tree plus 1..5 extra
/// edges. Lengths uniform in [0.5, 2.5], zero potentials.
inline MetricGraph random_graph(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = uniform_int(rng, 4, 12);
  std::vector<EdgeEnds> edges;
  std::set<std::pair<int, int>> used;
  auto add = [&](int a, int b) {
    const auto key = std::minmax(a, b);
    if (a == b || used.count(key)) return false;
    used.insert(key);
    edges.push_back({a, b});
    return true;
  };
  for (int v = 1; v < n; ++v) add(uniform_int(rng, 0, v - 1), v);
  const int max_extra = n * (n - 1) / 2 - (n - 1);
  const int extra = std::min(uniform_int(rng, 1, 5), max_extra);
  for (int added = 0; added < extra;) {
    added += add(uniform_int(rng, 0, n - 1), uniform_int(rng, 0, n - 1));
  }
  std::vector<double> lengths;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    lengths.push_back(0.5 + 2.0 * uniform01(rng));
  }
  return MetricGraph(CombinatorialGraph(n, std::move(edges)), lengths);
}

inline constexpr std::uint64_t kCorpusSeed = 20240611;
inline constexpr int kCorpusSize = 50;

inline std::vector<MetricGraph> corpus() {
  std::vector<MetricGraph> out;
  for (int i = 0; i < kCorpusSize; ++i) out.push_back(random_graph(kCorpusSeed + i));
  return out;
}

/// Tetrahedron with pairwise incommensurate lengths.
inline MetricGraph incommensurate_tetrahedron() {
  return MetricGraph(
      CombinatorialGraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}),
      {1.0, 1.4142135623730951, 1.7320508075688772, 2.2360679774997898,
       2.6457513110645907, 0.8});
}

}  // namespace qg::testing
