#pragma once

// The six worked configurations: builders plus runners that evaluate each
// stated claim and report what was actually observed.

#include "qgraph/metric_graph.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qg {

/// K4 with edges (0,1) (0,2) (0,3) (1,2) (1,3) (2,3); edge #1 is (0,1).
CombinatorialGraph tetrahedron_graph();
/// Complete graph on n vertices, edges in lexicographic order.
CombinatorialGraph complete_graph(int n);

MetricGraph equilateral_tetrahedron(double length = 3.141592653589793);
/// Case 2: edge #1 has length 1, the rest pi.
MetricGraph case2_graph();
/// Case 3: the pi tetrahedron plus a path of two pi edges from vertex 0 to
/// vertex 1 through a new vertex 4.
MetricGraph case3_graph();
/// Case 4: pi tetrahedron with V = 144 on edge #1.
MetricGraph case4_graph();
/// Case 5: K10 whose edges get length pi with probability 1/3 and 1
/// otherwise, drawn from a 64-bit Mersenne Twister seeded with `seed`.
MetricGraph case5_graph(std::uint64_t seed);
/// Case 6: a path of two pi/2 edges (vertices 0, 1, 2) whose middle vertex,
/// the node of cos x at k = 1, is glued to vertex 0 of the pi tetrahedron.
MetricGraph case6_graph();

struct CaseCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CaseReport {
  int index = 0;
  std::string title;
  std::vector<std::string> notes;
  std::vector<CaseCheck> checks;

  bool passed() const;
};

/// Throws Error(Argument) for an index outside 1..6 or case 5 without seed.
CaseReport run_case_study(int index, std::optional<std::uint64_t> seed = {});

void print_report(std::ostream& out, const CaseReport& r);

}  // namespace qg
