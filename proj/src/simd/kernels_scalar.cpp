#include "qgraph/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace qg::simd {

namespace detail {

void half_step_potential(const double* v_nodes, std::size_t n_nodes,
                         double len, double x_end, std::size_t steps,
                         double* out) {
  const double h = x_end / static_cast<double>(steps);
  const double spacing = len / static_cast<double>(n_nodes - 1);
  for (std::size_t i = 0; i <= 2 * steps; ++i) {
    const double x = 0.5 * h * static_cast<double>(i);
    double pos = x / spacing;
    pos = std::clamp(pos, 0.0, static_cast<double>(n_nodes - 1));
    auto cell = static_cast<std::size_t>(pos);
    if (cell >= n_nodes - 1) cell = n_nodes - 2;
    const double frac = pos - static_cast<double>(cell);
    out[i] = v_nodes[cell] + frac * (v_nodes[cell + 1] - v_nodes[cell]);
  }
}

}  // namespace detail

namespace scalar {

void apply_block_diag2(const double* blocks, std::size_t n_blocks,
                       const double* in, double* out, std::size_t cols) {
  const std::size_t rows = 2 * n_blocks;
  for (std::size_t j = 0; j < cols; ++j) {
    const double* x = in + j * rows;
    double* y = out + j * rows;
    for (std::size_t b = 0; b < n_blocks; ++b) {
      const double* m = blocks + 4 * b;
      const double x0 = x[2 * b];
      const double x1 = x[2 * b + 1];
      y[2 * b] = m[0] * x0 + m[1] * x1;
      y[2 * b + 1] = m[3] * x1 + m[2] * x0;
    }
  }
}

void rk4_fundamental(const double* v_nodes, std::size_t n_nodes, double len,
                     double x_end, std::size_t steps, const double* k2,
                     std::size_t lanes, double* out) {
  std::vector<double> v(2 * steps + 1);
  detail::half_step_potential(v_nodes, n_nodes, len, x_end, steps, v.data());
  const double h = x_end / static_cast<double>(steps);
  const double h2 = 0.5 * h;
  const double h6 = h / 6.0;
  for (std::size_t lane = 0; lane < lanes; ++lane) {
    // Two fundamental solutions: (u1, p1) = (1, 0), (u2, p2) = (0, 1).
    double u[2] = {1.0, 0.0};
    double p[2] = {0.0, 1.0};
    for (std::size_t s = 0; s < steps; ++s) {
      const double w0 = v[2 * s] - k2[lane];
      const double wm = v[2 * s + 1] - k2[lane];
      const double w1 = v[2 * s + 2] - k2[lane];
      for (int c = 0; c < 2; ++c) {
        const double ku1 = p[c];
        const double kp1 = w0 * u[c];
        const double ku2 = p[c] + h2 * kp1;
        const double kp2 = wm * (u[c] + h2 * ku1);
        const double ku3 = p[c] + h2 * kp2;
        const double kp3 = wm * (u[c] + h2 * ku2);
        const double ku4 = p[c] + h * kp3;
        const double kp4 = w1 * (u[c] + h * ku3);
        u[c] = u[c] + h6 * (ku1 + 2.0 * ku2 + 2.0 * ku3 + ku4);
        p[c] = p[c] + h6 * (kp1 + 2.0 * kp2 + 2.0 * kp3 + kp4);
      }
    }
    out[4 * lane + 0] = u[0];
    out[4 * lane + 1] = u[1];
    out[4 * lane + 2] = p[0];
    out[4 * lane + 3] = p[1];
  }
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::abs(a[i] - b[i]);
    if (std::isnan(d)) return std::numeric_limits<double>::infinity();
    best = std::max(best, d);
  }
  return best;
}

}  // namespace scalar
}  // namespace qg::simd
