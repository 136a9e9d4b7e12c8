// Compiled with -mavx2 only (no -mfma) so that the compiler cannot contract
// the mul/add sequences and the results match the scalar reference exactly.

#include "qgraph/simd/kernels.hpp"

#include <immintrin.h>

#include <cmath>
#include <limits>
#include <vector>

namespace qg::simd::avx2 {

void apply_block_diag2(const double* blocks, std::size_t n_blocks,
                       const double* in, double* out, std::size_t cols) {
  const std::size_t rows = 2 * n_blocks;
  const std::size_t pairs = n_blocks / 2;
  // Per pair of blocks: diag = [a0, d0, a1, d1], anti = [b0, c0, b1, c1].
  std::vector<double> diag(4 * pairs), anti(4 * pairs);
  for (std::size_t q = 0; q < pairs; ++q) {
    const double* m0 = blocks + 8 * q;
    const double* m1 = m0 + 4;
    diag[4 * q + 0] = m0[0];
    diag[4 * q + 1] = m0[3];
    diag[4 * q + 2] = m1[0];
    diag[4 * q + 3] = m1[3];
    anti[4 * q + 0] = m0[1];
    anti[4 * q + 1] = m0[2];
    anti[4 * q + 2] = m1[1];
    anti[4 * q + 3] = m1[2];
  }
  for (std::size_t j = 0; j < cols; ++j) {
    const double* x = in + j * rows;
    double* y = out + j * rows;
    for (std::size_t q = 0; q < pairs; ++q) {
      const __m256d v = _mm256_loadu_pd(x + 4 * q);
      const __m256d swapped = _mm256_permute_pd(v, 0b0101);
      const __m256d d = _mm256_loadu_pd(diag.data() + 4 * q);
      const __m256d a = _mm256_loadu_pd(anti.data() + 4 * q);
      _mm256_storeu_pd(y + 4 * q,
                       _mm256_add_pd(_mm256_mul_pd(d, v),
                                     _mm256_mul_pd(a, swapped)));
    }
    if (n_blocks % 2 == 1) {
      const std::size_t b = n_blocks - 1;
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
  const double hs = x_end / static_cast<double>(steps);
  const __m256d h = _mm256_set1_pd(hs);
  const __m256d h2 = _mm256_set1_pd(0.5 * hs);
  const __m256d h6 = _mm256_set1_pd(hs / 6.0);
  const __m256d two = _mm256_set1_pd(2.0);

  std::size_t lane = 0;
  for (; lane + 4 <= lanes; lane += 4) {
    const __m256d kk = _mm256_loadu_pd(k2 + lane);
    __m256d u[2] = {_mm256_set1_pd(1.0), _mm256_setzero_pd()};
    __m256d p[2] = {_mm256_setzero_pd(), _mm256_set1_pd(1.0)};
    for (std::size_t s = 0; s < steps; ++s) {
      const __m256d w0 = _mm256_sub_pd(_mm256_set1_pd(v[2 * s]), kk);
      const __m256d wm = _mm256_sub_pd(_mm256_set1_pd(v[2 * s + 1]), kk);
      const __m256d w1 = _mm256_sub_pd(_mm256_set1_pd(v[2 * s + 2]), kk);
      for (int c = 0; c < 2; ++c) {
        const __m256d ku1 = p[c];
        const __m256d kp1 = _mm256_mul_pd(w0, u[c]);
        const __m256d ku2 = _mm256_add_pd(p[c], _mm256_mul_pd(h2, kp1));
        const __m256d kp2 =
            _mm256_mul_pd(wm, _mm256_add_pd(u[c], _mm256_mul_pd(h2, ku1)));
        const __m256d ku3 = _mm256_add_pd(p[c], _mm256_mul_pd(h2, kp2));
        const __m256d kp3 =
            _mm256_mul_pd(wm, _mm256_add_pd(u[c], _mm256_mul_pd(h2, ku2)));
        const __m256d ku4 = _mm256_add_pd(p[c], _mm256_mul_pd(h, kp3));
        const __m256d kp4 =
            _mm256_mul_pd(w1, _mm256_add_pd(u[c], _mm256_mul_pd(h, ku3)));
        const __m256d su = _mm256_add_pd(
            _mm256_add_pd(_mm256_add_pd(ku1, _mm256_mul_pd(two, ku2)),
                          _mm256_mul_pd(two, ku3)),
            ku4);
        const __m256d sp = _mm256_add_pd(
            _mm256_add_pd(_mm256_add_pd(kp1, _mm256_mul_pd(two, kp2)),
                          _mm256_mul_pd(two, kp3)),
            kp4);
        u[c] = _mm256_add_pd(u[c], _mm256_mul_pd(h6, su));
        p[c] = _mm256_add_pd(p[c], _mm256_mul_pd(h6, sp));
      }
    }
    alignas(32) double buf[4][4];
    _mm256_store_pd(buf[0], u[0]);
    _mm256_store_pd(buf[1], u[1]);
    _mm256_store_pd(buf[2], p[0]);
    _mm256_store_pd(buf[3], p[1]);
    for (int l = 0; l < 4; ++l) {
      for (int r = 0; r < 4; ++r) out[4 * (lane + l) + r] = buf[r][l];
    }
  }
  if (lane < lanes) {
    scalar::rk4_fundamental(v_nodes, n_nodes, len, x_end, steps, k2 + lane,
                            lanes - lane, out + 4 * lane);
  }
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d best = _mm256_setzero_pd();
  __m256d nan_seen = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    nan_seen = _mm256_or_pd(nan_seen, _mm256_cmp_pd(d, d, _CMP_UNORD_Q));
    best = _mm256_max_pd(best, _mm256_andnot_pd(sign, d));
  }
  if (_mm256_movemask_pd(nan_seen) != 0) {
    return std::numeric_limits<double>::infinity();
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double out = lanes[0];
  for (int l = 1; l < 4; ++l) out = lanes[l] > out ? lanes[l] : out;
  const double tail = scalar::max_abs_diff(a + i, b + i, n - i);
  return tail > out ? tail : out;
}

}  // namespace qg::simd::avx2
