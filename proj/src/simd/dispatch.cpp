#include "qgraph/simd/kernels.hpp"

#include <atomic>

namespace qg::simd {

namespace {

Level detect() {
#if QG_HAVE_AVX2_KERNELS && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return Level::Avx2;
#endif
  return Level::Scalar;
}

// -1: follow detection; otherwise a pinned Level.
std::atomic<int> g_override{-1};

}  // namespace

std::string_view to_string(Level level) {
  switch (level) {
    case Level::Scalar: return "scalar";
    case Level::Avx2: return "avx2";
  }
  return "unknown";
}

Level detected_level() {
  static const Level level = detect();
  return level;
}

Level active_level() {
  const int pinned = g_override.load(std::memory_order_relaxed);
  if (pinned < 0) return detected_level();
  return static_cast<Level>(pinned);
}

void set_level_override(std::optional<Level> level) {
  if (!level) {
    g_override.store(-1, std::memory_order_relaxed);
    return;
  }
  Level chosen = *level;
  if (chosen == Level::Avx2 && detected_level() != Level::Avx2) {
    chosen = Level::Scalar;
  }
  g_override.store(static_cast<int>(chosen), std::memory_order_relaxed);
}

void apply_block_diag2(const double* blocks, std::size_t n_blocks,
                       const double* in, double* out, std::size_t cols) {
#if QG_HAVE_AVX2_KERNELS
  if (active_level() == Level::Avx2) {
    avx2::apply_block_diag2(blocks, n_blocks, in, out, cols);
    return;
  }
#endif
  scalar::apply_block_diag2(blocks, n_blocks, in, out, cols);
}

void rk4_fundamental(const double* v_nodes, std::size_t n_nodes, double len,
                     double x_end, std::size_t steps, const double* k2,
                     std::size_t lanes, double* out) {
#if QG_HAVE_AVX2_KERNELS
  if (active_level() == Level::Avx2) {
    avx2::rk4_fundamental(v_nodes, n_nodes, len, x_end, steps, k2, lanes, out);
    return;
  }
#endif
  scalar::rk4_fundamental(v_nodes, n_nodes, len, x_end, steps, k2, lanes, out);
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
#if QG_HAVE_AVX2_KERNELS
  if (active_level() == Level::Avx2) return avx2::max_abs_diff(a, b, n);
#endif
  return scalar::max_abs_diff(a, b, n);
}

}  // namespace qg::simd
