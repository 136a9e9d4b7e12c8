#pragma once

// Data-parallel inner loops. Every kernel has a portable scalar reference in
// qg::simd::scalar and, on x86-64, an AVX2 variant in qg::simd::avx2. The
// unqualified entry points dispatch once per call on the active level, which
// is detected from the CPU at first use and can be pinned for testing.
//
// The AVX2 variants use only mul/add (no FMA) in the same order as the scalar
// code, so both paths are expected to agree bit for bit.

#include <cstddef>
#include <optional>
#include <string_view>

namespace qg::simd {

enum class Level { Scalar, Avx2 };

std::string_view to_string(Level level);

/// Best level supported by this CPU and build.
Level detected_level();
/// Level used by the dispatching entry points.
Level active_level();
/// Pins the active level (nullopt restores detection). A request for a level
/// the CPU cannot run falls back to Scalar.
void set_level_override(std::optional<Level> level);

/// out = BMat[B_0, ..., B_{n-1}] * in for column-major `in`/`out` with
/// 2*n_blocks rows and `cols` columns. `blocks` holds each 2x2 block row-major
/// (a, b, c, d). `in` and `out` must not alias.
void apply_block_diag2(const double* blocks, std::size_t n_blocks,
                       const double* in, double* out, std::size_t cols);

/// Classical RK4 for the fundamental system of -u'' + V u = k^2 u on
/// [0, x_end], one lane per entry of `k2`. V is the piecewise-linear
/// interpolant of `n_nodes` equally spaced samples on [0, len]. Writes
/// [psi1, psi2, psi1', psi2'] at x_end for each lane into out[4*lane ...].
void rk4_fundamental(const double* v_nodes, std::size_t n_nodes, double len,
                     double x_end, std::size_t steps, const double* k2,
                     std::size_t lanes, double* out);

/// max_i |a_i - b_i|; NaN anywhere propagates as +inf.
double max_abs_diff(const double* a, const double* b, std::size_t n);

namespace scalar {
void apply_block_diag2(const double* blocks, std::size_t n_blocks,
                       const double* in, double* out, std::size_t cols);
void rk4_fundamental(const double* v_nodes, std::size_t n_nodes, double len,
                     double x_end, std::size_t steps, const double* k2,
                     std::size_t lanes, double* out);
double max_abs_diff(const double* a, const double* b, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define QG_HAVE_AVX2_KERNELS 1
namespace avx2 {
void apply_block_diag2(const double* blocks, std::size_t n_blocks,
                       const double* in, double* out, std::size_t cols);
void rk4_fundamental(const double* v_nodes, std::size_t n_nodes, double len,
                     double x_end, std::size_t steps, const double* k2,
                     std::size_t lanes, double* out);
double max_abs_diff(const double* a, const double* b, std::size_t n);
}  // namespace avx2
#else
#define QG_HAVE_AVX2_KERNELS 0
#endif

namespace detail {
/// Potential at the 2*steps+1 half-step points of [0, x_end].
void half_step_potential(const double* v_nodes, std::size_t n_nodes,
                         double len, double x_end, std::size_t steps,
                         double* out);
}  // namespace detail

}  // namespace qg::simd
