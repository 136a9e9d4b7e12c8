#include "qgraph/simd/kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <vector>

using namespace qg::simd;

namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

struct LevelGuard {
  ~LevelGuard() { set_level_override(std::nullopt); }
};

}  // namespace

TEST_SUITE("simd") {
  TEST_CASE("dispatch override") {
    LevelGuard guard;
    set_level_override(Level::Scalar);
    CHECK(active_level() == Level::Scalar);
    set_level_override(std::nullopt);
    CHECK(active_level() == detected_level());
    CHECK(to_string(Level::Avx2) == "avx2");
  }

#ifdef QG_HAVE_AVX2_KERNELS
  TEST_CASE("block-diagonal product matches scalar") {
    if (detected_level() != Level::Avx2) return;
    for (std::size_t blocks : {1u, 2u, 3u, 7u, 24u}) {
      for (std::size_t cols : {1u, 3u, 5u, 48u}) {
        const auto b = random_vector(4 * blocks, blocks * 31 + cols);
        const auto in = random_vector(2 * blocks * cols, blocks + 7 * cols);
        std::vector<double> s(in.size());
        std::vector<double> v(in.size());
        scalar::apply_block_diag2(b.data(), blocks, in.data(), s.data(), cols);
        avx2::apply_block_diag2(b.data(), blocks, in.data(), v.data(), cols);
        CHECK(bitwise_equal(s, v));
      }
    }
  }

  TEST_CASE("RK4 lanes match scalar") {
    if (detected_level() != Level::Avx2) return;
    std::vector<double> pot;
    for (int i = 0; i <= 100; ++i) pot.push_back(5.0 * std::cos(0.1 * i));
    for (std::size_t lanes : {1u, 3u, 4u, 5u, 9u}) {
      std::vector<double> k2;
      for (std::size_t i = 0; i < lanes; ++i) k2.push_back(0.3 + 4.1 * i);
      for (double x_end : {2.0, 1.3}) {
        std::vector<double> s(4 * lanes);
        std::vector<double> v(4 * lanes);
        scalar::rk4_fundamental(pot.data(), pot.size(), 2.0, x_end, 200,
                                k2.data(), lanes, s.data());
        avx2::rk4_fundamental(pot.data(), pot.size(), 2.0, x_end, 200,
                              k2.data(), lanes, v.data());
        CHECK(bitwise_equal(s, v));
      }
    }
  }

  TEST_CASE("max_abs_diff matches scalar") {
    if (detected_level() != Level::Avx2) return;
    for (std::size_t n : {0u, 1u, 3u, 4u, 17u, 1000u}) {
      const auto a = random_vector(n, n);
      const auto b = random_vector(n, n + 1);
      CHECK(scalar::max_abs_diff(a.data(), b.data(), n) ==
            avx2::max_abs_diff(a.data(), b.data(), n));
    }
    auto a = random_vector(9, 1);
    auto b = a;
    b[6] = std::numeric_limits<double>::quiet_NaN();
    CHECK(std::isinf(avx2::max_abs_diff(a.data(), b.data(), 9)));
    CHECK(std::isinf(scalar::max_abs_diff(a.data(), b.data(), 9)));
  }
#endif

  TEST_CASE("dispatching entry points follow the override") {
    LevelGuard guard;
    const auto a = random_vector(33, 5);
    const auto b = random_vector(33, 6);
    set_level_override(Level::Scalar);
    const double s = max_abs_diff(a.data(), b.data(), a.size());
    set_level_override(std::nullopt);
    CHECK(max_abs_diff(a.data(), b.data(), a.size()) == s);
  }
}
