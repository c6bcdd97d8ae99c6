#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "statatom/simd/kernels.hpp"

using namespace statatom::simd;

namespace {

const std::size_t kLengths[] = {0, 1, 3, 4, 5, 17, 1001};

std::vector<double> random_lambdas(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(0.5, 120.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

// Direct sum with std::sin, no range reduction tricks.
double naive_series(double lambda, long K) {
  double s = 0;
  for (long k = K; k >= 1; --k)
    s += (k % 2 ? -1.0 : 1.0) * std::sin(2 * std::numbers::pi * k * lambda) / (double(k) * k * k);
  return s;
}

}  // namespace

TEST_CASE("isa names and availability") {
  CHECK(std::strcmp(isa_name(Isa::scalar), "scalar") == 0);
  CHECK(std::strcmp(isa_name(Isa::avx2), "avx2") == 0);
  CHECK(isa_available(Isa::scalar));
  CHECK(isa_available(active_isa()));
}

TEST_CASE("scalar series against a naive sum") {
  const auto lam = random_lambdas(50, 1);
  std::vector<double> out(lam.size());
  alternating_sine_series(lam, 300, out, Isa::scalar);
  for (std::size_t i = 0; i < lam.size(); ++i)
    CHECK(out[i] == doctest::Approx(naive_series(lam[i], 300)).epsilon(1e-9));
}

TEST_CASE("scalar sawtooth is the resummed series") {
  const auto lam = random_lambdas(50, 2);
  std::vector<double> saw(lam.size()), ser(lam.size());
  cubic_sawtooth(lam, saw, Isa::scalar);
  alternating_sine_series(lam, 20000, ser, Isa::scalar);
  for (std::size_t i = 0; i < lam.size(); ++i) CHECK(std::abs(saw[i] - ser[i]) < 1.0 / (2 * 2e4 * 2e4));
}

TEST_CASE("avx2 kernels match the scalar reference") {
  if (!isa_available(Isa::avx2)) {
    MESSAGE("avx2 not available on this machine; equivalence not exercised");
    return;
  }
  for (std::size_t n : kLengths) {
    CAPTURE(n);
    const auto lam = random_lambdas(n, 10 + static_cast<unsigned>(n));
    std::vector<double> a(n), b(n);
    for (long K : {1L, 7L, 64L, 65L, 1000L}) {
      alternating_sine_series(lam, K, a, Isa::scalar);
      alternating_sine_series(lam, K, b, Isa::avx2);
      for (std::size_t i = 0; i < n; ++i) REQUIRE(std::abs(a[i] - b[i]) < 1e-12);
    }
    cubic_sawtooth(lam, a, Isa::scalar);
    cubic_sawtooth(lam, b, Isa::avx2);
    for (std::size_t i = 0; i < n; ++i) REQUIRE(std::abs(a[i] - b[i]) < 1e-14);

    std::mt19937_64 rng(n);
    std::uniform_real_distribution<double> d(-0.1, 1.0);
    std::vector<double> w(n), s(n), F(n);
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = d(rng) + 0.1;
      s[i] = d(rng) + 0.1;
      F[i] = d(rng);  // some negative entries
    }
    const auto ms = weighted_moments(w, s, F, Isa::scalar);
    const auto mv = weighted_moments(w, s, F, Isa::avx2);
    CHECK(mv.f2 == doctest::Approx(ms.f2).epsilon(1e-13));
    CHECK(mv.f32 == doctest::Approx(ms.f32).epsilon(1e-13));
  }
}

TEST_CASE("exact zeros at integer and half-integer arguments") {
  const std::vector<double> lam = {1.0, 1.5, 2.0, 7.5, 3.0, 44.5, 0.5, 10.0, 99.0};
  std::vector<double> out(lam.size());
  for (Isa isa : {Isa::scalar, Isa::avx2}) {
    if (!isa_available(isa)) continue;
    cubic_sawtooth(lam, out, isa);
    for (double v : out) CHECK(v == 0.0);
    alternating_sine_series(lam, 500, out, isa);
    for (double v : out) CHECK(v == 0.0);
  }
}

TEST_CASE("negative F contributes nothing to the moments") {
  const std::vector<double> w = {1, 1, 1, 1, 1}, s = {1, 1, 1, 1, 1}, F = {-1, 4, -2, 1, -3};
  const auto m = weighted_moments(w, s, F, Isa::scalar);
  CHECK(m.f2 == 17.0);
  CHECK(m.f32 == 9.0);
}

TEST_CASE("mismatched lengths are rejected") {
  std::vector<double> a(3), b(4);
  CHECK_THROWS_AS(alternating_sine_series(a, 5, b), std::invalid_argument);
  CHECK_THROWS_AS(cubic_sawtooth(a, b), std::invalid_argument);
  CHECK_THROWS_AS(weighted_moments(a, a, b), std::invalid_argument);
}
