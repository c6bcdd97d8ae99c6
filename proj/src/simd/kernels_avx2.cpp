#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kernels_impl.hpp"

namespace statatom::simd::avx2 {

namespace {

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// sin/cos of 2 pi k frac for four lanes, evaluated directly.
void seed(const double frac[4], long k, __m256d& s, __m256d& c) {
  alignas(32) double sv[4], cv[4];
  for (int j = 0; j < 4; ++j) {
    const double kl = static_cast<double>(k) * frac[j];
    const double f = kl - std::floor(kl);
    sv[j] = scalar::sin_two_pi(f);
    cv[j] = scalar::cos_two_pi(f);
  }
  s = _mm256_load_pd(sv);
  c = _mm256_load_pd(cv);
}

}  // namespace

void alternating_sine_series(std::span<const double> lambda, long K, std::span<double> out) {
  // Angles advance by a fixed rotation per k; the recurrence is re-seeded
  // every kBlock steps so rounding drift stays bounded.
  constexpr long kBlock = 64;
  const std::size_t n = lambda.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    double frac[4];
    for (int j = 0; j < 4; ++j) frac[j] = lambda[i + j] - std::floor(lambda[i + j]);
    __m256d s1, c1;
    seed(frac, 1, s1, c1);
    __m256d acc = _mm256_setzero_pd();
    for (long k0 = 1; k0 <= K; k0 += kBlock) {
      __m256d s, c;
      seed(frac, k0, s, c);
      const long k1 = std::min(K, k0 + kBlock - 1);
      for (long k = k0; k <= k1; ++k) {
        const double kd = static_cast<double>(k);
        const double coef = ((k & 1) ? -1.0 : 1.0) / (kd * kd * kd);
        acc = _mm256_fmadd_pd(_mm256_set1_pd(coef), s, acc);
        const __m256d sn = _mm256_fmadd_pd(s, c1, _mm256_mul_pd(c, s1));
        const __m256d cn = _mm256_fmsub_pd(c, c1, _mm256_mul_pd(s, s1));
        s = sn;
        c = cn;
      }
    }
    _mm256_storeu_pd(&out[i], acc);
  }
  if (i < n) scalar::alternating_sine_series(lambda.subspan(i), K, out.subspan(i));
}

void cubic_sawtooth(std::span<const double> lambda, std::span<double> out) {
  const double pi = std::numbers::pi;
  const __m256d two_pi = _mm256_set1_pd(2.0 * pi);
  const __m256d pi2 = _mm256_set1_pd(pi * pi);
  const __m256d minus_twelfth = _mm256_set1_pd(-1.0 / 12.0);
  const std::size_t n = lambda.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d l = _mm256_loadu_pd(&lambda[i]);
    const __m256d r = _mm256_round_pd(l, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    const __m256d th = _mm256_mul_pd(two_pi, _mm256_sub_pd(l, r));
    // pi^2 - theta^2 without fusing (the file is built with -ffp-contract=off),
    // so theta = +-pi gives exactly zero
    const __m256d poly = _mm256_sub_pd(pi2, _mm256_mul_pd(th, th));
    _mm256_storeu_pd(&out[i], _mm256_mul_pd(_mm256_mul_pd(th, poly), minus_twelfth));
  }
  if (i < n) scalar::cubic_sawtooth(lambda.subspan(i), out.subspan(i));
}

Moments weighted_moments(std::span<const double> w, std::span<const double> s,
                         std::span<const double> F) {
  const __m256d zero = _mm256_setzero_pd();
  __m256d a2 = zero, a32 = zero;
  const std::size_t n = w.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d f = _mm256_max_pd(_mm256_loadu_pd(&F[i]), zero);
    const __m256d wv = _mm256_loadu_pd(&w[i]);
    a2 = _mm256_fmadd_pd(_mm256_mul_pd(wv, f), f, a2);
    const __m256d f32 = _mm256_mul_pd(f, _mm256_sqrt_pd(f));
    a32 = _mm256_fmadd_pd(_mm256_mul_pd(wv, _mm256_loadu_pd(&s[i])), f32, a32);
  }
  Moments m{hsum(a2), hsum(a32)};
  if (i < n) {
    const Moments r = scalar::weighted_moments(w.subspan(i), s.subspan(i), F.subspan(i));
    m.f2 += r.f2;
    m.f32 += r.f32;
  }
  return m;
}

}  // namespace statatom::simd::avx2
