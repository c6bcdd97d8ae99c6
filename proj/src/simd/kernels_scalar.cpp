#include <algorithm>
#include <cmath>
#include <numbers>

#include "kernels_impl.hpp"

namespace statatom::simd::scalar {

double sin_two_pi(double f) {
  if (f == 0.0 || f == 0.5) return 0.0;
  if (f == 0.25) return 1.0;
  if (f == 0.75) return -1.0;
  return std::sin(2.0 * std::numbers::pi * f);
}

double cos_two_pi(double f) {
  if (f == 0.25 || f == 0.75) return 0.0;
  if (f == 0.0) return 1.0;
  if (f == 0.5) return -1.0;
  return std::cos(2.0 * std::numbers::pi * f);
}

void alternating_sine_series(std::span<const double> lambda, long K, std::span<double> out) {
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    // Only the fractional part of k*lambda matters; reducing first keeps the
    // sine argument small for large k.
    const double frac = lambda[i] - std::floor(lambda[i]);
    double sum = 0;
    for (long k = K; k >= 1; --k) {
      const double kl = static_cast<double>(k) * frac;
      const double term = sin_two_pi(kl - std::floor(kl));
      const double kd = static_cast<double>(k);
      sum += ((k & 1) ? -term : term) / (kd * kd * kd);
    }
    out[i] = sum;
  }
}

void cubic_sawtooth(std::span<const double> lambda, std::span<double> out) {
  constexpr double pi = std::numbers::pi;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    const double theta = 2.0 * pi * (lambda[i] - std::nearbyint(lambda[i]));
    out[i] = -theta * (pi * pi - theta * theta) / 12.0;
  }
}

Moments weighted_moments(std::span<const double> w, std::span<const double> s,
                         std::span<const double> F) {
  Moments m;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double f = std::max(F[i], 0.0);
    m.f2 += w[i] * f * f;
    m.f32 += w[i] * s[i] * f * std::sqrt(f);
  }
  return m;
}

}  // namespace statatom::simd::scalar
