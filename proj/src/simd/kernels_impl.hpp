#pragma once

#include <span>

#include "statatom/simd/kernels.hpp"

namespace statatom::simd {

namespace scalar {
/// sin(2 pi f) and cos(2 pi f) for f in [0, 1), exact at multiples of 1/4.
double sin_two_pi(double f);
double cos_two_pi(double f);
void alternating_sine_series(std::span<const double> lambda, long K, std::span<double> out);
void cubic_sawtooth(std::span<const double> lambda, std::span<double> out);
Moments weighted_moments(std::span<const double> w, std::span<const double> s,
                         std::span<const double> F);
}  // namespace scalar

#ifdef STATATOM_HAVE_AVX2
namespace avx2 {
void alternating_sine_series(std::span<const double> lambda, long K, std::span<double> out);
void cubic_sawtooth(std::span<const double> lambda, std::span<double> out);
Moments weighted_moments(std::span<const double> w, std::span<const double> s,
                         std::span<const double> F);
}  // namespace avx2
#endif

}  // namespace statatom::simd
