#pragma once

// Vectorized inner loops with a portable scalar reference. The AVX2/FMA
// variants are chosen at runtime when the CPU supports them; setting the
// environment variable STATATOM_SIMD=scalar forces the reference path.

#include <span>

namespace statatom::simd {

enum class Isa { scalar, avx2 };

bool isa_available(Isa isa) noexcept;
/// The variant used by default calls (resolved once per process).
Isa active_isa() noexcept;
const char* isa_name(Isa isa) noexcept;

/// out[i] = sum_{k=1}^{K} (-1)^k sin(2 pi k lambda[i]) / k^3
void alternating_sine_series(std::span<const double> lambda, long K, std::span<double> out,
                             Isa isa = active_isa());

/// Closed form of the K -> infinity limit of alternating_sine_series:
/// -theta (pi^2 - theta^2) / 12 with theta = 2 pi (lambda - nearest integer).
void cubic_sawtooth(std::span<const double> lambda, std::span<double> out,
                    Isa isa = active_isa());

struct Moments {
  double f2 = 0;   // sum w F^2
  double f32 = 0;  // sum w s F^(3/2)
};

/// Weighted quadrature sums; negative F is treated as zero.
Moments weighted_moments(std::span<const double> w, std::span<const double> s,
                         std::span<const double> F, Isa isa = active_isa());

}  // namespace statatom::simd
