#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "kernels_impl.hpp"

namespace statatom::simd {

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(STATATOM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() noexcept {
  static const Isa isa = [] {
    const char* env = std::getenv("STATATOM_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return Isa::scalar;
    return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
  }();
  return isa;
}

const char* isa_name(Isa isa) noexcept {
  return isa == Isa::avx2 ? "avx2" : "scalar";
}

#ifdef STATATOM_HAVE_AVX2
#define STATATOM_DISPATCH(fn, ...)                             \
  if (isa == Isa::avx2 && isa_available(Isa::avx2)) return avx2::fn(__VA_ARGS__); \
  return scalar::fn(__VA_ARGS__)
#else
#define STATATOM_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__)
#endif

void alternating_sine_series(std::span<const double> lambda, long K, std::span<double> out,
                             Isa isa) {
  if (out.size() != lambda.size()) throw std::invalid_argument("output size mismatch");
  STATATOM_DISPATCH(alternating_sine_series, lambda, K, out);
}

void cubic_sawtooth(std::span<const double> lambda, std::span<double> out, Isa isa) {
  if (out.size() != lambda.size()) throw std::invalid_argument("output size mismatch");
  STATATOM_DISPATCH(cubic_sawtooth, lambda, out);
}

Moments weighted_moments(std::span<const double> w, std::span<const double> s,
                         std::span<const double> F, Isa isa) {
  if (s.size() != w.size() || F.size() != w.size())
    throw std::invalid_argument("input size mismatch");
  STATATOM_DISPATCH(weighted_moments, w, s, F);
}

}  // namespace statatom::simd
