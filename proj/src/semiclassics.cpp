#include "statatom/semiclassics.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "statatom/error.hpp"
#include "statatom/simd/kernels.hpp"

namespace statatom {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Peak {
  double r;
  double g;  // 2 r^2 (E - V) at r
};

double bracket(const RadialPotential& V, double E, double r) {
  return 2.0 * r * r * (E - V(r));
}

// Maximum of 2 r^2 (E - V) over r: coarse scan in ln r, then Brent.
Peak find_peak(const RadialPotential& V, double E) {
  const double L = V.length_scale();
  const double u0 = std::log(1e-8 * L), u1 = std::log(1e4 * L);
  constexpr int n = 480;
  const double du = (u1 - u0) / n;
  int best = 0;
  double gbest = -kInf;
  for (int i = 0; i <= n; ++i) {
    const double g = bracket(V, E, std::exp(u0 + i * du));
    if (g > gbest) {
      gbest = g;
      best = i;
    }
  }
  if (best == n) throw DomainError("the classically allowed region is unbounded at this energy");
  const double a = u0 + std::max(best - 1, 0) * du;
  const double b = u0 + (best + 1) * du;
  const auto res = boost::math::tools::brent_find_minima(
      [&](double u) { return -bracket(V, E, std::exp(u)); }, a, b,
      std::numeric_limits<double>::digits / 2);
  const double r = std::exp(res.first);
  return {r, -res.second};
}

double find_root(const RadialPotential& V, double E, double lam2, double a, double b) {
  auto f = [&](double r) { return bracket(V, E, r) - lam2; };
  std::uintmax_t it = 200;
  const auto res = boost::math::tools::toms748_solve(
      f, a, b, f(a), f(b), boost::math::tools::eps_tolerance<double>(50), it);
  return 0.5 * (res.first + res.second);
}

template <class Fn>
double integrate(Fn&& f, double a, double b, double tol = 1e-13) {
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 20, tol);
}

// C-infinity step: 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double p = std::exp(-1.0 / t);
  const double q = std::exp(-1.0 / (1.0 - t));
  return p / (p + q);
}

}  // namespace

TFPotential::TFPotential(const TFSolution& sol, double Z) : sol_(sol), units_(Z) {
  if (!(Z > 0.0)) throw DomainError("Z must be positive");
  if (!sol.neutral()) throw UnsupportedCase("semiclassical quantization needs a neutral TF potential");
}

double TFPotential::operator()(double r) const {
  return -(units_.Z() / r) * sol_.evaluate(units_.x_of_r(r)).F;
}

CoulombPotential::CoulombPotential(double Z) : Z_(Z) {
  if (!(Z > 0.0)) throw DomainError("Z must be positive");
}

double lambda_max(const RadialPotential& V, double E) {
  if (E > 0.0) throw DomainError("energy must be nonpositive");
  const Peak p = find_peak(V, E);
  return p.g > 0.0 ? std::sqrt(p.g) : 0.0;
}

double lambda_max(const TFSolution& sol, double Z, double E) {
  return lambda_max(TFPotential(sol, Z), E);
}

NuResult nu_of(const RadialPotential& V, double E, double lambda) {
  if (E > 0.0) throw DomainError("energy must be nonpositive");
  if (!(lambda >= 0.0)) throw DomainError("lambda must be nonnegative");
  const Peak p = find_peak(V, E);
  const double lam2 = lambda * lambda;
  if (!(p.g > lam2)) return {0.0, false};

  auto f = [&](double r) { return bracket(V, E, r) - lam2; };

  double r1 = 0.0;
  if (lambda > 0.0) {
    double a = p.r * 1e-3;
    while (f(a) >= 0.0) a *= 1e-3;
    r1 = find_root(V, E, lam2, a, p.r);
  }

  const bool open = lambda == 0.0 && E == 0.0 && V.bounded_at_infinity();
  double nu = 0.0;
  if (open) {
    // [0, R] with r = 2R sin^2(phi/2).
    const double R = p.r;
    nu = integrate(
        [&](double phi) {
          const double s = std::sin(0.5 * phi);
          const double r = 2.0 * R * s * s;
          if (r <= 0.0) return 0.0;
          return std::sqrt(std::max(f(r), 0.0)) / r * R * std::sin(phi);
        },
        0.0, 0.5 * pi);
    // Beyond R the bracket decays like 1/r^2: integrate in ln r out to
    // R e^40 and close with int_X^inf sqrt(C)/r^2 dr = sqrt(g(X)).
    constexpr double span = 40.0;
    nu += integrate([&](double s) { return std::sqrt(std::max(f(R * std::exp(s)), 0.0)); }, 0.0,
                    span);
    nu += std::sqrt(std::max(f(R * std::exp(span)), 0.0));
  } else {
    double b = 2.0 * p.r;
    for (int i = 0; f(b) >= 0.0; ++i) {
      if (i > 2000) throw DomainError("outer turning point not found");
      b *= 2.0;
    }
    const double r2 = find_root(V, E, lam2, p.r, b);
    const double d = r2 - r1;
    // f carries absolute noise ~eps p.g; near lambda_max that is large
    // relative to the integrand, so ask only for what is resolvable.
    const double tol =
        std::max(1e-13, 64 * std::numeric_limits<double>::epsilon() * p.g / (p.g - lam2));
    // r = r1 + d sin^2(phi/2) absorbs the square-root zeros at both ends.
    nu = integrate(
        [&](double phi) {
          const double s = std::sin(0.5 * phi);
          const double r = r1 + d * s * s;
          if (r <= 0.0) return 0.0;
          return std::sqrt(std::max(f(r), 0.0)) / r * 0.5 * d * std::sin(phi);
        },
        0.0, pi, tol);
  }
  return {nu / pi, true};
}

NuResult nu_of(const TFSolution& sol, double Z, double E, double lambda) {
  return nu_of(TFPotential(sol, Z), E, lambda);
}

QuantCurve degeneracy_curve(const RadialPotential& V, double E, std::span<const double> grid) {
  QuantCurve c{V.Z(), E, {}, {}, lambda_max(V, E)};
  for (double l : grid) {
    if (l > c.lambda_max) continue;
    c.lambda.push_back(l);
    c.nu.push_back(nu_of(V, E, l).nu);
  }
  return c;
}

QuantCurve degeneracy_curve(const TFSolution& sol, double Z, double E,
                            std::span<const double> grid) {
  return degeneracy_curve(TFPotential(sol, Z), E, grid);
}

std::vector<QuantState> predict_occupied(const TFSolution& sol, double Z) {
  const TFPotential V(sol, Z);
  std::vector<QuantState> out;
  for (int l = 0;; ++l) {
    const NuResult r = nu_of(V, 0.0, l + 0.5);
    if (!r.allowed || r.nu <= 0.5) break;
    for (int nr = 0; nr + 0.5 < r.nu; ++nr) out.push_back({l, nr});
  }
  return out;
}

XFPeak max_xF(const TFSolution& sol) {
  auto h = [&](double x) { return x * sol.evaluate(x).F; };
  const double u0 = std::log(1e-3), u1 = std::log(1e3);
  constexpr int n = 240;
  const double du = (u1 - u0) / n;
  int best = 0;
  double hb = -kInf;
  for (int i = 0; i <= n; ++i) {
    const double v = h(std::exp(u0 + i * du));
    if (v > hb) {
      hb = v;
      best = i;
    }
  }
  const auto res = boost::math::tools::brent_find_minima(
      [&](double u) { return -h(std::exp(u)); }, u0 + std::max(best - 1, 0) * du,
      u0 + std::min(best + 1, n) * du, std::numeric_limits<double>::digits / 2);
  return {std::exp(res.first), -res.second};
}

double lambda0_coefficient(const TFSolution& sol) {
  return std::sqrt(2.0 * tf_length_constant() * max_xF(sol).value);
}

// ------------------------------------------------------------------------------

double ltf_oscillation_fourier(double Z, long K, double coeff) {
  if (!(Z > 0.0)) throw DomainError("Z must be positive");
  if (K < 1) throw DomainError("K must be at least 1");
  const double lam[1] = {coeff * std::cbrt(Z)};
  double s[1];
  simd::alternating_sine_series(lam, K, s);
  return -kOscillationAmplitude * std::pow(Z, 4.0 / 3.0) * s[0] / (pi * pi * pi);
}

double ltf_oscillation_closed(double Z, double coeff) {
  if (!(Z > 0.0)) throw DomainError("Z must be positive");
  const double lam[1] = {coeff * std::cbrt(Z)};
  double s[1];
  simd::cubic_sawtooth(lam, s);
  return -kOscillationAmplitude * std::pow(Z, 4.0 / 3.0) * s[0] / (pi * pi * pi);
}

OscillationSeries oscillation_series(std::span<const double> zcube, double coeff, long K) {
  if (K < 0) throw DomainError("K must be nonnegative");
  OscillationSeries s{{zcube.begin(), zcube.end()}, std::vector<double>(zcube.size()), K, coeff};
  std::vector<double> lam(zcube.size());
  for (std::size_t i = 0; i < zcube.size(); ++i) {
    if (!(zcube[i] > 0.0)) throw DomainError("Z^(1/3) grid must be positive");
    lam[i] = coeff * zcube[i];
  }
  if (K == 0) simd::cubic_sawtooth(lam, s.values);
  else simd::alternating_sine_series(lam, K, s.values);
  for (std::size_t i = 0; i < zcube.size(); ++i) {
    const double z43 = zcube[i] * zcube[i] * zcube[i] * zcube[i];
    s.values[i] *= -kOscillationAmplitude * z43 / (pi * pi * pi);
  }
  return s;
}

double measure_period(const OscillationSeries& s) {
  std::vector<double> crossings;
  std::size_t last = s.values.size();
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    const double v = s.values[i];
    if (v == 0.0) continue;
    if (last < s.values.size() && (v > 0) != (s.values[last] > 0)) {
      const double a = s.values[last];
      crossings.push_back(s.zcube[last] + (s.zcube[i] - s.zcube[last]) * a / (a - v));
    }
    last = i;
  }
  if (crossings.size() < 2) throw DomainError("series has fewer than two sign changes");
  return 2.0 * (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
}

double envelope_amplitude(const OscillationSeries& s) {
  double peak = 0.0;
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    const double z43 = std::pow(s.zcube[i], 4.0);
    peak = std::max(peak, std::abs(s.values[i]) / z43);
  }
  return 18.0 * std::sqrt(3.0) * peak;
}

// ------------------------------------------------------------------------------

double ltf_radial_integral(const TFSolution& sol, double Z, int k, const IntegralOptions& opt) {
  if (!sol.neutral()) throw UnsupportedCase("oscillation integral needs a neutral TF potential");
  if (!(Z > 0.0)) throw DomainError("Z must be positive");
  if (k < 1) throw DomainError("k must be at least 1");
  if (!(opt.window_lo > 0.0 && opt.window_lo < opt.window_hi && opt.window_hi < 1.0))
    throw DomainError("need 0 < window_lo < window_hi < 1");
  const double a = tf_length_constant();
  const double zc = std::cbrt(Z);
  const XFPeak pk = max_xF(sol);
  const double lam0 = zc * std::sqrt(2.0 * a * pk.value);

  auto h = [&](double s) {
    const double x = std::exp(s);
    return x * std::max(sol.evaluate(x).F, 0.0);
  };
  // Support of the window: h >= window_lo^2 h*, on either side of the peak.
  const double hmin = opt.window_lo * opt.window_lo * pk.value;
  auto edge = [&](double s_in, double s_out) {
    for (int i = 0; i < 200; ++i) {
      const double m = 0.5 * (s_in + s_out);
      (h(m) >= hmin ? s_in : s_out) = m;
    }
    return s_out;
  };
  const double sp = std::log(pk.x);
  const double sa = edge(sp, std::log(1e-8));
  const double sb = edge(sp, std::log(1e8));

  // In s = ln x: dr/r^3 = Z^(2/3)/a^2 dx/x^3 and L = Z^(1/3) sqrt(2 a x F).
  auto integrand = [&](double s) {
    const double x = std::exp(s);
    const double hv = x * std::max(sol.evaluate(x).F, 0.0);
    const double L = zc * std::sqrt(2.0 * a * hv);
    const double W = smooth_step((L / lam0 - opt.window_lo) / (opt.window_hi - opt.window_lo));
    if (W == 0.0) return 0.0;
    return W * std::pow(2.0 * a * hv, 1.25) / (x * x) * std::cos(2.0 * pi * k * L - 0.25 * pi);
  };

  using Rule = boost::math::quadrature::gauss<double, 10>;
  auto composite = [&](int n, double& abs_sum) {
    const double hs = (sb - sa) / n;
    double sum = 0.0;
    abs_sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double lo = sa + i * hs;
      const double v = Rule::integrate(integrand, lo, lo + hs);
      sum += v;
      abs_sum += std::abs(v);
    }
    return sum;
  };
  const double cycles = k * lam0 * 2.0 * (1.0 - opt.window_lo);
  const int n = 16 + static_cast<int>(std::ceil(opt.panels_per_cycle * cycles));
  double abs1 = 0, abs2 = 0;
  const double I1 = composite(n, abs1);
  const double I2 = composite(2 * n, abs2);
  if (std::abs(I2 - I1) > opt.rel_tol * abs2)
    throw ConvergenceError("oscillatory radial integral did not converge", I1, I2);
  return std::pow(Z, 1.5) / (a * a) * I2;
}

double ltf_oscillation_integral(const TFSolution& sol, double Z, int K, const IntegralOptions& opt) {
  if (K < 1) throw DomainError("K must be at least 1");
  double sum = 0.0;
  for (int k = 1; k <= K; ++k) {
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;  // (-1)^(k-1)
    sum += sign * std::pow(static_cast<double>(k), -2.5) * ltf_radial_integral(sol, Z, k, opt);
  }
  return -sum / (pi * pi * pi);
}

// ------------------------------------------------------------------------------

double direct_degeneracy_sum(double Lambda) {
  double s = 0.0;
  for (int l = 0; l + 0.5 < Lambda; ++l) s += 2.0 * (2 * l + 1);
  return s;
}

double poisson_degeneracy_sum(double Lambda, long K) {
  if (!(Lambda >= 0.0)) throw DomainError("Lambda must be nonnegative");
  if (K < 0) throw DomainError("K must be nonnegative");
  // k = 0 gives 2 Lambda^2; the +k and -k terms combine into
  // 8 (-1)^k [Lambda sin(2 pi k Lambda) / (2 pi k) + (cos(2 pi k Lambda) - 1) / (2 pi k)^2].
  double s = 0.0;
  for (long k = K; k >= 1; --k) {
    const double w = 2.0 * pi * static_cast<double>(k);
    const double kl = static_cast<double>(k) * Lambda;
    const double ph = 2.0 * pi * (kl - std::floor(kl));
    const double term = Lambda * std::sin(ph) / w + (std::cos(ph) - 1.0) / (w * w);
    s += (k & 1) ? -term : term;
  }
  return 2.0 * Lambda * Lambda + 8.0 * s;
}

}  // namespace statatom
