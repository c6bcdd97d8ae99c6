#include "statatom/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <vector>

#include "statatom/error.hpp"
#include "statatom/simd/kernels.hpp"

namespace statatom {

namespace {

constexpr unsigned kOrder = 10;
using Rule = boost::math::quadrature::gauss<double, kOrder>;

// Full symmetric node/weight list on [-1, 1].
struct Nodes {
  std::vector<double> x, w;
  Nodes() {
    const auto& a = Rule::abscissa();
    const auto& wt = Rule::weights();
    for (std::size_t i = 0; i < a.size(); ++i) {
      x.push_back(a[i]);
      w.push_back(wt[i]);
      if (a[i] != 0.0) {
        x.push_back(-a[i]);
        w.push_back(wt[i]);
      }
    }
  }
};

const Nodes& rule() {
  static const Nodes n;
  return n;
}

}  // namespace

double power_tail_I2(double X) { return 144.0 * 144.0 / (5.0 * std::pow(X, 5)); }

double power_tail_N(double X) { return 576.0 / (X * X * X); }

SolutionMoments solution_moments(const TFSolution& sol, const QuadratureOptions& opt) {
  if (opt.subdivisions < 1) throw DomainError("subdivisions must be at least 1");
  if (!(opt.tail_span > 1.0)) throw DomainError("tail_span must exceed 1");
  const auto& r = rule();
  const auto grid = sol.grid();

  // Columns for the moment kernel: weight, x^(1/2), F.
  std::vector<double> w, s, F;
  const std::size_t panels = (grid.size() - 1) * static_cast<std::size_t>(opt.subdivisions);
  w.reserve(panels * r.x.size());
  s.reserve(w.capacity());
  F.reserve(w.capacity());

  // dx = 2 t dt
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double ta = std::sqrt(grid[i]);
    const double tb = std::sqrt(grid[i + 1]);
    const double h = (tb - ta) / opt.subdivisions;
    for (int m = 0; m < opt.subdivisions; ++m) {
      const double c = ta + (m + 0.5) * h;
      for (std::size_t j = 0; j < r.x.size(); ++j) {
        const double t = c + 0.5 * h * r.x[j];
        w.push_back(0.5 * h * r.w[j] * 2.0 * t);
        s.push_back(t);
        F.push_back(sol.evaluate(t * t).F);
      }
    }
  }

  SolutionMoments out;
  if (sol.neutral()) {
    // dx = x d(ln x), panels of width 1/(4 subdivisions) in ln x.
    const double l0 = std::log(sol.x_last());
    const double l1 = l0 + std::log(opt.tail_span);
    const int n = static_cast<int>(std::ceil((l1 - l0) * 4 * opt.subdivisions));
    const double h = (l1 - l0) / n;
    for (int m = 0; m < n; ++m) {
      const double c = l0 + (m + 0.5) * h;
      for (std::size_t j = 0; j < r.x.size(); ++j) {
        const double x = std::exp(c + 0.5 * h * r.x[j]);
        w.push_back(0.5 * h * r.w[j] * x);
        s.push_back(std::sqrt(x));
        F.push_back(sol.evaluate(x).F);
      }
    }
    const double X = std::exp(l1);
    out.I2_remainder = power_tail_I2(X);
    out.N_remainder = power_tail_N(X);
  }

  const simd::Moments m = simd::weighted_moments(w, s, F);
  out.I2 = m.f2 + out.I2_remainder;
  out.N = m.f32 + out.N_remainder;
  return out;
}

}  // namespace statatom
