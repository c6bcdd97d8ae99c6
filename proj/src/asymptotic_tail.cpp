#include "asymptotic_tail.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "statatom/ode.hpp"

namespace statatom::detail {

namespace {

double rhs_p(double w, double p) { return 7.0 * p - 12.0 * w + 12.0 * std::pow(std::max(w, 0.0), 1.5); }

double quintic(double h, double s, double y0, double d0, double dd0, double y1, double d1,
               double dd1) {
  const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
  const double H0 = 1 - 10 * s3 + 15 * s4 - 6 * s5;
  const double H1 = s - 6 * s3 + 8 * s4 - 3 * s5;
  const double H2 = 0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5;
  const double H3 = 0.5 * s3 - s4 + 0.5 * s5;
  const double H4 = -4 * s3 + 7 * s4 - 3 * s5;
  const double H5 = 10 * s3 - 15 * s4 + 6 * s5;
  return y0 * H0 + h * d0 * H1 + h * h * dd0 * H2 + h * h * dd1 * H3 + h * d1 * H4 + y1 * H5;
}

}  // namespace

double AsymptoticOrbit::stable_rate() { return 0.5 * (std::sqrt(73.0) - 7.0); }

const AsymptoticOrbit& AsymptoticOrbit::instance() {
  static const AsymptoticOrbit orbit;
  return orbit;
}

AsymptoticOrbit::AsymptoticOrbit() : seed_eps_(1e-9) {
  const double lam = stable_rate();
  ode::Options opt;
  opt.rtol = 1e-13;
  opt.atol = 1e-18;
  opt.h_max = 0.05;
  ode::Dopri5<2> solver(opt);
  auto rhs = [](double, const ode::State<2>& y, ode::State<2>& dy) {
    dy[0] = y[1];
    dy[1] = rhs_p(y[0], y[1]);
  };
  std::vector<double> s{0.0}, w{1.0 - seed_eps_}, p{lam * seed_eps_};
  constexpr double w_floor = 1e-7;
  solver.integrate(rhs, 0.0, {w[0], p[0]}, -80.0, [&](const ode::Step<2>& st) {
    s.push_back(st.t1);
    w.push_back(st.y1[0]);
    p.push_back(st.y1[1]);
    return st.y1[0] > w_floor;
  });
  if (w.back() > w_floor) throw std::logic_error("asymptotic orbit did not reach the core region");
  std::reverse(s.begin(), s.end());
  std::reverse(w.begin(), w.end());
  std::reverse(p.begin(), p.end());
  s_ = std::move(s);
  w_ = std::move(w);
  p_ = std::move(p);
}

OrbitPoint AsymptoticOrbit::at(double sigma) const {
  if (sigma >= 0.0) {
    const double lam = stable_rate();
    const double u = seed_eps_ * std::exp(-lam * sigma);
    return {1.0 - u, lam * u};
  }
  if (sigma <= s_.front()) {
    // deep core, w ~ e^{3 s}; never needed for tails but keep it defined
    const double e = std::exp(3.0 * (sigma - s_.front()));
    return {w_.front() * e, 3.0 * w_.front() * e};
  }
  const auto it = std::upper_bound(s_.begin(), s_.end(), sigma);
  const std::size_t i = static_cast<std::size_t>(it - s_.begin()) - 1;
  const double h = s_[i + 1] - s_[i];
  const double u = (sigma - s_[i]) / h;
  const double w0 = w_[i], w1 = w_[i + 1], p0 = p_[i], p1 = p_[i + 1];
  const double a0 = rhs_p(w0, p0), a1 = rhs_p(w1, p1);
  // p'' = 7 p' - 12 p + 18 w^(1/2) p
  const double b0 = 7 * a0 - 12 * p0 + 18 * std::sqrt(std::max(w0, 0.0)) * p0;
  const double b1 = 7 * a1 - 12 * p1 + 18 * std::sqrt(std::max(w1, 0.0)) * p1;
  return {quintic(h, u, w0, p0, a0, w1, p1, a1), quintic(h, u, p0, a0, b0, p1, a1, b1)};
}

double AsymptoticOrbit::sigma_of_w(double w) const {
  if (w <= 0.0 || w >= 1.0) throw std::domain_error("orbit parameter requested outside 0 < w < 1");
  if (w >= 1.0 - seed_eps_) {
    return -std::log((1.0 - w) / seed_eps_) / stable_rate();
  }
  double lo, hi;
  if (w <= w_.front()) {
    return s_.front() + std::log(w / w_.front()) / 3.0;
  }
  const auto it = std::upper_bound(w_.begin(), w_.end(), w);
  const std::size_t i = static_cast<std::size_t>(it - w_.begin()) - 1;
  lo = s_[i];
  hi = s_[std::min(i + 1, s_.size() - 1)];
  for (int k = 0; k < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++k) {
    const double mid = 0.5 * (lo + hi);
    if (at(mid).w < w) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace statatom::detail
