#pragma once

// Adaptive Dormand-Prince 5(4) integration with continuous (dense) output,
// driven step by step on top of Boost.Odeint.
//
// Every accepted step is handed to an observer, which can inspect it through
// the dense interpolant and stop the integration. Event location (sign
// changes of a user function) is done on the interpolant, see locate_event().

#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <cstddef>
#include <limits>

namespace statatom::ode {

template <std::size_t N>
using State = std::array<double, N>;

struct Options {
  double rtol = 1e-12;
  double atol = 1e-14;
  double h_init = 0.0;  // 0: a small fraction of the integration span
  double h_max = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 1'000'000;
};

enum class Status { reached_end, stopped_by_observer, step_size_underflow, too_many_steps };

template <std::size_t N>
struct Result {
  Status status;
  double t;
  State<N> y;
  std::size_t steps = 0;
};

template <std::size_t N>
class Dopri5;

/// One accepted step [t0, t1]. The interpolant reads the integrator's
/// internal stages, so operator() is only valid inside the observer call.
template <std::size_t N>
class Step {
 public:
  double t0 = 0, t1 = 0;
  State<N> y0{}, y1{};

  State<N> operator()(double t) const {
    State<N> y;
    eval_(ctx_, t, y);
    return y;
  }

 private:
  friend class Dopri5<N>;
  void (*eval_)(const void*, double, State<N>&) = nullptr;
  const void* ctx_ = nullptr;
};

template <std::size_t N>
class Dopri5 {
 public:
  explicit Dopri5(Options opt = {}) : opt_(opt) {}

  /// Integrates y' = rhs(t, y) from (t0, y0) towards t_end (either direction).
  /// `observer(const Step<N>&) -> bool` is called after each accepted step;
  /// returning false stops the integration at the end of that step.
  template <class Rhs, class Observer>
  Result<N> integrate(Rhs&& rhs, double t0, const State<N>& y0, double t_end,
                      Observer&& observer) const {
    namespace oi = boost::numeric::odeint;
    using Base = oi::runge_kutta_dopri5<State<N>>;
    using Checker = oi::default_error_checker<double, typename Base::algebra_type,
                                              typename Base::operations_type>;
    using Adjuster = oi::default_step_adjuster<double, double>;
    using Controlled = oi::controlled_runge_kutta<Base, Checker, Adjuster>;
    using Dense = oi::dense_output_runge_kutta<Controlled>;

    Result<N> res{Status::reached_end, t0, y0};
    if (t_end == t0) return res;
    const double dir = t_end > t0 ? 1.0 : -1.0;
    const double span = std::abs(t_end - t0);
    const double h_max = std::isfinite(opt_.h_max) ? opt_.h_max : 0.0;  // 0: unbounded
    double h = opt_.h_init > 0 ? opt_.h_init : 1e-4 * span;
    if (h_max > 0) h = std::min(h, h_max);

    // Odeint 1.74 loses the sign of negative steps when clamping to max_dt,
    // so integration always runs forward in tau = dir * t.
    // The local error is measured against |y| only (no dt |y'| term).
    Dense dense{Controlled(Checker(opt_.atol, opt_.rtol, 1.0, 0.0), Adjuster(h_max))};
    auto sys = [&rhs, dir](const State<N>& y, State<N>& dy, double tau) {
      rhs(dir * tau, y, dy);
      if (dir < 0)
        for (auto& v : dy) v = -v;
    };
    dense.initialize(y0, dir * t0, h);

    struct Ctx {
      const Dense* dense;
      double dir;
    } ctx{&dense, dir};
    Step<N> st;
    st.ctx_ = &ctx;
    st.eval_ = [](const void* c, double t, State<N>& y) {
      const auto* k = static_cast<const Ctx*>(c);
      k->dense->calc_state(k->dir * t, y);
    };
    while (true) {
      if (res.steps >= opt_.max_steps) {
        res.status = Status::too_many_steps;
        return res;
      }
      std::pair<double, double> iv;
      try {
        iv = dense.do_step(sys);
      } catch (const oi::step_adjustment_error&) {
        res.status = Status::step_size_underflow;
        return res;
      }
      if (iv.second - iv.first <= 16 * std::numeric_limits<double>::epsilon() * std::abs(iv.first)) {
        res.status = Status::step_size_underflow;
        return res;
      }
      ++res.steps;
      const bool last = iv.second >= dir * t_end;
      st.t0 = dir * iv.first;
      st.y0 = dense.previous_state();
      if (last) {
        st.t1 = t_end;
        dense.calc_state(dir * t_end, st.y1);
      } else {
        st.t1 = dir * iv.second;
        st.y1 = dense.current_state();
      }
      res.t = st.t1;
      res.y = st.y1;
      if (!observer(static_cast<const Step<N>&>(st))) {
        res.status = Status::stopped_by_observer;
        return res;
      }
      if (last) return res;
    }
  }

  template <class Rhs>
  Result<N> integrate(Rhs&& rhs, double t0, const State<N>& y0, double t_end) const {
    return integrate(std::forward<Rhs>(rhs), t0, y0, t_end, [](const Step<N>&) { return true; });
  }

 private:
  Options opt_;
};

/// Finds t in [step.t0, step.t1] where g(t, y(t)) changes sign, using the
/// step's dense output. Requires g to have opposite signs at the two ends.
template <std::size_t N, class G>
double locate_event(const Step<N>& step, G&& g, double t_tol = 0.0) {
  double a = step.t0, b = step.t1;
  double ga = g(a, step.y0), gb = g(b, step.y1);
  if (ga == 0) return a;
  if (gb == 0) return b;
  // Illinois variant of regula falsi
  int side = 0;
  for (int it = 0; it < 200; ++it) {
    const double c = (a * gb - b * ga) / (gb - ga);
    const double gc = g(c, step(c));
    if (gc == 0) return c;
    if ((gc > 0) == (gb > 0)) {
      b = c;
      gb = gc;
      if (side == -1) ga *= 0.5;
      side = -1;
    } else {
      a = c;
      ga = gc;
      if (side == 1) gb *= 0.5;
      side = 1;
    }
    const double tol = std::max(t_tol, 4 * std::numeric_limits<double>::epsilon() *
                                           std::max(std::abs(a), std::abs(b)));
    if (std::abs(b - a) <= tol) break;
  }
  return std::abs(ga) < std::abs(gb) ? a : b;
}

}  // namespace statatom::ode
