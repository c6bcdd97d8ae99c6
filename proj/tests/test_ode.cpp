#include <doctest.h>

#include <cmath>
#include <numbers>

#include "statatom/ode.hpp"

using namespace statatom::ode;

TEST_CASE("exponential decay reaches the analytic end value") {
  Options opt;
  opt.rtol = 1e-12;
  opt.atol = 1e-14;
  Dopri5<1> solver(opt);
  const auto res = solver.integrate([](double, const State<1>& y, State<1>& dy) { dy[0] = -y[0]; },
                                    0.0, {1.0}, 5.0);
  CHECK(res.status == Status::reached_end);
  CHECK(res.t == 5.0);
  CHECK(res.y[0] == doctest::Approx(std::exp(-5.0)).epsilon(1e-11));
}

TEST_CASE("backward integration of the harmonic oscillator") {
  Dopri5<2> solver;
  auto rhs = [](double, const State<2>& y, State<2>& dy) {
    dy[0] = y[1];
    dy[1] = -y[0];
  };
  const auto res = solver.integrate(rhs, 2.0, {std::sin(2.0), std::cos(2.0)}, -1.0);
  CHECK(res.status == Status::reached_end);
  CHECK(res.y[0] == doctest::Approx(std::sin(-1.0)).epsilon(1e-10));
  CHECK(res.y[1] == doctest::Approx(std::cos(-1.0)).epsilon(1e-10));
}

TEST_CASE("dense output tracks the solution inside every step") {
  Options opt;
  opt.rtol = 1e-10;
  opt.atol = 1e-12;
  Dopri5<2> solver(opt);
  auto rhs = [](double, const State<2>& y, State<2>& dy) {
    dy[0] = y[1];
    dy[1] = -y[0];
  };
  double worst = 0;
  solver.integrate(rhs, 0.0, {0.0, 1.0}, 10.0, [&](const Step<2>& st) {
    for (int j = 1; j < 4; ++j) {
      const double t = st.t0 + (st.t1 - st.t0) * j / 4.0;
      worst = std::max(worst, std::abs(st(t)[0] - std::sin(t)));
    }
    return true;
  });
  CHECK(worst < 1e-8);
}

TEST_CASE("observer stop and event location on the interpolant") {
  Dopri5<2> solver;
  auto rhs = [](double, const State<2>& y, State<2>& dy) {
    dy[0] = y[1];
    dy[1] = -y[0];
  };
  double t_event = 0;
  const auto res = solver.integrate(rhs, 0.5, {std::sin(0.5), std::cos(0.5)}, 10.0,
                                    [&](const Step<2>& st) {
                                      if (st.y1[0] >= 0) return true;
                                      t_event = locate_event(st, [](double, const State<2>& y) {
                                        return y[0];
                                      });
                                      return false;
                                    });
  CHECK(res.status == Status::stopped_by_observer);
  CHECK(t_event == doctest::Approx(std::numbers::pi).epsilon(1e-9));
}

TEST_CASE("step sizes respect h_max and the end point is hit exactly") {
  Options opt;
  opt.h_max = 0.1;
  Dopri5<1> solver(opt);
  double widest = 0;
  const auto res = solver.integrate([](double, const State<1>& y, State<1>& dy) { dy[0] = -y[0]; },
                                    0.0, {1.0}, 3.05, [&](const Step<1>& st) {
                                      widest = std::max(widest, st.t1 - st.t0);
                                      return true;
                                    });
  CHECK(widest <= 0.1 + 1e-15);
  CHECK(res.t == 3.05);
  CHECK(res.steps >= 31);
}

TEST_CASE("step budget is reported") {
  Options opt;
  opt.max_steps = 5;
  Dopri5<1> solver(opt);
  const auto res = solver.integrate([](double, const State<1>& y, State<1>& dy) { dy[0] = y[0]; },
                                    0.0, {1.0}, 100.0);
  CHECK(res.status == Status::too_many_steps);
}
