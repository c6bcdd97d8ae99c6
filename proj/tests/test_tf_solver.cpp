#include <doctest.h>

#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "stiff_oracle.hpp"
#include "statatom/error.hpp"
#include "statatom/tf_solver.hpp"
#include "statatom/units.hpp"

using namespace statatom;

namespace {

const TFSolution& neutral() {
  static const TFSolution s = solve_neutral(1e-10);
  return s;
}

const TFSolution& ion_half() {
  static const TFSolution s = solve_ion(TFBoundarySpec(0.5, 1e-9));
  return s;
}

// Edge of the ion trajectory with slope B, from an independent Fehlberg 7(8)
// integration with bisection on F = 0 over fixed sub-steps.
double fehlberg_edge(double B) {
  namespace ode = boost::numeric::odeint;
  using vec = std::array<double, 2>;
  auto sys = [](const vec& y, vec& dy, double t) {
    const double p = std::max(y[0], 0.0);
    dy[0] = 2 * t * y[1];
    dy[1] = 2 * p * std::sqrt(p);
  };
  auto fate = [&](double t_end) {
    vec y{1.0, -B};
    ode::integrate_adaptive(ode::make_controlled<ode::runge_kutta_fehlberg78<vec>>(1e-14, 1e-14),
                            sys, y, 0.0, t_end, 1e-3);
    return y[0];
  };
  double lo = 0, hi = 0.1;
  while (fate(hi) > 0) {
    lo = hi;
    hi *= 1.5;
    if (hi > 100) return -1;
  }
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (fate(mid) > 0 ? lo : hi) = mid;
  }
  return 0.25 * (lo + hi) * (lo + hi);
}

}  // namespace

TEST_CASE("length constant matches its definition") {
  const double direct = 0.5 * std::pow(3.0 * M_PI / 4.0, 2.0 / 3.0);
  CHECK(tf_length_constant() == doctest::Approx(direct).epsilon(1e-15));
  const ScaledUnits u(27.0);
  CHECK(u.x_of_r(u.r_of_x(1.7)) == doctest::Approx(1.7).epsilon(1e-15));
  CHECK(u.x_of_r(tf_length_constant()) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("neutral slope at loose tolerance") {
  const TFSolution s = solve_neutral(1e-6);
  CHECK(std::abs(s.B() - 1.588) < 1e-3);
  CHECK(s.neutral());
  CHECK(std::isinf(s.x0()));
}

TEST_CASE("neutral slope agrees with the Richardson-extrapolated RK4 oracle") {
  const double ref = oracle::richardson_slope(0.01, 28.0);
  const TFSolution s = solve_neutral(1e-9);
  CHECK(std::abs(s.B() - ref) / ref < 1e-9);
}

TEST_CASE("boundary value and monotone decrease") {
  const auto& s = neutral();
  CHECK(s.F()[0] == 1.0);
  CHECK(s.grid()[0] == 0.0);
  const auto e0 = s.evaluate(0.0);
  CHECK(e0.F == 1.0);
  CHECK(e0.Fp == -s.B());
  for (std::size_t i = 1; i < s.grid().size(); ++i) {
    REQUIRE(s.grid()[i] > s.grid()[i - 1]);
    REQUIRE(s.F()[i] < s.F()[i - 1]);
    REQUIRE(s.F()[i] > 0.0);
    REQUIRE(s.Fp()[i] < 0.0);
  }
}

TEST_CASE("residual is bounded by err and err by 10 tol") {
  for (double tol : {1e-6, 1e-8, 1e-10}) {
    const TFSolution s = solve_neutral(tol);
    CHECK(s.err() <= 10 * tol);
    CHECK(s.max_midpoint_residual() <= s.err());
    const auto x = s.grid();
    for (std::size_t i = 1; i + 1 < x.size(); i += 7) REQUIRE(s.residual(x[i]) <= s.err());
  }
}

TEST_CASE("shooting monotonicity on bracketing pairs") {
  const double B = neutral().B();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(1e-6, 0.2);
  for (int i = 0; i < 20; ++i) {
    CHECK(shoot(B - d(rng), 800).fate == ShotFate::undershoot);
    CHECK(shoot(B + d(rng), 800).fate == ShotFate::overshoot);
  }
}

TEST_CASE("asymptotic tail approaches 144/x^3 from below") {
  const auto& s = neutral();
  double prev = 0;
  for (double x = 60; x < 1e7; x *= 1.5) {
    const double v = x * x * x * s.evaluate(x).F;
    REQUIRE(v < 144.0);
    REQUIRE(v > prev);
    prev = v;
  }
  CHECK(300.0 * 300.0 * 300.0 * s.evaluate(300).F > 0.85 * 144.0);
  // continuity of value and slope where the tail takes over
  const double xl = s.x_last();
  const auto in = s.evaluate(xl * (1 - 1e-9));
  const auto out = s.evaluate(xl * (1 + 1e-9));
  CHECK(out.F == doctest::Approx(in.F).epsilon(1e-7));
  CHECK(out.Fp == doctest::Approx(in.Fp).epsilon(1e-6));
}

TEST_CASE("F and F' vanish with growing x") {
  const auto& s = neutral();
  double f = 1, fp = 1;
  for (double x : {10.0, 100.0, 1e3, 1e4}) {
    const auto e = s.evaluate(x);
    CHECK(e.F < f);
    CHECK(std::abs(e.Fp) < fp);
    f = e.F;
    fp = std::abs(e.Fp);
  }
  CHECK(f < 1e-9);
}

TEST_CASE("interpolant agrees with a re-solve on a finer grid") {
  SolverOptions fine;
  fine.subdivide = 2;
  const TFSolution a = neutral();
  const TFSolution b = solve_neutral(1e-10, fine);
  CHECK(b.grid().size() > a.grid().size());
  for (double x : {0.013, 0.37, 1.0, 2.5, 7.77, 21.0, 44.0}) {
    CHECK(std::abs(a.evaluate(x).F - b.evaluate(x).F) < 1e-6);
    CHECK(std::abs(a.evaluate(x).Fp - b.evaluate(x).Fp) < 1e-6);
  }
}

TEST_CASE("ion charge condition and edge") {
  for (double q : {0.1, 0.5, 0.9}) {
    const TFSolution s = solve_ion(TFBoundarySpec(q, 1e-8));
    CHECK(std::isfinite(s.x0()));
    CHECK(s.x0() > 0);
    CHECK(s.F().back() == 0.0);
    CHECK(std::abs(-s.x0() * s.Fp().back() - q) <= 1e-8);
    CHECK(s.err() <= 1e-7);
    CHECK(s.q() == q);
  }
}

TEST_CASE("ion edge agrees with independent integrator oracles") {
  const auto& s = ion_half();
  CHECK(oracle::rosenbrock_edge(s.B()) == doctest::Approx(s.x0()).epsilon(1e-4));
  CHECK(fehlberg_edge(s.B()) == doctest::Approx(s.x0()).epsilon(1e-8));
}

TEST_CASE("small ionization tends to the neutral solution") {
  // here B - B0 is ~2e-10, so one ulp of B moves q by ~1e-9
  const TFSolution s = solve_ion(TFBoundarySpec(1e-3, 1e-8));
  CHECK(std::abs(s.B() - neutral().B()) < 1e-2);
  CHECK(s.x0() > 50);
  const TFSolution t = solve_ion(TFBoundarySpec(1e-2, 1e-8));
  CHECK(t.x0() < s.x0());
}

TEST_CASE("outside the ion the evaluation is flagged") {
  const auto& s = ion_half();
  const auto e = s.evaluate(2 * s.x0());
  CHECK(e.out_of_support);
  CHECK(e.F == 0.0);
  CHECK(e.Fp == s.Fp().back());
  CHECK_FALSE(s.evaluate(0.5 * s.x0()).out_of_support);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(TFBoundarySpec(-0.1, 1e-8), DomainError);
  CHECK_THROWS_AS(TFBoundarySpec(1.1, 1e-8), DomainError);
  CHECK_THROWS_AS(TFBoundarySpec(0.5, 0.0), DomainError);
  CHECK_THROWS_AS(solve_ion(TFBoundarySpec(1.0, 1e-8)), DomainError);
  CHECK_THROWS_AS(solve_neutral(-1.0), DomainError);
  CHECK_THROWS_AS(neutral().evaluate(-1.0), DomainError);
  CHECK_THROWS_AS(potential(neutral(), 10, 0.0), DomainError);
  CHECK_THROWS_AS(density(neutral(), 10, -1.0), DomainError);
  CHECK_THROWS_AS(validity_parameter(neutral(), 10, 0.0), DomainError);
}

TEST_CASE("iteration budget exhaustion carries the bracket") {
  SolverOptions opt;
  opt.max_iterations = 5;
  try {
    solve_neutral(1e-10, opt);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.bracket_lo() < e.bracket_hi());
    CHECK(e.bracket_lo() <= 1.5881);
    CHECK(e.bracket_hi() >= 1.5880);
  }
}

TEST_CASE("x_max beyond double-precision reach is reported") {
  SolverOptions opt;
  opt.x_max = 1e4;
  CHECK_THROWS_AS(solve_neutral(1e-8, opt), ConvergenceError);
}

TEST_CASE("potential near the nucleus") {
  const auto& s = neutral();
  const double Z = 50;
  const double a = tf_length_constant();
  CHECK(1e-9 * potential(s, Z, 1e-9) == doctest::Approx(-Z).epsilon(1e-6));
  const double shift = potential(s, Z, 1e-6) + Z / 1e-6;
  CHECK(shift > 0);
  CHECK(shift == doctest::Approx(s.B() / a * std::pow(Z, 4.0 / 3.0)).epsilon(5e-3));
  // with the next series term: 1 - F = B x - (4/3) x^(3/2)
  const double x = ScaledUnits(Z).x_of_r(1e-6);
  const double series = Z / 1e-6 * (s.B() * x - 4.0 / 3.0 * x * std::sqrt(x));
  CHECK(shift == doctest::Approx(series).epsilon(1e-5));
}

TEST_CASE("potential far from a neutral atom") {
  const auto& s = neutral();
  const double a = tf_length_constant();
  for (double Z : {10.0, 80.0}) {
    const ScaledUnits u(Z);
    const double r = u.r_of_x(1e9);
    CHECK(std::pow(r, 4) * potential(s, Z, r) == doctest::Approx(-144 * a * a * a).epsilon(1e-4));
  }
}

TEST_CASE("ion potential outside the edge is the net Coulomb field") {
  const auto& s = ion_half();
  const double Z = 40;
  const ScaledUnits u(Z);
  const double r0 = u.r_of_x(s.x0());
  CHECK(potential(s, Z, 2 * r0) == doctest::Approx(-0.5 * Z / (2 * r0)));
  CHECK(potential(s, Z, r0 * (1 - 1e-12)) == doctest::Approx(-0.5 * Z / r0).epsilon(1e-8));
  CHECK(density(s, Z, 1.5 * r0).n == 0.0);
}

TEST_CASE("radial density power laws") {
  const auto& s = neutral();
  const double Z = 30;
  auto slope = [&](double r) {
    const double h = 1e-3;
    return (std::log(density(s, Z, r * (1 + h)).D) - std::log(density(s, Z, r * (1 - h)).D)) /
           (std::log(1 + h) - std::log(1 - h));
  };
  CHECK(slope(1e-8) == doctest::Approx(0.5).epsilon(1e-3));
  const ScaledUnits u(Z);
  CHECK(slope(u.r_of_x(1e8)) == doctest::Approx(-4.0).epsilon(1e-3));
}

TEST_CASE("radial density integrates to the electron count") {
  for (double q : {0.0, 0.5}) {
    const TFSolution& s = q == 0 ? neutral() : ion_half();
    const double Z = 36;
    const ScaledUnits u(Z);
    const double r_end = s.neutral() ? u.r_of_x(1e8) : u.r_of_x(s.x0());
    // trapezoid in ln r on a dense grid
    const int n = 200000;
    const double l0 = std::log(1e-12), l1 = std::log(r_end);
    double sum = 0;
    for (int i = 0; i <= n; ++i) {
      const double r = std::exp(l0 + (l1 - l0) * i / n);
      const double w = (i == 0 || i == n) ? 0.5 : 1.0;
      sum += w * density(s, Z, r).D * r;
    }
    sum *= (l1 - l0) / n;
    CHECK(sum == doctest::Approx((1 - q) * Z).epsilon(1e-3));
  }
}

TEST_CASE("Z-scaled potential and density collapse onto one curve") {
  const auto& s = neutral();
  for (double x : {0.01, 0.5, 3.0, 40.0, 400.0}) {
    const ScaledUnits u1(10), u2(93);
    const double r1 = u1.r_of_x(x), r2 = u2.r_of_x(x);
    // r V / Z = -F(x); n / Z^2 depends on x only
    CHECK(r1 * potential(s, 10, r1) / 10 == doctest::Approx(r2 * potential(s, 93, r2) / 93).epsilon(1e-10));
    CHECK(density(s, 10, r1).n / 100 ==
          doctest::Approx(density(s, 93, r2).n / (93.0 * 93.0)).epsilon(1e-10));
  }
}

TEST_CASE("validity parameter") {
  const auto& s = neutral();
  for (double x : {0.1, 1.0, 10.0}) {
    CHECK(validity_parameter(s, 8 * 27, x) ==
          doctest::Approx(2 * validity_parameter(s, 27, x)).epsilon(1e-14));
  }
  for (double Z : {1e3, 1e6, 1e9}) {
    const double inner = validity_parameter(s, Z, std::pow(Z, -2.0 / 3.0));
    CHECK(inner > 0.5);
    CHECK(inner < 1.5);
    const double outer = validity_parameter(s, Z, std::cbrt(Z));
    CHECK(outer > 0.5);
    CHECK(outer < 12.0);
    CHECK(validity_parameter(s, Z, 10 * std::cbrt(Z)) < outer);
  }
}

TEST_CASE("CSV round trip") {
  for (const TFSolution* s : {&neutral(), &ion_half()}) {
    std::stringstream ss;
    write_csv(ss, *s);
    const TFSolution back = read_csv(ss);
    CHECK(back.B() == s->B());
    CHECK(back.q() == s->q());
    CHECK(back.err() == s->err());
    CHECK(back.grid().size() == s->grid().size());
    CHECK(back.evaluate(1.234).F == s->evaluate(1.234).F);
    if (s->neutral()) CHECK(std::isinf(back.x0()));
    else CHECK(back.x0() == s->x0());
  }
}

TEST_CASE("CSV errors are itemized") {
  std::stringstream ss("# B=1.5,q=0,x0=inf,err=0\nx,F,Fp\n0,1,-1.5\n1,abc,2\n2,3\n");
  try {
    read_csv(ss);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    REQUIRE(e.items().size() == 2);
    CHECK(e.items()[0].line == 4);
    CHECK(e.items()[1].line == 5);
  }
}
