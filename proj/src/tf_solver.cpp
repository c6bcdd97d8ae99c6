#include "statatom/tf_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "asymptotic_tail.hpp"
#include "statatom/error.hpp"
#include "statatom/ode.hpp"
#include "statatom/units.hpp"

namespace statatom {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// In t = sqrt(x) the TF equation becomes regular at the origin:
//   dF/dt = 2 t G,   dG/dt = 2 F^(3/2),   G = dF/dx.
void tf_rhs(double t, const ode::State<2>& y, ode::State<2>& dy) {
  const double f = std::max(y[0], 0.0);
  dy[0] = 2.0 * t * y[1];
  dy[1] = 2.0 * f * std::sqrt(f);
}

struct Node {
  double t, F, G;
};

struct SeriesValue {
  double F, G, Gp;  // G = F', Gp = F''
};

// F = 1 - B x + (4/3) x^(3/2) - (2B/5) x^(5/2) + (1/3) x^3 + (3/70) B^2 x^(7/2) + ...
SeriesValue series(double B, double x) {
  const double sx = std::sqrt(x);
  const double x32 = x * sx, x52 = x32 * x, x3 = x * x * x, x72 = x52 * x;
  const double F = 1.0 - B * x + (4.0 / 3.0) * x32 - 0.4 * B * x52 + x3 / 3.0 +
                   (3.0 / 70.0) * B * B * x72;
  const double G = -B + 2.0 * sx - B * x32 + x * x + 0.15 * B * B * x52;
  const double Gp = 1.0 / sx - 1.5 * B * sx + 2.0 * x + 0.375 * B * B * x32;
  return {F, G, Gp};
}

Node series_start(double B, double x) {
  const SeriesValue v = series(B, x);
  return {std::sqrt(x), v.F, v.G};
}

// Below this the first grid interval is represented by the series itself;
// a t-interpolant there would divide round-off by t.
constexpr double kSeriesHead = 4e-6;

double start_x(const SolverOptions& opt, double B) {
  const double s = B > 2.0 ? 2.0 / B : 1.0;
  return opt.x_start * s * s;
}

ode::Options ode_options(const SolverOptions& opt) {
  ode::Options o;
  o.rtol = opt.ode_rtol;
  o.atol = opt.ode_atol;
  return o;
}

// Quintic Hermite basis on [0, 1] and its derivative.
struct Hermite5 {
  double H[6];
  double D[6];
  explicit Hermite5(double s) {
    const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
    H[0] = 1 - 10 * s3 + 15 * s4 - 6 * s5;
    H[1] = s - 6 * s3 + 8 * s4 - 3 * s5;
    H[2] = 0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5;
    H[3] = 0.5 * s3 - s4 + 0.5 * s5;
    H[4] = -4 * s3 + 7 * s4 - 3 * s5;
    H[5] = 10 * s3 - 15 * s4 + 6 * s5;
    D[0] = -30 * s2 + 60 * s3 - 30 * s4;
    D[1] = 1 - 18 * s2 + 32 * s3 - 15 * s4;
    D[2] = s - 4.5 * s2 + 6 * s3 - 2.5 * s4;
    D[3] = 1.5 * s2 - 4 * s3 + 2.5 * s4;
    D[4] = -12 * s2 + 28 * s3 - 15 * s4;
    D[5] = 30 * s2 - 60 * s3 + 30 * s4;
  }
};

struct Interp {
  double F, G, dGdt;
};

// F and G are interpolated separately in t, each with values and first two
// t-derivatives taken from the ODE at both nodes, so the interpolant satisfies
// the equation exactly at every node.
Interp hermite(const Node& a, const Node& b, double t) {
  const double h = b.t - a.t;
  const Hermite5 bs((t - a.t) / h);
  auto derivs = [](const Node& n, double d[4]) {
    const double f = std::max(n.F, 0.0);
    const double sf = std::sqrt(f);
    d[0] = 2 * n.t * n.G;                   // dF/dt
    d[1] = 2 * n.G + 4 * n.t * f * sf;      // d2F/dt2
    d[2] = 2 * f * sf;                      // dG/dt
    d[3] = 6 * n.t * n.G * sf;              // d2G/dt2
  };
  double da[4], db[4];
  derivs(a, da);
  derivs(b, db);
  const double h2 = h * h;
  Interp r;
  r.F = a.F * bs.H[0] + h * da[0] * bs.H[1] + h2 * da[1] * bs.H[2] + h2 * db[1] * bs.H[3] +
        h * db[0] * bs.H[4] + b.F * bs.H[5];
  r.G = a.G * bs.H[0] + h * da[2] * bs.H[1] + h2 * da[3] * bs.H[2] + h2 * db[3] * bs.H[3] +
        h * db[2] * bs.H[4] + b.G * bs.H[5];
  r.dGdt = (a.G * bs.D[0] + h * da[2] * bs.D[1] + h2 * da[3] * bs.D[2] + h2 * db[3] * bs.D[3] +
            h * db[2] * bs.D[4] + b.G * bs.D[5]) /
           h;
  return r;
}

double residual_between(const Node& a, const Node& b, double t) {
  const Interp v = hermite(a, b, t);
  const double f = std::max(v.F, 0.0);
  return std::abs(v.dGdt - 2.0 * f * std::sqrt(f)) / (2.0 * t);
}

Node advance(const Node& from, double t_to, const SolverOptions& opt) {
  ode::Dopri5<2> solver(ode_options(opt));
  const auto res = solver.integrate(tf_rhs, from.t, {from.F, from.G}, t_to);
  return {t_to, res.y[0], res.y[1]};
}

struct Trajectory {
  std::vector<Node> nodes;
  ShotFate fate = ShotFate::undecided;
  double t_event = 0;
  Node event{};  // state at the event (F = 0 crossing or F' = 0 turn)
};

// Integrates from the series start towards t_end. Stops at the first zero
// of F (overshoot) or of F' (undershoot). With record set, every accepted
// step end is kept as a node.
Trajectory integrate_trajectory(double B, double t_end, const SolverOptions& opt, bool record) {
  Trajectory tr;
  const Node s0 = series_start(B, start_x(opt, B));
  if (record) {
    tr.nodes.push_back({0.0, 1.0, -B});
    tr.nodes.push_back(s0);
  }
  ode::Dopri5<2> solver(ode_options(opt));
  auto stop_at = [&tr](const ode::Step<2>& st, ShotFate fate, int comp) {
    tr.fate = fate;
    tr.t_event = ode::locate_event(st, [comp](double, const ode::State<2>& y) { return y[comp]; });
    const auto y = st(tr.t_event);
    tr.event = {tr.t_event, y[0], y[1]};
    return false;
  };
  tr.t_event = t_end;
  solver.integrate(tf_rhs, s0.t, {s0.F, s0.G}, t_end, [&](const ode::Step<2>& st) {
    if (st.y1[0] <= 0.0) return stop_at(st, ShotFate::overshoot, 0);
    if (st.y1[1] >= 0.0) return stop_at(st, ShotFate::undershoot, 1);
    if (record) tr.nodes.push_back({st.t1, st.y1[0], st.y1[1]});
    return true;
  });
  return tr;
}

void subdivide_nodes(std::vector<Node>& nodes, int m, const SolverOptions& opt) {
  if (m <= 1) return;
  std::vector<Node> out{nodes.front()};
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    Node cur = nodes[i];
    const double h = (nodes[i + 1].t - nodes[i].t) / m;
    for (int j = 1; j < m; ++j) {
      cur = advance(cur, nodes[i].t + j * h, opt);
      out.push_back(cur);
    }
    out.push_back(nodes[i + 1]);
  }
  nodes = std::move(out);
}

// Bisects intervals whose midpoint residual exceeds target. The new node is
// obtained by integrating the ODE from the left neighbour. A split that does
// not reduce the residual has hit round-off and is dropped.
void refine_nodes(std::vector<Node>& nodes, double target, const SolverOptions& opt) {
  const std::size_t first = nodes.size() > 1 && nodes[1].t * nodes[1].t <= kSeriesHead ? 1 : 0;
  std::vector<char> frozen(nodes.size(), 0);
  for (int pass = 0; pass < 40; ++pass) {
    std::vector<Node> out(nodes.begin(), nodes.begin() + first + 1);
    std::vector<char> out_frozen(frozen.begin(), frozen.begin() + first + 1);
    bool changed = false;
    for (std::size_t i = first; i + 1 < nodes.size(); ++i) {
      const Node& a = nodes[i];
      const Node& b = nodes[i + 1];
      const double tm = 0.5 * (a.t + b.t);
      const double r = frozen[i] ? 0.0 : residual_between(a, b, tm);
      if (r > target && tm > a.t && tm < b.t) {
        const Node m = advance(a, tm, opt);
        const double rl = residual_between(a, m, 0.5 * (a.t + m.t));
        const double rr = residual_between(m, b, 0.5 * (m.t + b.t));
        if (std::max(rl, rr) < 0.5 * r) {
          out.push_back(m);
          out_frozen.push_back(0);
          changed = true;
        } else {
          out_frozen.back() = 1;
        }
      }
      out.push_back(b);
      out_frozen.push_back(frozen[i + 1]);
    }
    nodes = std::move(out);
    frozen = std::move(out_frozen);
    if (!changed) break;
  }
}

TFSolution assemble(std::vector<Node> nodes, double B, double q, double x0, double tol,
                    const SolverOptions& opt) {
  subdivide_nodes(nodes, opt.subdivide, opt);
  refine_nodes(nodes, std::max(tol, 1e-12), opt);
  std::vector<double> x, F, Fp;
  x.reserve(nodes.size());
  F.reserve(nodes.size());
  Fp.reserve(nodes.size());
  for (const auto& n : nodes) {
    x.push_back(n.t * n.t);
    F.push_back(n.F);
    Fp.push_back(n.G);
  }
  x.front() = 0.0;
  F.front() = 1.0;
  const double err = TFSolution(x, F, Fp, B, q, x0, 0.0).max_midpoint_residual();
  return TFSolution(std::move(x), std::move(F), std::move(Fp), B, q, x0, err);
}

struct SlopeBracket {
  double lo, hi;
  std::size_t iterations;
};

// Bisection on the initial slope down to the resolution of the arithmetic.
SlopeBracket bracket_neutral_slope(double tol, const SolverOptions& opt) {
  const double t_dec = std::sqrt(opt.x_max * opt.decision_horizon);
  auto fate = [&](double B) { return integrate_trajectory(B, t_dec, opt, false).fate; };

  double lo = 1.5, hi = 1.7;
  std::size_t it = 0;
  while (fate(lo) != ShotFate::undershoot) {
    lo -= 0.1 * (1 << std::min<std::size_t>(it, 8));
    if (lo <= 0 || ++it > opt.max_iterations)
      throw ConvergenceError("could not bracket the neutral slope from below", lo, hi);
  }
  while (fate(hi) != ShotFate::overshoot) {
    hi += 0.1 * (1 << std::min<std::size_t>(it, 8));
    if (++it > opt.max_iterations)
      throw ConvergenceError("could not bracket the neutral slope from above", lo, hi);
  }
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (++it > opt.max_iterations) {
      if (hi - lo <= tol) break;
      throw ConvergenceError("neutral shooting exceeded the iteration limit", lo, hi);
    }
    const ShotFate f = fate(mid);
    if (f == ShotFate::overshoot) hi = mid;
    else if (f == ShotFate::undershoot) lo = mid;
    else break;
  }
  if (hi - lo > tol)
    throw ConvergenceError("neutral shooting stalled before reaching the tolerance", lo, hi);
  return {lo, hi, it};
}

}  // namespace

TFBoundarySpec::TFBoundarySpec(double q, double tol) : q_(q), tol_(tol) {
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("ionization degree q must lie in [0, 1]");
  if (!(tol > 0.0)) throw DomainError("shooting tolerance must be positive");
}

ShotReport shoot(double B, double x_end, const SolverOptions& opt) {
  const Trajectory tr = integrate_trajectory(B, std::sqrt(x_end), opt, false);
  return {tr.fate, tr.t_event * tr.t_event};
}

TFSolution solve_neutral(double tol, const SolverOptions& opt) {
  if (!(tol > 0.0)) throw DomainError("shooting tolerance must be positive");
  if (!(opt.x_max > 0.0) || !(opt.x_start > 0.0) || opt.x_start >= opt.x_max)
    throw DomainError("need 0 < x_start < x_max");
  const SlopeBracket br = bracket_neutral_slope(tol, opt);
  const double B = 0.5 * (br.lo + br.hi);
  Trajectory tr = integrate_trajectory(B, std::sqrt(opt.x_max), opt, true);
  if (tr.fate != ShotFate::undecided)
    throw ConvergenceError("x_max lies beyond the range resolvable in double precision", br.lo,
                           br.hi);
  return assemble(std::move(tr.nodes), B, 0.0, kInf, tol, opt);
}

TFSolution solve_ion(const TFBoundarySpec& spec, const SolverOptions& opt) {
  const double q = spec.q();
  const double tol = spec.tol();
  if (q == 0.0) return solve_neutral(tol, opt);
  if (q >= 1.0) throw DomainError("q = 1 is a bare nucleus; the electron cloud has zero extent");

  const SlopeBracket br = bracket_neutral_slope(1e-9, opt);
  const double B0 = br.hi;
  const double t_horizon = 100.0;  // x = 1e4

  // Charge -x0 F'(x0) at the first zero of F for slope B0 + exp(u).
  auto charge = [&](double u) -> double {
    const Trajectory tr = integrate_trajectory(B0 + std::exp(u), t_horizon, opt, false);
    if (tr.fate != ShotFate::overshoot) return 0.0;
    return -tr.t_event * tr.t_event * tr.event.G;
  };

  double u_lo = std::log(B0 * 1e-14);
  double q_lo = charge(u_lo);
  if (!(q_lo < q))
    throw ConvergenceError("ionization degree below the resolvable limit", B0, B0 + std::exp(u_lo));
  double u_hi = 0.0;
  double q_hi = charge(u_hi);
  while (q_hi < q) {
    u_hi += std::log(10.0);
    if (u_hi > std::log(1e12))
      throw ConvergenceError("could not bracket the ion slope", B0 + std::exp(u_lo), B0 + std::exp(u_hi));
    q_hi = charge(u_hi);
  }

  // Illinois iteration on g(u) = ln q(u) - ln q.
  double g_lo = (q_lo > 0 ? std::log(q_lo) : -700.0) - std::log(q);
  double g_hi = std::log(q_hi) - std::log(q);
  double u = u_hi, qu = q_hi;
  int side = 0;
  std::size_t it = 0;
  while (std::abs(qu - q) > 0.1 * tol) {
    if (++it > opt.max_iterations)
      throw ConvergenceError("ion shooting exceeded the iteration limit", B0 + std::exp(u_lo),
                             B0 + std::exp(u_hi));
    u = (u_lo * g_hi - u_hi * g_lo) / (g_hi - g_lo);
    if (!(u > u_lo && u < u_hi)) u = 0.5 * (u_lo + u_hi);
    qu = charge(u);
    const double g = (qu > 0 ? std::log(qu) : -700.0) - std::log(q);
    if (g > 0) {
      u_hi = u;
      g_hi = g;
      if (side == 1) g_lo *= 0.5;
      side = 1;
    } else {
      u_lo = u;
      g_lo = g;
      if (side == -1) g_hi *= 0.5;
      side = -1;
    }
    if (u_hi - u_lo <= 4 * std::numeric_limits<double>::epsilon() * std::abs(u_hi)) break;
  }

  const double B = B0 + std::exp(u);
  Trajectory tr = integrate_trajectory(B, t_horizon, opt, true);
  if (tr.fate != ShotFate::overshoot)
    throw ConvergenceError("ion trajectory lost its edge", B, B);
  // Land exactly on the edge from the last node before the crossing.
  Node edge = advance(tr.nodes.back(), tr.t_event, opt);
  edge.F = 0.0;
  tr.nodes.push_back(edge);
  const double x0 = tr.t_event * tr.t_event;
  const double q_got = -x0 * edge.G;
  if (std::abs(q_got - q) > tol)
    throw ConvergenceError("ion charge condition not met within tolerance", B, B);
  return assemble(std::move(tr.nodes), B, q, x0, tol, opt);
}

// ----------------------------------------------------------------------------

TFSolution::TFSolution(std::vector<double> x, std::vector<double> F, std::vector<double> Fp,
                       double B, double q, double x0, double err)
    : x_(std::move(x)), F_(std::move(F)), Fp_(std::move(Fp)), B_(B), q_(q), x0_(x0), err_(err) {
  if (x_.size() < 2 || x_.size() != F_.size() || x_.size() != Fp_.size())
    throw DomainError("solution needs at least two nodes with matching F and F'");
  if (x_.front() != 0.0 || F_.front() != 1.0) throw DomainError("solution must start at x = 0 with F = 1");
  for (std::size_t i = 1; i < x_.size(); ++i)
    if (!(x_[i] > x_[i - 1])) throw DomainError("solution grid must be strictly increasing");
  if (!(q_ >= 0.0 && q_ < 1.0)) throw DomainError("ionization degree must lie in [0, 1)");
  series_head_ = x_[1] <= kSeriesHead;
  nodes_.reserve(x_.size());
  for (std::size_t i = 0; i < x_.size(); ++i) nodes_.push_back({std::sqrt(x_[i]), F_[i], Fp_[i]});
  if (neutral()) {
    const double xl = x_.back();
    const double w = xl * xl * xl * F_.back() / 144.0;
    if (!(w > 0.0 && w < 1.0)) throw DomainError("neutral solution does not end on the decaying branch");
    tail_sigma_ = detail::AsymptoticOrbit::instance().sigma_of_w(w);
  }
}

Evaluation TFSolution::interpolate(std::size_t i, double t) const {
  if (i == 0 && series_head_) {
    const SeriesValue v = series(B_, t * t);
    return {v.F, v.G, false};
  }
  const Node& a = nodes_[i];
  const Node& b = nodes_[i + 1];
  const Interp v = hermite({a.t, a.F, a.G}, {b.t, b.F, b.G}, t);
  return {v.F, v.G, false};
}

double TFSolution::interpolated_dG_dt(std::size_t i, double t) const {
  if (i == 0 && series_head_) return 2.0 * t * series(B_, t * t).Gp;
  const Node& a = nodes_[i];
  const Node& b = nodes_[i + 1];
  return hermite({a.t, a.F, a.G}, {b.t, b.F, b.G}, t).dGdt;
}

Evaluation TFSolution::evaluate(double x) const {
  if (!(x >= 0.0)) throw DomainError("evaluate: x must be nonnegative");
  if (x == 0.0) return {1.0, -B_, false};
  if (x <= x_.back()) {
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - x_.begin());
    i = std::min(i, x_.size() - 1) - 1;
    return interpolate(i, std::sqrt(x));
  }
  if (!neutral()) return {0.0, Fp_.back(), true};
  const auto& orbit = detail::AsymptoticOrbit::instance();
  const auto pt = orbit.at(tail_sigma_ + std::log(x / x_.back()));
  const double x3 = x * x * x;
  return {144.0 * pt.w / x3, 144.0 * (pt.p - 3.0 * pt.w) / (x3 * x), false};
}

double TFSolution::residual(double x) const {
  if (!(x > 0.0) || x > x_.back()) throw DomainError("residual: x outside (0, x_last]");
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = std::min(static_cast<std::size_t>(it - x_.begin()), x_.size() - 1) - 1;
  const double t = std::sqrt(x);
  const Evaluation v = interpolate(i, t);
  const double f = std::max(v.F, 0.0);
  return std::abs(interpolated_dG_dt(i, t) - 2.0 * f * std::sqrt(f)) / (2.0 * t);
}

double TFSolution::max_midpoint_residual() const {
  double err = 0;
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    const double tm = 0.5 * (nodes_[i].t + nodes_[i + 1].t);
    err = std::max(err, residual(tm * tm));
  }
  return err;
}

// ----------------------------------------------------------------------------

double potential(const TFSolution& sol, double Z, double r) {
  if (!(r > 0.0)) throw DomainError("potential: r must be positive");
  if (!(Z > 0.0)) throw DomainError("potential: Z must be positive");
  const ScaledUnits u(Z);
  const double x = u.x_of_r(r);
  if (sol.neutral()) return -(Z / r) * sol.evaluate(x).F;
  const double r0 = u.r_of_x(sol.x0());
  const double zeta = sol.q() * Z / r0;
  if (x >= sol.x0()) return -sol.q() * Z / r;
  return -(Z / r) * sol.evaluate(x).F - zeta;
}

DensityValue density(const TFSolution& sol, double Z, double r) {
  if (!(r > 0.0)) throw DomainError("density: r must be positive");
  if (!(Z > 0.0)) throw DomainError("density: Z must be positive");
  const ScaledUnits u(Z);
  const double x = u.x_of_r(r);
  if (!sol.neutral() && x >= sol.x0()) return {0.0, 0.0};
  const double F = std::max(sol.evaluate(x).F, 0.0);
  const double arg = 2.0 * Z * F / r;  // -2 (V + zeta)
  const double n = arg * std::sqrt(arg) / (3.0 * std::numbers::pi * std::numbers::pi);
  return {n, 4.0 * std::numbers::pi * r * r * n};
}

double validity_parameter(const TFSolution& sol, double Z, double x) {
  if (!(x > 0.0)) throw DomainError("validity_parameter: x must be positive");
  if (!(Z > 0.0)) throw DomainError("validity_parameter: Z must be positive");
  const double F = std::max(sol.evaluate(x).F, 0.0);
  return std::cbrt(Z) * std::sqrt(x * F);
}

// ----------------------------------------------------------------------------

namespace {

std::string fmt17(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s, std::size_t line, std::vector<ParseError::Item>& errs) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    errs.push_back({line, "not a number: '" + s + "'"});
    return 0.0;
  }
  return v;
}

}  // namespace

void write_csv(std::ostream& os, const TFSolution& sol) {
  os << "# B=" << fmt17(sol.B()) << ",q=" << fmt17(sol.q()) << ",x0=" << fmt17(sol.x0())
     << ",err=" << fmt17(sol.err()) << '\n';
  os << "x,F,Fp\n";
  const auto x = sol.grid();
  const auto F = sol.F();
  const auto Fp = sol.Fp();
  for (std::size_t i = 0; i < x.size(); ++i) {
    os << fmt17(x[i]) << ',' << fmt17(F[i]) << ',' << fmt17(Fp[i]) << '\n';
  }
}

TFSolution read_csv(std::istream& is) {
  std::vector<ParseError::Item> errs;
  std::string line;
  std::size_t lineno = 0;
  double B = 0, q = 0, x0 = kInf, err = 0;
  bool have_meta = false, have_header = false;
  std::vector<double> x, F, Fp;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("B=");
      if (pos == std::string::npos) continue;
      std::stringstream ss(line.substr(pos));
      std::string kv;
      while (std::getline(ss, kv, ',')) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = kv.substr(0, eq);
        const double v = parse_double(kv.substr(eq + 1), lineno, errs);
        if (key == "B") B = v;
        else if (key == "q") q = v;
        else if (key == "x0") x0 = v;
        else if (key == "err") err = v;
      }
      have_meta = true;
      continue;
    }
    if (!have_header) {
      if (line != "x,F,Fp") errs.push_back({lineno, "expected header 'x,F,Fp'"});
      have_header = true;
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 3) {
      errs.push_back({lineno, "expected 3 columns"});
      continue;
    }
    x.push_back(parse_double(cells[0], lineno, errs));
    F.push_back(parse_double(cells[1], lineno, errs));
    Fp.push_back(parse_double(cells[2], lineno, errs));
  }
  if (!have_meta) errs.push_back({0, "missing '# B=...' metadata line"});
  if (!errs.empty()) throw ParseError(std::move(errs));
  return TFSolution(std::move(x), std::move(F), std::move(Fp), B, q, x0, err);
}

}  // namespace statatom
