#pragma once

// Thomas-Fermi boundary-value problem F'' = F^(3/2) / x^(1/2), F(0) = 1, for
// neutral atoms (F, F' -> 0 at infinity) and positive ions (F(x0) = 0 with
// -x0 F'(x0) = q at a finite edge x0).

#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

namespace statatom {

/// Ionization degree q = (Z - N) / Z together with the shooting tolerance.
class TFBoundarySpec {
 public:
  TFBoundarySpec(double q, double tol);

  double q() const noexcept { return q_; }
  double tol() const noexcept { return tol_; }

 private:
  double q_;
  double tol_;
};

struct SolverOptions {
  /// The ODE is singular at x = 0; integration starts here from the
  /// small-x series of F.
  double x_start = 1e-6;
  /// Neutral solves: the stored grid ends here and the asymptotic tail takes over.
  double x_max = 50.0;
  /// Over/undershoot classification may look this many times beyond x_max
  /// when a trial slope is still undecided at x_max.
  double decision_horizon = 16.0;
  std::size_t max_iterations = 200;
  double ode_rtol = 1e-13;
  double ode_atol = 1e-16;
  /// Every recorded integration interval is split into this many pieces.
  int subdivide = 1;
};

struct Evaluation {
  double F;
  double Fp;
  /// x lies beyond the edge of an ion; F is 0 and Fp is clamped to F'(x0).
  bool out_of_support = false;
};

/// Immutable solved TF function on a grid starting at x = 0.
class TFSolution {
 public:
  TFSolution(std::vector<double> x, std::vector<double> F, std::vector<double> Fp, double B,
             double q, double x0, double err);

  std::span<const double> grid() const noexcept { return x_; }
  std::span<const double> F() const noexcept { return F_; }
  std::span<const double> Fp() const noexcept { return Fp_; }
  double B() const noexcept { return B_; }
  /// Edge radius; +infinity for neutral solutions.
  double x0() const noexcept { return x0_; }
  double q() const noexcept { return q_; }
  /// Max |F'' - F^(3/2)/x^(1/2)| of the interpolant, sampled between nodes.
  double err() const noexcept { return err_; }
  bool neutral() const noexcept { return q_ == 0.0; }
  double x_last() const noexcept { return x_.back(); }

  /// F and F' at any x >= 0. Beyond the grid of a neutral solution the
  /// asymptotic tail (approaching 144/x^3 from below) is used.
  Evaluation evaluate(double x) const;

  /// |F''(x) - F(x)^(3/2)/x^(1/2)| of the interpolant, 0 < x <= x_last.
  double residual(double x) const;

  /// Largest residual over the midpoints of all grid intervals.
  double max_midpoint_residual() const;

 private:
  struct Node {
    double t, F, G;  // t = sqrt(x), G = dF/dx
  };
  Evaluation interpolate(std::size_t i, double t) const;
  double interpolated_dG_dt(std::size_t i, double t) const;

  std::vector<double> x_, F_, Fp_;
  std::vector<Node> nodes_;
  double B_, q_, x0_, err_;
  bool series_head_ = false;
  double tail_sigma_ = 0.0;  // orbit parameter at x_last (neutral only)
};

/// Neutral atom. Bisects the initial slope B between the overshooting
/// (F crosses zero) and undershooting (F turns upwards) regimes.
TFSolution solve_neutral(double tol, const SolverOptions& opt = {});

/// Positive ion with ionization degree spec.q() in (0, 1).
TFSolution solve_ion(const TFBoundarySpec& spec, const SolverOptions& opt = {});

/// Fate of a single shooting trajectory with initial slope B.
enum class ShotFate { overshoot, undershoot, undecided };

struct ShotReport {
  ShotFate fate;
  double x_event;  // where F hit zero or F' hit zero; x_end when undecided
};

ShotReport shoot(double B, double x_end, const SolverOptions& opt = {});

/// Physical potential V(r) in atomic units. For ions V = -(Z/r)F(x) - zeta
/// inside the edge r0 and -(Z - N)/r outside.
double potential(const TFSolution& sol, double Z, double r);

struct DensityValue {
  double n;  // particle density
  double D;  // radial density 4 pi r^2 n
};

DensityValue density(const TFSolution& sol, double Z, double r);

/// Z^(1/3) sqrt(x F(x)); TF is trustworthy where this is much larger than one.
double validity_parameter(const TFSolution& sol, double Z, double x);

/// CSV: one "# B=...,q=...,x0=...,err=..." line, a header "x,F,Fp", then rows.
void write_csv(std::ostream& os, const TFSolution& sol);
TFSolution read_csv(std::istream& is);

}  // namespace statatom
