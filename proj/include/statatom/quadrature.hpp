#pragma once

// Moments of a solved TF function:
//   I2 = int_0^inf F(x)^2 dx
//   N  = int_0^x0 x^(1/2) F(x)^(3/2) dx   (electron count / Z)
// Gauss-Legendre in t = sqrt(x) on every grid interval, then log-spaced
// panels along the asymptotic tail, then the 144/x^3 remainder analytically.

#include "statatom/tf_solver.hpp"

namespace statatom {

struct QuadratureOptions {
  /// Each grid interval is split into this many Gauss panels.
  int subdivisions = 1;
  /// Tail panels reach out to x_last * tail_span before the analytic remainder.
  double tail_span = 1e6;
};

struct SolutionMoments {
  double I2 = 0;
  double N = 0;
  /// Analytic contributions beyond the last tail panel (neutral only).
  double I2_remainder = 0;
  double N_remainder = 0;
};

SolutionMoments solution_moments(const TFSolution& sol, const QuadratureOptions& opt = {});

/// int_X^inf (144/x^3)^2 dx and int_X^inf x^(1/2) (144/x^3)^(3/2) dx.
double power_tail_I2(double X);
double power_tail_N(double X);

}  // namespace statatom
