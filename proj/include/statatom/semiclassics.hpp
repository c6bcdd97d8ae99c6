#pragma once

// Semiclassical quantization in a central potential:
//
//   nu(E, lambda) = (1/pi) int dr/r sqrt(2 r^2 (E - V) - lambda^2)
//
// over the classically allowed region, with lambda = l + 1/2, nu = n_r + 1/2,
// and the leading l-quantized shell oscillation of the binding energy.

#include <span>
#include <vector>

#include "statatom/tf_solver.hpp"
#include "statatom/units.hpp"

namespace statatom {

struct QuantState {
  int l;
  int nr;
  double lambda() const noexcept { return l + 0.5; }
  double nu() const noexcept { return nr + 0.5; }
  auto operator<=>(const QuantState&) const = default;
};

class RadialPotential {
 public:
  virtual ~RadialPotential() = default;
  virtual double operator()(double r) const = 0;
  virtual double Z() const = 0;
  /// Typical radius; used to place the search window for extrema.
  virtual double length_scale() const = 0;
  /// True when 2 r^2 (-V) decays to zero at large r (the E = 0 orbit with
  /// lambda = 0 then extends to infinity).
  virtual bool bounded_at_infinity() const = 0;
};

/// Neutral TF potential -(Z/r) F(Z^(1/3) r / a). Keeps a reference to sol.
class TFPotential final : public RadialPotential {
 public:
  TFPotential(const TFSolution& sol, double Z);
  double operator()(double r) const override;
  double Z() const override { return units_.Z(); }
  double length_scale() const override { return units_.a() / units_.zcube(); }
  bool bounded_at_infinity() const override { return true; }

 private:
  const TFSolution& sol_;
  ScaledUnits units_;
};

class CoulombPotential final : public RadialPotential {
 public:
  explicit CoulombPotential(double Z);
  double operator()(double r) const override { return -Z_ / r; }
  double Z() const override { return Z_; }
  double length_scale() const override { return 1.0 / Z_; }
  bool bounded_at_infinity() const override { return false; }

 private:
  double Z_;
};

struct NuResult {
  double nu;
  /// False when lambda exceeds lambda_max(E): no classically allowed region.
  bool allowed;
};

NuResult nu_of(const RadialPotential& V, double E, double lambda);
NuResult nu_of(const TFSolution& sol, double Z, double E, double lambda);

/// max_r sqrt(2 r^2 (E - V)); 0 when the bracket is nowhere positive.
double lambda_max(const RadialPotential& V, double E);
double lambda_max(const TFSolution& sol, double Z, double E);

struct QuantCurve {
  double Z;
  double E;
  std::vector<double> lambda;
  std::vector<double> nu;
  double lambda_max;
};

/// Samples nu over the grid points that do not exceed lambda_max.
QuantCurve degeneracy_curve(const RadialPotential& V, double E, std::span<const double> lambda_grid);
QuantCurve degeneracy_curve(const TFSolution& sol, double Z, double E,
                            std::span<const double> lambda_grid);

/// States with n_r + 1/2 < nu(0, l + 1/2), sorted by (l, n_r).
std::vector<QuantState> predict_occupied(const TFSolution& sol, double Z);

// Scaled TF profile ---------------------------------------------------------------

struct XFPeak {
  double x;
  double value;  // max x F(x)
};

XFPeak max_xF(const TFSolution& sol);

/// lambda_0 / Z^(1/3) = sqrt(2 a max xF).
double lambda0_coefficient(const TFSolution& sol);

// Shell oscillation -----------------------------------------------------------------

/// Amplitude constant of the leading oscillation, taken as given.
inline constexpr double kOscillationAmplitude = 0.4805;
/// Rounded lambda_0 / Z^(1/3) for reproducing the published curve exactly.
inline constexpr double kPinnedLambda0Coefficient = 0.928;

/// -A Z^(4/3) sum_{k=1}^{K} (-1)^k sin(2 pi k lambda0) / (pi k)^3, lambda0 = coeff Z^(1/3).
double ltf_oscillation_fourier(double Z, long K, double coeff = kPinnedLambda0Coefficient);

/// The K -> infinity resummation: a periodic cubic in lambda0.
double ltf_oscillation_closed(double Z, double coeff = kPinnedLambda0Coefficient);

struct IntegralOptions {
  /// Window in L / lambda0 (L = sqrt(2 r^2 (-V))): zero below lo, one above hi.
  double window_lo = 0.3;
  double window_hi = 0.6;
  /// Gauss panels per oscillation of the integrand; doubled once to check.
  int panels_per_cycle = 8;
  double rel_tol = 1e-6;
};

/// Oscillatory-quadrature evaluation of
///   -(1/pi^3) sum_k (-1)^(k-1) k^(-5/2) int dr/r^3 L^(5/2) cos(2 pi k L - pi/4)
/// restricted by a smooth window to the neighbourhood of the maximum of L,
/// where the large-argument form of the angular integral holds.
double ltf_oscillation_integral(const TFSolution& sol, double Z, int K,
                                const IntegralOptions& opt = {});

/// The k-th radial integral of ltf_oscillation_integral (without prefactors).
double ltf_radial_integral(const TFSolution& sol, double Z, int k, const IntegralOptions& opt = {});

struct OscillationSeries {
  std::vector<double> zcube;
  std::vector<double> values;  // E_osc in atomic units
  long K;                      // 0: closed form
  double lambda0_coeff;
};

/// Batch evaluation over a grid of Z^(1/3) values. K = 0 selects the closed form.
OscillationSeries oscillation_series(std::span<const double> zcube, double lambda0_coeff,
                                     long K = 0);

/// Period in Z^(1/3) from the mean spacing of sign changes (two per period).
double measure_period(const OscillationSeries& s);

/// Peak |E_osc| / Z^(4/3) divided by the peak of the unit-amplitude shape,
/// i.e. the amplitude constant recovered from the series.
double envelope_amplitude(const OscillationSeries& s);

// Poisson summation check -------------------------------------------------------------

/// sum over l with l + 1/2 < Lambda of 2(2l + 1).
double direct_degeneracy_sum(double Lambda);

/// The same count written as 4 sum_{k=-K}^{K} (-1)^k int_0^Lambda lambda e^(i 2 pi k lambda) d lambda.
double poisson_degeneracy_sum(double Lambda, long K);

}  // namespace statatom
