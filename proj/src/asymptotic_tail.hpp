#pragma once

// The decaying neutral TF function in the variables w = x^3 F / 144,
// s = ln x obeys the autonomous equation
//
//   w'' - 7 w' + 12 w = 12 w^(3/2),
//
// whose fixed point w = 1 is the exact solution 144/x^3. The neutral
// solution is the unique orbit that reaches w = 1 along the stable direction
// (rate (sqrt(73) - 7)/2). Forward integration of that orbit is unstable, so
// it is built once by integrating backwards from the fixed point and then
// re-used, shifted in s, as the tail of every neutral solution.

#include <vector>

namespace statatom::detail {

struct OrbitPoint {
  double w;
  double p;  // dw/ds
};

class AsymptoticOrbit {
 public:
  static const AsymptoticOrbit& instance();

  /// Orbit state at parameter sigma (sigma = 0 is the seed point near w = 1).
  OrbitPoint at(double sigma) const;

  /// The sigma at which the orbit passes through w (0 < w < 1).
  double sigma_of_w(double w) const;

  /// Decay rate of the stable direction at w = 1.
  static double stable_rate();

  double w_min() const { return w_.front(); }

 private:
  AsymptoticOrbit();
  std::vector<double> s_, w_, p_;
  double seed_eps_;
};

}  // namespace statatom::detail
