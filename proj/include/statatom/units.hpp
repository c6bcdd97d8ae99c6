#pragma once

#include <cmath>
#include <numbers>

namespace statatom {

/// Length constant of the scaled radius, (1/2)(3*pi/4)^(2/3) = 0.8853...
inline double tf_length_constant() {
  static const double a = 0.5 * std::cbrt(std::pow(3.0 * std::numbers::pi / 4.0, 2.0));
  return a;
}

/// Conversion between the physical radius r (Bohr) and the scaled radius
/// x = Z^(1/3) r / a for a nucleus of charge Z.
class ScaledUnits {
 public:
  explicit ScaledUnits(double Z) : Z_(Z), zcube_(std::cbrt(Z)), a_(tf_length_constant()) {}

  double Z() const noexcept { return Z_; }
  double zcube() const noexcept { return zcube_; }
  double a() const noexcept { return a_; }

  double x_of_r(double r) const noexcept { return zcube_ * r / a_; }
  double r_of_x(double x) const noexcept { return a_ * x / zcube_; }

 private:
  double Z_;
  double zcube_;
  double a_;
};

}  // namespace statatom
