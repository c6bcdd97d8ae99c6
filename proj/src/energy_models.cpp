#include "statatom/energy_models.hpp"

#include <cmath>

#include "statatom/error.hpp"
#include "statatom/quadrature.hpp"
#include "statatom/units.hpp"

namespace statatom {

EnergyBreakdown::EnergyBreakdown(double Z) : Z_(Z) {
  if (!(Z > 0.0)) throw DomainError("Z must be positive");
}

void EnergyBreakdown::add(std::string label, double value) {
  terms_.push_back({std::move(label), value});
}

double EnergyBreakdown::term(const std::string& label) const noexcept {
  for (const auto& t : terms_)
    if (t.label == label) return t.value;
  return 0.0;
}

double EnergyBreakdown::total() const noexcept {
  double s = 0;
  for (const auto& t : terms_) s += t.value;
  return s;
}

long long nie_shell_count(int n_s) {
  if (n_s < 1) throw DomainError("shell count must be at least 1");
  long long N = 0;
  for (long long n = 1; n <= n_s; ++n) N += 2 * n * n;
  return N;
}

NIEResult nie_filled_shells(int n_s, double Z) {
  if (!(Z > 0.0)) throw DomainError("Z must be positive");
  const long long N = nie_shell_count(n_s);
  // 2n^2 electrons times Z^2/(2n^2) per shell
  return {static_cast<double>(N), static_cast<double>(n_s), -Z * Z * n_s};
}

double nie_inverse_asymptotic(double N) {
  if (!(N > 0.0)) throw DomainError("N must be positive");
  const double c = std::cbrt(1.5 * N);
  return c - 0.5 + 1.0 / (12.0 * c);
}

SeriesCoefficients nie_coefficients() {
  const double c = std::cbrt(1.5);
  return {2.0 * c, -1.0, 1.0 / (6.0 * c)};
}

double nie_neutral_scaled_energy(double Z) {
  if (!(Z > 0.0)) throw DomainError("Z must be positive");
  const auto c = nie_coefficients();
  const double z3 = std::cbrt(Z);
  return c.leading * z3 + c.constant + c.third / z3;
}

EnergyBreakdown tf_energy(double Z, double B) {
  if (!(B > 0.0)) throw DomainError("B must be positive");
  EnergyBreakdown e(Z);
  e.add("leading", -(3.0 / 7.0) * (B / tf_length_constant()) * std::pow(Z, 7.0 / 3.0));
  return e;
}

EnergyTerm scott_correction(double Z) {
  if (!(Z > 0.0)) throw DomainError("Z must be positive");
  return {"scott", 0.5 * Z * Z};
}

double quantum_correction(double Z, double I2) {
  if (!(Z > 0.0)) throw DomainError("Z must be positive");
  const double a = tf_length_constant();
  return -std::pow(Z, 5.0 / 3.0) * I2 / (16.0 * a * a);
}

double exchange_correction(double Z, double I2) { return 4.5 * quantum_correction(Z, I2); }

QuantumExchange quantum_exchange_corrections(const TFSolution& sol, double Z) {
  if (!sol.neutral())
    throw UnsupportedCase("quantum and exchange corrections are only defined for neutral atoms");
  const double I2 = solution_moments(sol).I2;
  return {I2, quantum_correction(Z, I2), exchange_correction(Z, I2)};
}

EnergyBreakdown statistical_energy(double Z, double B, double I2) {
  if (!(I2 > 0.0)) throw DomainError("I2 must be positive");
  EnergyBreakdown e = tf_energy(Z, B);
  const EnergyTerm s = scott_correction(Z);
  e.add(s.label, s.value);
  e.add("quantum", quantum_correction(Z, I2));
  e.add("exchange", exchange_correction(Z, I2));
  return e;
}

SeriesCoefficients statistical_coefficients(double B, double I2) {
  const double a = tf_length_constant();
  // -2E/Z^2 with E_qu + E_ex = (11/2) E_qu
  return {(6.0 / 7.0) * B / a, -1.0, 11.0 * I2 / (16.0 * a * a)};
}

const char* model_name(Model m) noexcept {
  switch (m) {
    case Model::tf:
      return "tf";
    case Model::tf_scott:
      return "tf-scott";
    case Model::statistical:
      return "statistical";
  }
  return "?";
}

Model parse_model(const std::string& s) {
  if (s == "tf") return Model::tf;
  if (s == "tf-scott") return Model::tf_scott;
  if (s == "statistical") return Model::statistical;
  throw DomainError("unknown model '" + s + "' (expected tf, tf-scott or statistical)");
}

EnergyBreakdown model_energy(Model m, double Z, double B, double I2) {
  switch (m) {
    case Model::tf:
      return tf_energy(Z, B);
    case Model::tf_scott: {
      EnergyBreakdown e = tf_energy(Z, B);
      const EnergyTerm s = scott_correction(Z);
      e.add(s.label, s.value);
      return e;
    }
    case Model::statistical:
      return statistical_energy(Z, B, I2);
  }
  throw DomainError("unknown model");
}

}  // namespace statatom
