#pragma once

// Binding-energy estimates in atomic units. Energies are stored as
// contributions to E (negative for bound systems); the "scaled" value is
// -E / (Z^2 / 2).

#include <string>
#include <vector>

#include "statatom/tf_solver.hpp"

namespace statatom {

struct EnergyTerm {
  std::string label;
  double value;
};

class EnergyBreakdown {
 public:
  explicit EnergyBreakdown(double Z);

  void add(std::string label, double value);

  double Z() const noexcept { return Z_; }
  const std::vector<EnergyTerm>& terms() const noexcept { return terms_; }
  /// Value of the term with this label, 0 if absent.
  double term(const std::string& label) const noexcept;
  double total() const noexcept;
  double scaled() const noexcept { return -2.0 * total() / (Z_ * Z_); }

 private:
  double Z_;
  std::vector<EnergyTerm> terms_;
};

// Noninteracting electrons in Bohr shells --------------------------------------

struct NIEResult {
  double N;
  double n_s;
  double E;
};

/// Electrons in n_s completely filled shells, sum 2 n^2.
long long nie_shell_count(int n_s);

/// Filled shells with nuclear charge Z: each electron is bound by Z^2/(2 n^2).
NIEResult nie_filled_shells(int n_s, double Z);

/// Asymptotic inverse of nie_shell_count: (3N/2)^(1/3) - 1/2 + (1/12)(3N/2)^(-1/3).
double nie_inverse_asymptotic(double N);

struct SeriesCoefficients {
  double leading;   // multiplies Z^(1/3)
  double constant;
  double third;     // multiplies Z^(-1/3)
};

SeriesCoefficients nie_coefficients();

/// -E/(Z^2/2) for a neutral NIE atom, three-term series in Z^(1/3).
double nie_neutral_scaled_energy(double Z);

// Statistical model ---------------------------------------------------------------

/// Leading TF term, E = -(3/7)(B/a) Z^(7/3).
EnergyBreakdown tf_energy(double Z, double B);

/// Strongly bound electron correction, +Z^2/2 added to E.
EnergyTerm scott_correction(double Z);

struct QuantumExchange {
  double I2;    // int_0^inf F^2 dx
  double dE_qu;
  double dE_ex;
};

/// Requires a neutral solution; ions raise UnsupportedCase.
QuantumExchange quantum_exchange_corrections(const TFSolution& sol, double Z);

/// Quantum correction from a given I2: -Z^(5/3) I2 / (16 a^2).
double quantum_correction(double Z, double I2);
/// Exchange correction, 9/2 of the quantum one.
double exchange_correction(double Z, double I2);

EnergyBreakdown statistical_energy(double Z, double B, double I2);

/// Coefficients of -E/(Z^2/2) = c1 Z^(1/3) + c0 + c3 Z^(-1/3).
SeriesCoefficients statistical_coefficients(double B, double I2);

enum class Model { tf, tf_scott, statistical };

const char* model_name(Model m) noexcept;
/// Parses "tf", "tf-scott", "statistical"; DomainError otherwise.
Model parse_model(const std::string& s);

EnergyBreakdown model_energy(Model m, double Z, double B, double I2);

}  // namespace statatom
