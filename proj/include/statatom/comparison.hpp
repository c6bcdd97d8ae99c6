#pragma once

// Deviation of model binding energies from external reference values
// (Hartree-Fock tables, measured ionization sums), read from CSV files with
// the header "Z,minusE,label" and energies in atomic units.

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "statatom/energy_models.hpp"
#include "statatom/semiclassics.hpp"

namespace statatom {

struct ReferenceRecord {
  int Z;
  double minusE;
  std::string label;
};

struct ReferenceDataset {
  std::vector<ReferenceRecord> records;  // unique Z, ascending
  std::string source;
  std::vector<std::string> warnings;
};

/// Throws ParseError listing every offending line.
ReferenceDataset load_reference(const std::string& path);
ReferenceDataset parse_reference(std::istream& is, const std::string& source);

struct ComparisonRecord {
  int Z;
  double zcube;
  double ref;         // -E reference
  double model;       // -E model
  double rel_dev;     // 100 (ref - model) / ref
  double scaled_dev;  // (ref - model) / Z^(4/3)
};

ComparisonRecord make_record(int Z, double ref, double model);

/// model_minusE(Z) supplies the model's -E.
std::vector<ComparisonRecord> deviation_series(const ReferenceDataset& ds,
                                               const std::function<double(int)>& model_minusE);
/// Built-in models with TF slope B and I2 = int F^2 dx.
std::vector<ComparisonRecord> deviation_series(const ReferenceDataset& ds, Model model, double B,
                                               double I2);

/// Z of the closed-shell noble gases, including the superheavy Z = 118.
std::vector<int> inert_gas_markers();

struct OverlayRow {
  int Z;
  double zcube;
  double ref_scaled;  // (ref - statistical model) / Z^(4/3)
  double ltf_scaled;  // leading oscillation / Z^(4/3)
  double residual;    // ref_scaled - ltf_scaled - offset
};

struct Overlay {
  std::vector<OverlayRow> rows;
  double offset = 0;  // least-squares constant, 0 unless fitted
  double rms = 0;
};

/// Aligns scaled deviations with the oscillation evaluated (same lambda_0
/// coefficient and truncation as `series`) at each record's Z.
Overlay oscillation_overlay(const std::vector<ComparisonRecord>& deviations,
                            const OscillationSeries& series, bool fit_offset);

}  // namespace statatom
