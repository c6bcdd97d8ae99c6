#include "statatom/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "statatom/error.hpp"

namespace statatom {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

ReferenceDataset parse_reference(std::istream& is, const std::string& source) {
  ReferenceDataset ds;
  ds.source = source;
  std::vector<ParseError::Item> errs;
  std::map<int, std::size_t> seen;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (!header) {
      if (t != "Z,minusE,label") errs.push_back({lineno, "expected header 'Z,minusE,label'"});
      header = true;
      continue;
    }
    const auto cells = split(t);
    if (cells.size() < 2 || cells.size() > 3) {
      errs.push_back({lineno, "expected 3 columns Z,minusE,label"});
      continue;
    }
    char* end = nullptr;
    const long Z = std::strtol(cells[0].c_str(), &end, 10);
    if (cells[0].empty() || *end != '\0') {
      errs.push_back({lineno, "Z is not an integer: '" + cells[0] + "'"});
      continue;
    }
    if (Z < 1 || Z > 1000) {
      errs.push_back({lineno, "Z must be a positive integer"});
      continue;
    }
    const double e = std::strtod(cells[1].c_str(), &end);
    if (cells[1].empty() || *end != '\0' || !std::isfinite(e)) {
      errs.push_back({lineno, "minusE is not a number: '" + cells[1] + "'"});
      continue;
    }
    if (!(e > 0.0)) {
      errs.push_back({lineno, "minusE must be positive"});
      continue;
    }
    const auto [it, fresh] = seen.emplace(static_cast<int>(Z), lineno);
    if (!fresh) {
      errs.push_back({lineno, "duplicate Z = " + std::to_string(Z) + " (first on line " +
                                  std::to_string(it->second) + ")"});
      continue;
    }
    ds.records.push_back({static_cast<int>(Z), e, cells.size() == 3 ? cells[2] : std::string()});
  }
  if (!errs.empty()) throw ParseError(std::move(errs));
  if (ds.records.empty()) ds.warnings.push_back(source + ": no reference records");
  std::sort(ds.records.begin(), ds.records.end(),
            [](const ReferenceRecord& a, const ReferenceRecord& b) { return a.Z < b.Z; });
  return ds;
}

ReferenceDataset load_reference(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError({{0, "cannot open '" + path + "'"}});
  return parse_reference(in, path);
}

ComparisonRecord make_record(int Z, double ref, double model) {
  const double z43 = std::pow(static_cast<double>(Z), 4.0 / 3.0);
  return {Z, std::cbrt(static_cast<double>(Z)), ref, model, 100.0 * (ref - model) / ref,
          (ref - model) / z43};
}

std::vector<ComparisonRecord> deviation_series(const ReferenceDataset& ds,
                                               const std::function<double(int)>& model_minusE) {
  std::vector<ComparisonRecord> out;
  out.reserve(ds.records.size());
  for (const auto& r : ds.records) out.push_back(make_record(r.Z, r.minusE, model_minusE(r.Z)));
  return out;
}

std::vector<ComparisonRecord> deviation_series(const ReferenceDataset& ds, Model model, double B,
                                               double I2) {
  return deviation_series(ds, [&](int Z) { return -model_energy(model, Z, B, I2).total(); });
}

std::vector<int> inert_gas_markers() { return {2, 10, 18, 36, 54, 86, 118}; }

Overlay oscillation_overlay(const std::vector<ComparisonRecord>& devs,
                            const OscillationSeries& series, bool fit_offset) {
  std::vector<double> zc;
  zc.reserve(devs.size());
  for (const auto& d : devs) zc.push_back(d.zcube);
  const OscillationSeries at = oscillation_series(zc, series.lambda0_coeff, series.K);

  Overlay ov;
  for (std::size_t i = 0; i < devs.size(); ++i) {
    const double z43 = std::pow(static_cast<double>(devs[i].Z), 4.0 / 3.0);
    ov.rows.push_back({devs[i].Z, devs[i].zcube, devs[i].scaled_dev, at.values[i] / z43, 0.0});
  }
  if (fit_offset && !ov.rows.empty()) {
    double s = 0;
    for (const auto& r : ov.rows) s += r.ref_scaled - r.ltf_scaled;
    ov.offset = s / static_cast<double>(ov.rows.size());
  }
  double ss = 0;
  for (auto& r : ov.rows) {
    r.residual = r.ref_scaled - r.ltf_scaled - ov.offset;
    ss += r.residual * r.residual;
  }
  ov.rms = ov.rows.empty() ? 0.0 : std::sqrt(ss / static_cast<double>(ov.rows.size()));
  return ov;
}

}  // namespace statatom
