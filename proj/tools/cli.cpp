#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "statatom/comparison.hpp"
#include "statatom/energy_models.hpp"
#include "statatom/error.hpp"
#include "statatom/quadrature.hpp"
#include "statatom/semiclassics.hpp"
#include "statatom/tf_solver.hpp"
#include "statatom/units.hpp"
#include "table.hpp"

namespace statatom::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string out;
  std::string format = "csv";
  std::string config;
  double tol = 1e-8;
  std::optional<double> x_max;

  double z_min = 1, z_max = 120, z_step = 1;
  double z = 88;
  double q = 0;
  std::string model = "statistical";

  double r_min = 1e-4, r_max = 20;
  int points = 200;
  double x_min = 1e-4, x_hi = 1e3;

  std::string energies = "0,-0.5,-2,-10";
  double lambda_step = 0.05;

  double grid_zcube = 0.02;
  long k = 0;
  bool pin_lambda0 = false;

  std::string reference;
  bool overlay = false;
  bool fit_offset = false;
};

// Option registration helpers ------------------------------------------------------

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--out", o.out, "Output file (default: standard output)");
  sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--config", o.config, "key=value file; command-line flags take precedence");
  sub->add_option("--tol", o.tol, "Shooting tolerance");
  sub->add_option("--x-max", o.x_max, "Neutral grid cutoff (overrides STATATOM_XMAX)");
}

void add_zrange(CLI::App* sub, Options& o) {
  sub->add_option("--z-min", o.z_min, "Smallest Z");
  sub->add_option("--z-max", o.z_max, "Largest Z");
  sub->add_option("--z-step", o.z_step, "Step in Z");
}

void add_lambda0(CLI::App* sub, Options& o) {
  sub->add_option("--k", o.k, "Fourier truncation order; 0 uses the closed form");
  sub->add_flag("--pin-lambda0", o.pin_lambda0, "Use lambda0 = 0.928 Z^(1/3) instead of the computed value");
}

// key=value file; keys are long option names without the leading dashes.
void apply_config(CLI::App* sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#' || line[b] == ';' || line[b] == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    auto strip = [](std::string s) {
      const auto s0 = s.find_first_not_of(" \t\r");
      if (s0 == std::string::npos) return std::string();
      return s.substr(s0, s.find_last_not_of(" \t\r") - s0 + 1);
    };
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (!opt || key == "config")
      throw UsageError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (opt->count() > 0) continue;
    if (opt->get_type_size() == 0) {
      if (value == "true" || value == "1") opt->add_result("true");
      else if (value == "false" || value == "0") continue;
      else throw UsageError(path + ":" + std::to_string(lineno) + ": expected true/false");
    } else {
      opt->add_result(value);
    }
    try {
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

// Validation ------------------------------------------------------------------------

std::vector<double> z_values(const Options& o) {
  if (!(o.z_min >= 1 && o.z_min <= o.z_max && o.z_max <= 200))
    throw UsageError("need 1 <= z-min <= z-max <= 200");
  if (!(o.z_step > 0)) throw UsageError("z-step must be positive");
  std::vector<double> zs;
  const auto n = static_cast<long>(std::floor((o.z_max - o.z_min) / o.z_step + 1e-9));
  for (long i = 0; i <= n; ++i) zs.push_back(o.z_min + static_cast<double>(i) * o.z_step);
  return zs;
}

void check_z(double z) {
  if (!(z >= 1 && z <= 200)) throw UsageError("Z must lie in [1, 200]");
}

SolverOptions solver_options(const Options& o) {
  SolverOptions s;
  if (o.x_max) {
    s.x_max = *o.x_max;
  } else if (const char* env = std::getenv("STATATOM_XMAX"); env && *env) {
    char* end = nullptr;
    s.x_max = std::strtod(env, &end);
    if (*end != '\0') throw UsageError("STATATOM_XMAX is not a number");
  }
  if (!(s.x_max > s.x_start)) throw UsageError("x-max must be larger than the series start");
  if (!(o.tol > 0 && o.tol <= 1e-3)) throw UsageError("tol must lie in (0, 1e-3]");
  return s;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double d = std::strtod(item.c_str(), &end);
    if (item.empty() || *end != '\0') throw UsageError("not a number in list: '" + item + "'");
    v.push_back(d);
  }
  if (v.empty()) throw UsageError("empty list");
  return v;
}

// Commands -----------------------------------------------------------------------------

Table solution_table(const TFSolution& sol, const std::string& figure) {
  Table t;
  t.figure = figure;
  t.meta = {{"B", sol.B()}, {"q", sol.q()}, {"x0", sol.x0()}, {"err", sol.err()}};
  t.columns = {"x", "F", "Fp"};
  const auto x = sol.grid();
  for (std::size_t i = 0; i < x.size(); ++i) t.add_row({x[i], sol.F()[i], sol.Fp()[i]});
  return t;
}

Table cmd_energy(const Options& o) {
  const Model m = parse_model(o.model);
  const auto zs = z_values(o);
  const TFSolution sol = solve_neutral(o.tol, solver_options(o));
  const double I2 = m == Model::statistical ? solution_moments(sol).I2 : 0.0;
  Table t;
  t.figure = "scaled binding energy -E/(Z^2/2) versus Z, model " + std::string(model_name(m));
  t.meta = {{"model", std::string(model_name(m))}, {"B", sol.B()}};
  if (m == Model::statistical) t.meta.emplace_back("I2", I2);
  t.columns = {"Z", "leading", "scott", "quantum", "exchange", "total", "scaled"};
  for (double Z : zs) {
    const EnergyBreakdown e = model_energy(m, Z, sol.B(), I2 > 0 ? I2 : 1.0);
    t.add_row({Z, e.term("leading"), e.term("scott"), e.term("quantum"), e.term("exchange"),
               e.total(), e.scaled()});
  }
  return t;
}

Table cmd_nie(const Options& o) {
  const auto zs = z_values(o);
  const auto c = nie_coefficients();
  Table t;
  t.figure = "noninteracting-electron binding energy -E/(Z^2/2) of neutral atoms versus Z";
  t.meta = {{"c1", c.leading}, {"c0", c.constant}, {"c3", c.third}};
  t.columns = {"Z", "n_s", "scaled_from_n_s", "scaled_series"};
  for (double Z : zs) {
    const double ns = nie_inverse_asymptotic(Z);
    t.add_row({Z, ns, 2.0 * ns, nie_neutral_scaled_energy(Z)});
  }
  return t;
}

Table cmd_density(const Options& o) {
  check_z(o.z);
  if (!(o.r_min > 0 && o.r_min < o.r_max)) throw UsageError("need 0 < r-min < r-max");
  if (o.points < 2) throw UsageError("points must be at least 2");
  const SolverOptions so = solver_options(o);
  const TFSolution sol = o.q == 0 ? solve_neutral(o.tol, so) : solve_ion(TFBoundarySpec(o.q, o.tol), so);
  const ScaledUnits u(o.z);
  Table t;
  t.figure = "radial density D = 4 pi r^2 n and potential of the TF atom, Z = " + format_number(o.z);
  t.meta = {{"Z", o.z}, {"q", o.q}, {"B", sol.B()}};
  t.columns = {"r", "x", "V", "n", "D"};
  const double l0 = std::log(o.r_min), l1 = std::log(o.r_max);
  for (int i = 0; i < o.points; ++i) {
    const double r = std::exp(l0 + (l1 - l0) * i / (o.points - 1));
    const DensityValue d = density(sol, o.z, r);
    t.add_row({r, u.x_of_r(r), potential(sol, o.z, r), d.n, d.D});
  }
  return t;
}

Table cmd_validity(const Options& o) {
  const auto zs = z_values(o);
  if (!(o.x_min > 0 && o.x_min < o.x_hi)) throw UsageError("need 0 < x-min < x-hi");
  if (o.points < 2) throw UsageError("points must be at least 2");
  const TFSolution sol = solve_neutral(o.tol, solver_options(o));
  Table t;
  t.figure = "validity parameter Z^(1/3) sqrt(x F(x)) versus x";
  t.columns = {"Z", "x", "validity"};
  const double l0 = std::log(o.x_min), l1 = std::log(o.x_hi);
  for (double Z : zs) {
    for (int i = 0; i < o.points; ++i) {
      const double x = std::exp(l0 + (l1 - l0) * i / (o.points - 1));
      t.add_row({Z, x, validity_parameter(sol, Z, x)});
    }
  }
  return t;
}

Table cmd_degeneracy(const Options& o) {
  check_z(o.z);
  if (!(o.lambda_step > 0)) throw UsageError("lambda-step must be positive");
  const auto Es = parse_list(o.energies);
  for (double E : Es)
    if (E > 0) throw UsageError("energies must be nonpositive");
  const TFSolution sol = solve_neutral(o.tol, solver_options(o));
  const TFPotential V(sol, o.z);
  Table t;
  t.figure = "energetic degeneracy curves nu(lambda) at fixed energy in the TF potential, Z = " +
             format_number(o.z);
  t.meta = {{"Z", o.z}};
  t.columns = {"E", "lambda", "nu"};
  for (double E : Es) {
    const double lmax = lambda_max(V, E);
    std::vector<double> grid;
    for (long i = 0; i * o.lambda_step <= lmax; ++i) grid.push_back(i * o.lambda_step);
    const QuantCurve c = degeneracy_curve(V, E, grid);
    for (std::size_t i = 0; i < c.lambda.size(); ++i) t.add_row({E, c.lambda[i], c.nu[i]});
    t.add_row({E, lmax, 0.0});
  }
  return t;
}

Table cmd_occupied(const Options& o) {
  check_z(o.z);
  const TFSolution sol = solve_neutral(o.tol, solver_options(o));
  Table t;
  t.figure = "predicted occupied states (l, n_r) below the zero-energy degeneracy curve, Z = " +
             format_number(o.z);
  t.meta = {{"Z", o.z}};
  t.columns = {"l", "nr", "lambda", "nu", "nu_max"};
  int last_l = -1;
  double nu_max = 0;
  for (const QuantState& s : predict_occupied(sol, o.z)) {
    if (s.l != last_l) {
      nu_max = nu_of(sol, o.z, 0.0, s.lambda()).nu;
      last_l = s.l;
    }
    t.add_row({static_cast<long long>(s.l), static_cast<long long>(s.nr), s.lambda(), s.nu(), nu_max});
  }
  return t;
}

double lambda0_coeff(const Options& o) {
  if (o.pin_lambda0) return kPinnedLambda0Coefficient;
  return lambda0_coefficient(solve_neutral(o.tol, solver_options(o)));
}

Table cmd_oscillation(const Options& o) {
  if (!(o.z_min >= 1 && o.z_min <= o.z_max && o.z_max <= 200))
    throw UsageError("need 1 <= z-min <= z-max <= 200");
  if (!(o.grid_zcube > 0)) throw UsageError("grid-zcube must be positive");
  if (o.k < 0) throw UsageError("k must be nonnegative");
  const double c = lambda0_coeff(o);
  const double z0 = std::cbrt(o.z_min), z1 = std::cbrt(o.z_max);
  std::vector<double> grid;
  const auto n = static_cast<long>(std::floor((z1 - z0) / o.grid_zcube + 1e-9));
  for (long i = 0; i <= n; ++i) grid.push_back(z0 + static_cast<double>(i) * o.grid_zcube);
  const OscillationSeries s = oscillation_series(grid, c, o.k);
  Table t;
  t.figure = "leading l-quantized shell oscillation of the binding energy versus Z^(1/3)";
  t.meta = {{"lambda0_coeff", c}, {"K", static_cast<long long>(o.k)}};
  try {
    t.meta.emplace_back("period", measure_period(s));
  } catch (const DomainError&) {
  }
  t.meta.emplace_back("amplitude", envelope_amplitude(s));
  t.columns = {"zcube", "Z", "E_osc", "E_osc_scaled"};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double zc = grid[i];
    t.add_row({zc, zc * zc * zc, s.values[i], s.values[i] / std::pow(zc, 4.0)});
  }
  return t;
}

Table cmd_compare(const Options& o, std::ostream& err) {
  if (o.reference.empty()) throw UsageError("--reference is required");
  const ReferenceDataset ds = load_reference(o.reference);
  for (const auto& w : ds.warnings) err << "warning: " << w << '\n';
  const TFSolution sol = solve_neutral(o.tol, solver_options(o));
  const double I2 = solution_moments(sol).I2;
  Table t;
  if (!o.overlay) {
    const Model m = parse_model(o.model);
    t.figure = "deviation of model binding energies from reference data, model " +
               std::string(model_name(m));
    t.meta = {{"model", std::string(model_name(m))}, {"source", ds.source}};
    t.columns = {"Z", "zcube", "ref", "model", "rel_dev_pct", "scaled_dev"};
    for (const auto& r : deviation_series(ds, m, sol.B(), I2))
      t.add_row({static_cast<long long>(r.Z), r.zcube, r.ref, r.model, r.rel_dev, r.scaled_dev});
    return t;
  }
  const double c = o.pin_lambda0 ? kPinnedLambda0Coefficient : lambda0_coefficient(sol);
  const OscillationSeries shape{{}, {}, o.k, c};
  const Overlay ov =
      oscillation_overlay(deviation_series(ds, Model::statistical, sol.B(), I2), shape, o.fit_offset);
  t.figure = "reference deviation from the statistical model against the leading l-quantized oscillation";
  t.meta = {{"source", ds.source}, {"lambda0_coeff", c}, {"offset", ov.offset}, {"rms", ov.rms}};
  t.columns = {"Z", "zcube", "ref_scaled", "ltf_scaled", "residual"};
  for (const auto& r : ov.rows)
    t.add_row({static_cast<long long>(r.Z), r.zcube, r.ref_scaled, r.ltf_scaled, r.residual});
  return t;
}

void emit(const Options& o, const Table& t, std::ostream& out,
          const std::function<void(std::ostream&)>& custom_csv = {}) {
  std::ofstream file;
  std::ostream* os = &out;
  if (!o.out.empty()) {
    file.open(o.out, std::ios::binary);
    if (!file) throw UsageError("cannot write '" + o.out + "'");
    os = &file;
  }
  if (o.format == "json") write_json(*os, t);
  else if (custom_csv) custom_csv(*os);
  else write_csv(*os, t);
  os->flush();
  if (!*os) throw std::runtime_error("write failed");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Statistical theory of atoms: TF solutions, binding energies, semiclassics"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "Neutral TF function F(x)");
  auto* ion = app.add_subcommand("ion", "TF function of a positive ion");
  ion->add_option("--q", o.q, "Ionization degree (Z - N)/Z")->required();
  auto* energy = app.add_subcommand("energy", "Binding-energy breakdown over a Z range");
  add_zrange(energy, o);
  energy->add_option("--model", o.model, "tf, tf-scott or statistical");
  auto* nie = app.add_subcommand("nie", "Noninteracting-electron energies over a Z range");
  add_zrange(nie, o);
  auto* dens = app.add_subcommand("density", "Potential and density profiles");
  dens->add_option("--z", o.z, "Nuclear charge");
  dens->add_option("--q", o.q, "Ionization degree");
  dens->add_option("--r-min", o.r_min, "Smallest radius (Bohr)");
  dens->add_option("--r-max", o.r_max, "Largest radius (Bohr)");
  dens->add_option("--points", o.points, "Number of log-spaced radii");
  auto* val = app.add_subcommand("validity", "Validity parameter over x and Z");
  add_zrange(val, o);
  val->add_option("--x-min", o.x_min, "Smallest x");
  val->add_option("--x-hi", o.x_hi, "Largest x");
  val->add_option("--points", o.points, "Number of log-spaced x values");
  auto* deg = app.add_subcommand("degeneracy", "nu(lambda) curves at fixed energies");
  deg->add_option("--z", o.z, "Nuclear charge");
  deg->add_option("--energy", o.energies, "Comma-separated energies (atomic units, <= 0)");
  deg->add_option("--lambda-step", o.lambda_step, "Spacing of the lambda grid");
  auto* occ = app.add_subcommand("occupied", "Predicted occupied (l, n_r) states");
  occ->add_option("--z", o.z, "Nuclear charge");
  auto* osc = app.add_subcommand("oscillation", "Leading shell oscillation over Z^(1/3)");
  osc->add_option("--z-min", o.z_min, "Smallest Z");
  osc->add_option("--z-max", o.z_max, "Largest Z");
  osc->add_option("--grid-zcube", o.grid_zcube, "Step in Z^(1/3)");
  add_lambda0(osc, o);
  auto* cmp = app.add_subcommand("compare", "Deviations from reference binding energies");
  cmp->add_option("--reference", o.reference, "CSV with header Z,minusE,label");
  cmp->add_option("--model", o.model, "tf, tf-scott or statistical");
  cmp->add_flag("--overlay", o.overlay, "Overlay deviations with the shell oscillation");
  cmp->add_flag("--fit-offset", o.fit_offset, "Fit a constant offset in the overlay");
  add_lambda0(cmp, o);

  for (auto* sub : {solve, ion, energy, nie, dens, val, deg, occ, osc, cmp}) add_common(sub, o);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
    CLI::App* sub = app.get_subcommands().front();
    if (!o.config.empty()) apply_config(sub, o.config);

    if (sub == solve || sub == ion) {
      const SolverOptions so = solver_options(o);
      const TFSolution sol =
          sub == solve ? solve_neutral(o.tol, so) : solve_ion(TFBoundarySpec(o.q, o.tol), so);
      const std::string fig = sub == solve ? "scaled TF function F(x) of the neutral atom"
                                           : "scaled TF function F(x) of a positive ion";
      emit(o, solution_table(sol, fig), out, [&](std::ostream& os) {
        os << "# figure: " << fig << '\n';
        statatom::write_csv(os, sol);
      });
    } else if (sub == energy) {
      emit(o, cmd_energy(o), out);
    } else if (sub == nie) {
      emit(o, cmd_nie(o), out);
    } else if (sub == dens) {
      emit(o, cmd_density(o), out);
    } else if (sub == val) {
      emit(o, cmd_validity(o), out);
    } else if (sub == deg) {
      emit(o, cmd_degeneracy(o), out);
    } else if (sub == occ) {
      emit(o, cmd_occupied(o), out);
    } else if (sub == osc) {
      emit(o, cmd_oscillation(o), out);
    } else if (sub == cmp) {
      emit(o, cmd_compare(o, err), out);
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << " (last bracket [" << format_number(e.bracket_lo()) << ", "
        << format_number(e.bracket_hi()) << "])\n";
    return not_converged;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }
  return ok;
}

}  // namespace statatom::cli
