#include <doctest.h>

#include <cmath>

#include "statatom/energy_models.hpp"
#include "statatom/error.hpp"
#include "statatom/quadrature.hpp"
#include "statatom/units.hpp"

using namespace statatom;

namespace {

const TFSolution& neutral() {
  static const TFSolution s = solve_neutral(1e-10);
  return s;
}

double I2() {
  static const double v = solution_moments(neutral()).I2;
  return v;
}

// Exact shell-model binding for N electrons filling Bohr shells in order,
// partially filled last shell included.
double nie_exact_minus_E(int N, double Z) {
  double e = 0;
  for (int n = 1; N > 0; ++n) {
    const int take = std::min(N, 2 * n * n);
    e += take * Z * Z / (2.0 * n * n);
    N -= take;
  }
  return e;
}

}  // namespace

TEST_CASE("shell counts") {
  CHECK(nie_shell_count(1) == 2);
  CHECK(nie_shell_count(2) == 10);
  CHECK(nie_shell_count(3) == 28);
  for (int n = 1; n < 30; ++n) CHECK(nie_shell_count(n) == n * (n + 1) * (2 * n + 1) / 3);
  const auto r = nie_filled_shells(3, 28);
  CHECK(r.N == 28);
  CHECK(r.E == doctest::Approx(-nie_exact_minus_E(28, 28)));
}

TEST_CASE("asymptotic inverse of the shell count") {
  CHECK(nie_inverse_asymptotic(2) == doctest::Approx(1.0000297).epsilon(1e-7));
  // 1.04e-6, which is 0.0001% at the displayed precision
  CHECK(std::abs(nie_inverse_asymptotic(10) - 2) / 2 < 1.5e-6);
  CHECK(std::abs(nie_inverse_asymptotic(28) - 3) < 1e-5);
  for (int n = 4; n < 50; ++n) {
    const double N = static_cast<double>(nie_shell_count(n));
    CHECK(std::abs(nie_inverse_asymptotic(N) - n) < 1e-3 / n);
  }
}

TEST_CASE("NIE series coefficients") {
  const auto c = nie_coefficients();
  CHECK(std::abs(c.leading - 2.289) < 1e-3);
  CHECK(c.constant == -1.0);
  CHECK(std::abs(c.third - 0.1456) < 1e-4);
  // -E = Z^2 n_s with n_s from the asymptotic inverse at N = Z
  for (double Z : {1.0, 10.0, 28.0, 100.0}) {
    const double direct = 2 * nie_inverse_asymptotic(Z);
    CHECK(std::abs(nie_neutral_scaled_energy(Z) - direct) / direct < 1e-4);
  }
  // at closed shells the series matches the exact shell sum closely
  for (int n : {2, 3, 5}) {
    const double Z = static_cast<double>(nie_shell_count(n));
    const double exact = nie_exact_minus_E(static_cast<int>(Z), Z) / (Z * Z / 2);
    CHECK(nie_neutral_scaled_energy(Z) == doctest::Approx(exact).epsilon(1e-5));
  }
}

TEST_CASE("TF leading term") {
  const double B = neutral().B();
  const double coeff = tf_energy(1.0, B).scaled();
  CHECK(std::abs(coeff - 1.537) < 2e-3);
  CHECK(tf_energy(1.0, 1.588).scaled() == doctest::Approx(6.0 / 7.0 * 1.588 / tf_length_constant()));
  CHECK(tf_energy(64.0, B).total() / tf_energy(8.0, B).total() ==
        doctest::Approx(std::pow(8.0, 7.0 / 3.0)).epsilon(1e-14));
  const double reduction = 1 - coeff / nie_coefficients().leading;
  CHECK(std::abs(reduction - 1.0 / 3.0) < 0.02);
}

TEST_CASE("strongly bound electron correction") {
  for (double Z : {1.0, 7.5, 92.0}) {
    const auto t = scott_correction(Z);
    CHECK(t.value == 0.5 * Z * Z);
    const auto c = statistical_coefficients(neutral().B(), I2());
    CHECK(c.constant == -1.0);
    CHECK(c.constant == nie_coefficients().constant);
    const auto e = model_energy(Model::tf_scott, Z, neutral().B(), I2());
    CHECK(e.scaled() - tf_energy(Z, neutral().B()).scaled() == doctest::Approx(-1.0).epsilon(1e-12));
  }
}

TEST_CASE("quantum and exchange corrections") {
  const double Z = 47;
  const auto qe = quantum_exchange_corrections(neutral(), Z);
  CHECK(std::abs(qe.I2 - 0.6154) < 5e-4);
  const double published = 2.0 / 11.0 * (-0.2699) * std::pow(Z, 5.0 / 3.0);
  CHECK(std::abs(qe.dE_qu / published - 1) < 3e-3);
  CHECK(qe.dE_ex / qe.dE_qu == doctest::Approx(4.5).epsilon(1e-15));
  CHECK(qe.dE_qu == quantum_correction(Z, qe.I2));
  CHECK(qe.dE_ex == exchange_correction(Z, qe.I2));
  const TFSolution ion = solve_ion(TFBoundarySpec(0.3, 1e-8));
  CHECK_THROWS_AS(quantum_exchange_corrections(ion, Z), UnsupportedCase);
}

TEST_CASE("statistical energy") {
  const double B = neutral().B();
  const auto c = statistical_coefficients(B, I2());
  CHECK(std::abs(c.leading - 1.537) < 2e-3);
  CHECK(std::abs(c.third - 0.5398) < 1e-3);
  const auto e = statistical_energy(100, B, I2());
  CHECK(std::abs(e.scaled() - 6.2505) < 5e-3);
  CHECK(std::abs(-e.total() - 3.125e4) < 15);
  double sum = 0;
  for (const auto& t : e.terms()) sum += t.value;
  CHECK(e.total() == doctest::Approx(sum).epsilon(1e-15));
  CHECK(e.term("scott") == 0.5 * 100 * 100);
  CHECK(e.term("missing") == 0.0);
  // the series form and the breakdown agree
  const double zc = std::cbrt(100.0);
  CHECK(e.scaled() == doctest::Approx(c.leading * zc + c.constant + c.third / zc).epsilon(1e-13));
}

TEST_CASE("statistical energy approaches the leading term and grows with Z") {
  const double B = neutral().B();
  double prev_ratio = 0, prev = -1e300;
  for (double Z = 1; Z < 1e9; Z *= 3) {
    const double s = statistical_energy(Z, B, I2()).scaled();
    CHECK(s > prev);
    prev = s;
    if (Z > 10) {
      const double ratio = s / tf_energy(Z, B).scaled();
      CHECK(ratio > prev_ratio);
      prev_ratio = ratio;
    }
  }
  CHECK(std::abs(prev_ratio - 1) < 2e-3);
  for (double Z = 1; Z <= 200; Z += 0.5)
    REQUIRE(statistical_energy(Z + 0.5, B, I2()).scaled() > statistical_energy(Z, B, I2()).scaled());
}

TEST_CASE("model selection") {
  CHECK(parse_model("tf") == Model::tf);
  CHECK(parse_model("tf-scott") == Model::tf_scott);
  CHECK(parse_model("statistical") == Model::statistical);
  CHECK_THROWS_AS(parse_model("hf"), DomainError);
  for (Model m : {Model::tf, Model::tf_scott, Model::statistical})
    CHECK(parse_model(model_name(m)) == m);
  const double B = neutral().B();
  CHECK(model_energy(Model::tf, 30, B, I2()).total() == tf_energy(30, B).total());
  CHECK(model_energy(Model::statistical, 30, B, I2()).total() ==
        statistical_energy(30, B, I2()).total());
}
