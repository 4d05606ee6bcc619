#include <doctest.h>

#include <cmath>

#include "growth/catalog.hpp"
#include "growth/error.hpp"

using namespace growth;

TEST_CASE("R polynomial") {
  CHECK(r_polynomial(2).to_string() == "1 - z1 - z2 - 3*z1*z2");
  CHECK(r_polynomial(3).to_string() == "1 - z1 - z2 - z3 - 3*z1*z2 - 3*z1*z3 - 3*z2*z3 - 5*z1*z2*z3");
  CHECK(elementary_symmetric(4, 2).term_count() == 6);
  CHECK(delta_free_group(2).to_string() == "(1 + z1 + z2 + z1*z2) / (1 - z1 - z2 - 3*z1*z2)");
}

TEST_CASE("identity suite for ranks 2 to 4") {
  for (int m = 2; m <= 4; ++m) {
    const FmIdentityReport rep = verify_fm_identities(m);
    CHECK(rep.checks.size() == 6);
    for (const auto& c : rep.checks) {
      INFO(c.name);
      CHECK(c.pass);
    }
    CHECK(rep.pass());
  }
  CHECK_THROWS_AS(verify_fm_identities(5), InvalidInput);
}

TEST_CASE("cleared denominator") {
  for (int m = 2; m <= 5; ++m) CHECK(cleared_delta_denominator(m) == r_polynomial(m));
}

TEST_CASE("rank-3 barycenter") {
  const ExtendedValue v = psi_f3(Direction({1.0 / 3, 1.0 / 3, 1.0 / 3}));
  CHECK(v.value == doctest::Approx(std::log(5.0)).epsilon(1e-12));
  // Quartic at p = q = 1/3 has the root z = 5.
  const auto roots = f3_quartic_roots(1.0 / 3, 1.0 / 3);
  bool has5 = false;
  for (double x : roots) has5 = has5 || std::abs(x - 5.0) < 1e-9;
  CHECK(has5);
  CHECK_THROWS_AS(psi_f3(Direction({0.5, 0.5, 0.0})), InvalidInput);
}

TEST_CASE("spectral radius formulas") {
  CHECK(chi_kesten(2) == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-15));
  CHECK(chi_kesten(3) == doctest::Approx(std::sqrt(5.0) / 3).epsilon(1e-15));
  for (int m = 2; m <= 6; ++m) CHECK(std::abs(chi_akemann(GroupParams::uniform(m)) - chi_kesten(m)) < 1e-10);
  CHECK(std::abs(chi_akemann({2, {0.25, 0.25}}) - std::sqrt(3.0) / 2) < 1e-10);
  CHECK_THROWS_AS(chi_akemann({2, {0.3, 0.3}}), InvalidInput);
}

TEST_CASE("chi against cogrowth") {
  for (int m = 2; m <= 5; ++m) {
    CHECK(chi_of_alpha(2.0 * m - 1, m) == 1.0);
    const double root = std::sqrt(2.0 * m - 1);
    CHECK(chi_of_alpha(root, m) == doctest::Approx(root / m).epsilon(1e-15));
    CHECK(chi_of_alpha(root * (1 + 1e-9), m) == doctest::Approx(root / m).epsilon(1e-12));
    double prev = 0.0;
    for (int k = 0; k <= 100; ++k) {
      const double alpha = root + (2.0 * m - 1 - root) * k / 100.0;
      const double c = chi_of_alpha(alpha, m);
      CHECK(c >= prev - 1e-15);
      prev = c;
    }
  }
  CHECK(chi_of_alpha(2.0, 2) == doctest::Approx(7.0 / 8).epsilon(1e-15));
  CHECK(chi_of_alpha(1.0, 2) == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-15));
  CHECK_THROWS_AS(chi_of_alpha(1.5, 2, true), InvalidInput);
  CHECK_THROWS_AS(chi_of_alpha(3.5, 2), InvalidInput);
  CHECK_THROWS_AS(chi_of_alpha(0.5, 2), InvalidInput);
}

TEST_CASE("degree-8 equation") {
  const Deg8Result r = deg8_check(0.25, 0.25);
  CHECK(r.x == doctest::Approx(1.0 / 48).epsilon(1e-14));
  CHECK(std::abs(r.chi - std::sqrt(3.0) / 2) < 1e-10);
  const Deg8Result s = deg8_check(0.3, 0.2);
  CHECK(std::abs(s.chi - chi_akemann({2, {0.3, 0.2}})) < 1e-10);
  // 65536 q(x) = (1 + 16x)^3 (48x - 1) at p = (1/4, 1/4).
  const auto c = deg8_coefficients(0.25, 0.25);
  for (double x : {-0.3, 0.01, 0.2, 1.0}) {
    double q = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) q = q * x + c[k];
    CHECK(65536 * q == doctest::Approx(std::pow(1 + 16 * x, 3) * (48 * x - 1)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(deg8_check(0.3, 0.3), InvalidInput);
}
