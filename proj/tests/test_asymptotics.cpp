#include <doctest.h>

#include <cmath>

#include "growth/asymptotics.hpp"
#include "growth/automaton.hpp"
#include "growth/catalog.hpp"
#include "growth/error.hpp"

using namespace growth;

namespace {

MultiPoly f2_h() {
  const MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  return MultiPoly::constant(2, 1) - x - y - (x * y).scaled(3);
}

}  // namespace

TEST_CASE("critical points match the closed form on F2") {
  for (double p : {0.2, 1.0 / 3, 0.5, 0.7}) {
    const auto pts = critical_points(f2_h(), Direction({p, 1 - p}));
    const CriticalPoint ref = f2_critical_closed(p);
    bool found = false;
    for (const auto& cp : pts) {
      if (!cp.minimal) continue;
      found = true;
      CHECK(cp.z_star[0] == doctest::Approx(ref.z_star[0]).epsilon(1e-12));
      CHECK(cp.z_star[1] == doctest::Approx(ref.z_star[1]).epsilon(1e-12));
      CHECK(cp.height == doctest::Approx(psi_closed_form(ClosedForm::f2_delta, Direction({p, 1 - p})).value)
                             .epsilon(1e-10));
    }
    CHECK(found);
  }
  CHECK(f2_critical_closed(0.5).z_star[0] == doctest::Approx(1.0 / 3).epsilon(1e-15));
}

TEST_CASE("critical point on the rank-3 denominator") {
  const Direction r({0.5, 0.3, 0.2});
  const auto pts = critical_points(r_polynomial(3), r);
  REQUIRE_FALSE(pts.empty());
  double best = INFINITY;
  for (const auto& cp : pts)
    if (cp.minimal) best = std::min(best, cp.height);
  CHECK(best == doctest::Approx(psi_f3(r).value).epsilon(1e-10));
}

TEST_CASE("boundary minimizer has log-gradient parallel to r") {
  const Direction r({0.35, 0.65});
  const ExtendedValue v = psi_boundary(f2_h(), r);
  REQUIRE(v.minimizer);
  const std::vector<double> z{std::exp(-(*v.minimizer)[0]), std::exp(-(*v.minimizer)[1])};
  CHECK(log_gradient_misalignment(f2_h(), z, r.values()) < 1e-10);
  CHECK(log_gradient_misalignment(f2_h(), {1.0 / 3, 1.0 / 3}, r.values()) > 0.1);
}

TEST_CASE("Hessian scalar") {
  CHECK(hessian_scalar_f2(1.0 / 3, 1.0 / 3) == doctest::Approx(1.0).epsilon(1e-14));
  for (int k = 1; k < 50; ++k) {
    const CriticalPoint cp = f2_critical_closed(k / 50.0);
    CHECK(hessian_scalar_f2(cp.z_star[0], cp.z_star[1]) > 0);
  }
  CHECK_THROWS_AS(hessian_scalar_f2(0.5, 0.5), InvalidInput);
  CHECK_THROWS_AS(hessian_scalar_f2(-0.1, 1.0), InvalidInput);
}

TEST_CASE("correction exponent of the central binomial") {
  const auto t = coefficients_dp(free_monoid_automaton(2), VariableMap::identity(2), 400, CountMode::log_domain);
  const FitReport fit = fit_correction(t, Direction({0.5, 0.5}), std::log(2.0), 100, 400);
  CHECK(fit.slope == doctest::Approx(-0.5).epsilon(0.01));
  // C(n, n/2) ~ 2^n sqrt(2 / (pi n))
  CHECK(fit.intercept == doctest::Approx(0.5 * std::log(2 / M_PI)).epsilon(0.01));
  CHECK(fit.points == 151);
  CHECK_THROWS_AS(fit_correction(t, Direction({0.5, 0.5}), std::log(2.0), 100, 401), InvalidInput);
  CHECK_THROWS_AS(fit_correction(t, Direction({0.5, 0.5}), std::log(2.0), 100, 106), InvalidInput);
}
