#include <doctest.h>

#include <cmath>
#include <random>

#include "growth/automaton.hpp"
#include "growth/error.hpp"
#include "growth/indicatrice.hpp"
#include "growth/spectral.hpp"

using namespace growth;

namespace {

const double kPhi = (1 + std::sqrt(5.0)) / 2;

std::vector<std::size_t> labels_of(const Automaton& a) {
  std::vector<std::size_t> out;
  for (const auto& l : a.state_labels()) out.push_back(*l);
  return out;
}

}  // namespace

TEST_CASE("perron data of the golden mean shift") {
  const SpectralData s = parry(adjacency(fibonacci_automaton()));
  CHECK(s.rho == doctest::Approx(kPhi).epsilon(1e-14));
  CHECK(s.v[0] == doctest::Approx(kPhi / (kPhi + 1)).epsilon(1e-14));
  CHECK(s.u[0] * s.v[0] + s.u[1] * s.v[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.p.at(0, 0) == doctest::Approx(1 / kPhi).epsilon(1e-14));
  CHECK(s.p.at(0, 1) == doctest::Approx(1 / (kPhi * kPhi)).epsilon(1e-14));
  CHECK(s.p.at(1, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.p.at(1, 1) == 0.0);
  CHECK(s.stationary[0] == doctest::Approx((5 + std::sqrt(5.0)) / 10).epsilon(1e-13));
  CHECK(characteristic_residual(adjacency(fibonacci_automaton()), s.rho) < 1e-14);
}

TEST_CASE("perron root of a general non-negative matrix") {
  Matrix m{3, {0, 2, 0, 0, 0, 3, 1, 0, 0}};
  // Cyclic: rho^3 = 6.
  const SpectralData s = perron(m);
  CHECK(s.rho == doctest::Approx(std::cbrt(6.0)).epsilon(1e-12));
  Matrix red{2, {1, 1, 0, 1}};
  CHECK_THROWS_AS(perron(red), InvalidInput);
}

TEST_CASE("free-group chain") {
  const SpectralData s = parry(adjacency(free_group_ergodic(2)));
  CHECK(s.rho == doctest::Approx(3.0).epsilon(1e-14));
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(s.stationary[i] == doctest::Approx(0.25).epsilon(1e-14));
    double row = 0.0;
    for (std::size_t j = 0; j < 4; ++j) row += s.p.at(i, j);
    CHECK(row == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(parry(adjacency(free_monoid_automaton(2))), InvalidInput);
}

TEST_CASE("cylinder measures are consistent") {
  const AdjacencyMatrix a = adjacency(fibonacci_automaton());
  const SpectralData s = parry(a);
  const std::vector<std::vector<std::size_t>> paths{{0}, {1}, {0, 1}, {0, 0, 1, 0}, {1, 0, 0}};
  for (const auto& w : paths) {
    double ext = 0.0;
    for (std::size_t x = 0; x < 2; ++x) {
      auto longer = w;
      longer.push_back(x);
      ext += cylinder_measure(s, a, longer);
    }
    CHECK(ext == doctest::Approx(cylinder_measure(s, a, w)).epsilon(1e-13));
  }
  CHECK(cylinder_measure(s, a, {1, 1}) == 0.0);
  CHECK(cylinder_measure(s, a, {0}) + cylinder_measure(s, a, {1}) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("rate function and Sanov rate") {
  const AdjacencyMatrix a = adjacency(fibonacci_automaton());
  const SpectralData s = parry(a);
  for (double p : {0.55, 0.6, 2.0 / 3, 0.8, 0.95}) {
    const Direction r({p, 1 - p});
    const double analytic = rate_function(a, psi_closed_form(ClosedForm::fibonacci, r));
    CHECK(sanov_rate(s.p, r) == doctest::Approx(analytic).epsilon(1e-9));
  }
  CHECK(rate_function(a, psi_closed_form(ClosedForm::fibonacci, Direction({0.3, 0.7}))) == INFINITY);
  CHECK(sanov_rate(s.p, Direction({0.3, 0.7})) == INFINITY);
  CHECK(std::abs(sanov_rate(s.p, Direction(s.stationary))) < 1e-12);
}

TEST_CASE("T-map identities") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (const Automaton& aut : {fibonacci_automaton(), free_group_ergodic(2), free_group_ergodic(3)}) {
    const AdjacencyMatrix a = adjacency(aut);
    for (int k = 0; k < 20; ++k) {
      std::vector<double> q(a.n);
      for (auto& x : q) x = u(rng);
      const TIdentityReport rep = verify_t_identities(a, q);
      CHECK(rep.pass());
    }
  }
  CHECK_THROWS_AS(t_map(adjacency(fibonacci_automaton()), {1.0, 0.0}), InvalidInput);
}

TEST_CASE("Monte-Carlo estimates") {
  const Automaton fa = fibonacci_automaton();
  const SpectralData s = parry(adjacency(fa));
  const auto labels = labels_of(fa);
  const Direction stat(s.stationary);

  SUBCASE("typical direction has rate near zero") {
    const LdpEstimate e = simulate_ldp(s, labels, 2, stat, 200, 4000, 0.05, 11);
    CHECK_FALSE(e.no_hits);
    CHECK(e.rate_lo <= 0.01);
    CHECK(e.rate >= 0.0);
  }
  SUBCASE("reproducible for a fixed seed") {
    const Direction r({0.62, 0.38});
    const LdpEstimate a = simulate_ldp(s, labels, 2, r, 100, 500, 0.05, 5, SamplingMode::tilted);
    const LdpEstimate b = simulate_ldp(s, labels, 2, r, 100, 500, 0.05, 5, SamplingMode::tilted);
    const LdpEstimate c = simulate_ldp(s, labels, 2, r, 100, 500, 0.05, 6, SamplingMode::tilted);
    CHECK(a.hits == b.hits);
    CHECK(a.probability == b.probability);
    CHECK(a.probability != c.probability);
  }
  SUBCASE("tilted estimate approaches the analytic rate") {
    const Direction r({0.6, 0.4});
    const double analytic = sanov_rate(s.p, r);
    const LdpEstimate e = simulate_ldp(s, labels, 2, r, 400, 4000, 0.02, 9, SamplingMode::tilted);
    CHECK(std::abs(e.rate - analytic) < 0.05);
  }
  SUBCASE("no hits is reported") {
    const LdpEstimate e = simulate_ldp(s, labels, 2, Direction({0.6, 0.4}), 200, 200, 0.01, 1);
    CHECK(e.no_hits);
    CHECK(e.rate == INFINITY);
  }
  CHECK_THROWS_AS(simulate_ldp(s, labels, 2, stat, 200, 10, 0.0, 1), InvalidInput);
}
