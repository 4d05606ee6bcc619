#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>

#include "growth/automaton.hpp"
#include "growth/catalog.hpp"
#include "growth/error.hpp"
#include "growth/series.hpp"

using namespace growth;

namespace {

using Counts = std::map<Exponent, long>;

// Counts words of length <= max_len over k letters accepted by `ok`, bucketed
// by frequency vector after merging letters through `var`.
Counts brute_force(std::size_t k, std::size_t d, std::size_t max_len, const std::function<std::size_t(std::size_t)>& var,
                   const std::function<bool(const std::vector<std::size_t>&)>& ok) {
  Counts out;
  std::vector<std::size_t> w;
  std::function<void()> rec = [&] {
    if (ok(w)) {
      Exponent e(d, 0);
      for (auto x : w) ++e[var(x)];
      ++out[e];
    }
    if (w.size() == max_len) return;
    for (std::size_t x = 0; x < k; ++x) {
      w.push_back(x);
      rec();
      w.pop_back();
    }
  };
  rec();
  return out;
}

void check_against(const CoefficientTable& t, const Counts& expect, std::size_t max_len) {
  for (const auto& [e, c] : expect) CHECK(t.exact(e) == c);
  for (const auto& [e, c] : t.exact_entries()) {
    if (total_degree(e) > max_len) continue;
    auto it = expect.find(e);
    CHECK(it != expect.end());
  }
}

bool no_bb(const std::vector<std::size_t>& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == 1 && w[i - 1] == 1) return false;
  return true;
}

bool reduced(const std::vector<std::size_t>& w, std::size_t m) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == (w[i - 1] + m) % (2 * m)) return false;
  return true;
}

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt c;
  mpz_bin_uiui(c.get_mpz_t(), n, k);
  return c;
}

}  // namespace

TEST_CASE("fibonacci series") {
  const RationalSeries s = growth_series(fibonacci_automaton());
  CHECK(s.to_string() == "(1 + z2) / (1 - z1 - z1*z2)");
}

TEST_CASE("paired free-group series after cancellation") {
  const RationalSeries raw = growth_series(free_group_unambiguous(2), VariableMap::paired(2));
  CHECK(cancel_binomial_factors(raw).to_string() == "(1 + z1 + z2 + z1*z2) / (1 - z1 - z2 - 3*z1*z2)");
}

TEST_CASE("free monoid series") {
  CHECK(growth_series(free_monoid_automaton(3)).to_string() == "(1) / (1 - z1 - z2 - z3)");
}

TEST_CASE("dynamic programming against word enumeration") {
  const std::size_t len = 9;
  SUBCASE("golden mean shift") {
    const auto expect = brute_force(2, 2, len, [](std::size_t x) { return x; }, no_bb);
    check_against(coefficients_dp(fibonacci_automaton(), VariableMap::identity(2), len, CountMode::exact), expect, len);
    const Automaton sft = build_sft_automaton({"a", "b"}, std::vector<std::string>{"bb"});
    check_against(coefficients_dp(sft, VariableMap::identity(2), len, CountMode::exact), expect, len);
  }
  SUBCASE("reduced words, rank 2, paired") {
    const auto expect = brute_force(4, 2, 7, [](std::size_t x) { return x % 2; },
                                    [](const auto& w) { return reduced(w, 2); });
    check_against(coefficients_dp(free_group_unambiguous(2), VariableMap::paired(2), 7, CountMode::exact), expect, 7);
  }
  SUBCASE("reduced words, rank 2, all four letters") {
    const auto expect = brute_force(4, 4, 6, [](std::size_t x) { return x; },
                                    [](const auto& w) { return reduced(w, 2); });
    check_against(coefficients_dp(free_group_unambiguous(2), VariableMap::identity(4), 6, CountMode::exact), expect, 6);
  }
}

TEST_CASE("recurrence equals dynamic programming to degree 25") {
  struct Case {
    Automaton a;
    VariableMap vars;
  };
  const std::vector<Case> cases{{fibonacci_automaton(), VariableMap::identity(2)},
                                {free_monoid_automaton(2), VariableMap::identity(2)},
                                {free_group_unambiguous(2), VariableMap::paired(2)},
                                {free_group_unambiguous(3), VariableMap::paired(3)}};
  for (const auto& c : cases) {
    const auto rec = series_coefficients(growth_series(c.a, c.vars), 25);
    const auto dp = coefficients_dp(c.a, c.vars, 25, CountMode::exact);
    CHECK(rec.exact_entries() == dp.exact_entries());
  }
  const auto delta = series_coefficients(delta_free_group(2), 25);
  const auto dp = coefficients_dp(free_group_unambiguous(2), VariableMap::paired(2), 25, CountMode::exact);
  CHECK(delta.exact_entries() == dp.exact_entries());
}

TEST_CASE("fibonacci coefficients are binomial") {
  const auto t = coefficients_dp(fibonacci_automaton(), VariableMap::identity(2), 30, CountMode::exact);
  for (std::uint32_t i = 0; i <= 30; ++i)
    for (std::uint32_t j = 0; i + j <= 30; ++j) CHECK(t.exact({i, j}) == binomial(i + 1, j));
}

TEST_CASE("shell sums") {
  const auto fib = coefficients_dp(fibonacci_automaton(), VariableMap::identity(2), 40, CountMode::exact);
  BigInt f0 = 1, f1 = 2;  // F_2, F_3
  for (std::size_t n = 0; n <= 40; ++n) {
    BigInt s = 0;
    for (const auto& e : layer_exponents(2, n)) s += fib.exact(e);
    CHECK(s == f0);
    const BigInt next = f0 + f1;
    f0 = f1;
    f1 = next;
  }
  const auto f2 = coefficients_dp(free_group_unambiguous(2), VariableMap::paired(2), 30, CountMode::exact);
  BigInt pow3 = 1;
  for (std::size_t n = 1; n <= 30; ++n) {
    BigInt s = 0;
    for (const auto& e : layer_exponents(2, n)) s += f2.exact(e);
    CHECK(s == 4 * pow3);
    pow3 *= 3;
  }
}

TEST_CASE("log domain agrees with exact counts") {
  const auto ex = coefficients_dp(free_group_unambiguous(2), VariableMap::paired(2), 80, CountMode::exact);
  const auto lg = coefficients_dp(free_group_unambiguous(2), VariableMap::paired(2), 80, CountMode::log_domain);
  CHECK(ex.size() == lg.size());
  double worst = 0.0;
  for (const auto& [e, c] : ex.exact_entries()) {
    long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, c.get_mpz_t());
    const double truth = std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
    worst = std::max(worst, std::abs(lg.log_count(e) - truth) / std::max(1.0, truth));
  }
  CHECK(worst < 1e-10);
  CHECK(lg.log_count({81, 0}) == -INFINITY);
}

TEST_CASE("layer exponents") {
  CHECK(layer_exponents(3, 4).size() == 15);
  CHECK(layer_exponents(2, 2) == std::vector<Exponent>{{2, 0}, {1, 1}, {0, 2}});
}

TEST_CASE("csv export") {
  const auto t = coefficients_dp(fibonacci_automaton(), VariableMap::identity(2), 1, CountMode::exact);
  CHECK(t.to_csv() == "i1,i2,count\n0,0,1\n1,0,1\n0,1,1\n");
  const auto l = coefficients_dp(free_monoid_automaton(1), VariableMap::identity(1), 1, CountMode::log_domain);
  CHECK(l.to_csv() == "i1,logcount\n0,0\n1,0\n");
}

TEST_CASE("size bounds") {
  CHECK_THROWS_AS(coefficients_dp(free_monoid_automaton(3), VariableMap::identity(3), 100, CountMode::exact, 1000),
                  SizeBoundExceeded);
  CHECK_THROWS_AS(growth_series(free_group_unambiguous(6), VariableMap::paired(6)), SizeBoundExceeded);
}

TEST_CASE("recurrence rejects series that are not counting series") {
  const std::size_t d = 1;
  RationalSeries half{MultiPoly::constant(d, 1), MultiPoly::constant(d, 2) - MultiPoly::variable(d, 0)};
  CHECK_THROWS_AS(series_coefficients(half, 3), InvalidInput);
  RationalSeries neg{MultiPoly::constant(d, 1), MultiPoly::constant(d, 1) + MultiPoly::variable(d, 0)};
  CHECK_THROWS_AS(series_coefficients(neg, 3), InvalidInput);
}

TEST_CASE("concave growth condition") {
  const auto mono = coefficients_dp(free_monoid_automaton(2), VariableMap::identity(2), 16, CountMode::exact);
  const CGReport m = check_cg(mono, 0, 0, 8);
  CHECK(m.pass);
  CHECK(m.ratio_num == 1);
  CHECK(m.ratio_den == 1);
  CHECK(m.c == 1.0);

  const auto fib = coefficients_dp(fibonacci_automaton(), VariableMap::identity(2), 20, CountMode::exact);
  // Brute force: (0,1) + (0,2) leaves the support, so radii 1 and 1 give ratio 0.
  const CGReport tight = check_cg(fib, 1, 1, 8);
  CHECK_FALSE(tight.pass);
  CHECK(tight.ratio_num == 0);
  const CGReport f = check_cg(fib, 3, 1, 8);
  CHECK(f.pass);
  CHECK(f.ratio_num == 1);
  CHECK(f.ratio_den == 1);
  CHECK(check_cg(fib, 4, 1, 8).c == doctest::Approx(123.0 / 64));
  CHECK_FALSE(check_cg(fib, 0, 0, 8).pass);
  CHECK_THROWS_AS(check_cg(fib, 3, 1, 9), InvalidInput);

  CoefficientTable only_origin(2, CountMode::exact, 4);
  only_origin.set_exact({0, 0}, 1);
  const CGReport o = check_cg(only_origin, 0, 0, 2);
  CHECK(o.pass);
  CHECK(o.pairs == 1);
}
