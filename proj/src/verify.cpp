#include "growth/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "growth/asymptotics.hpp"
#include "growth/catalog.hpp"
#include "growth/error.hpp"
#include "growth/format.hpp"
#include "growth/language.hpp"
#include "growth/spectral.hpp"

namespace growth {

namespace {

using Checks = std::vector<SuiteCheck>;

void add(Checks& out, const std::string& suite, const std::string& name, bool pass, const std::string& detail = {}) {
  out.push_back({suite, name, pass, detail});
}

std::string num(double v) { return format_double(v); }

void identities(Checks& out) {
  const std::string s = "identities";
  for (int m = 2; m <= 4; ++m) {
    const FmIdentityReport rep = verify_fm_identities(m);
    for (const auto& c : rep.checks) add(out, s, "m=" + std::to_string(m) + ": " + c.name, c.pass);
  }

  const Language fib = make_language({"fibonacci"});
  add(out, s, "fibonacci series", fib.series.to_string() == "(1 + z2) / (1 - z1 - z1*z2)",
      fib.series.to_string());
  const Language f2 = make_language({"free_group_unambiguous", 2, 2, true});
  add(out, s, "paired rank-2 free group series", f2.series == delta_free_group(2), f2.series.to_string());

  const std::vector<LanguageSpec> specs{{"fibonacci"},
                                        {"free_monoid", 2, 2},
                                        {"free_monoid", 2, 3},
                                        {"free_group_unambiguous", 2, 2, true},
                                        {"free_group_unambiguous", 3, 2, true},
                                        {"free_group_ergodic", 2, 2, false}};
  for (const auto& spec : specs) {
    const Language lang = make_language(spec);
    const auto rec = series_coefficients(growth_series(*lang.counting, lang.count_vars), 15);
    const auto dp = coefficients_dp(*lang.counting, lang.count_vars, 15, CountMode::exact);
    add(out, s, "recurrence = dynamic programming: " + lang.name +
                 (spec.name == "free_monoid"  ? " d=" + std::to_string(spec.d)
                  : spec.name == "fibonacci" ? std::string()
                                             : " m=" + std::to_string(spec.m)),
        rec.exact_entries() == dp.exact_entries());
  }

  const auto table = coefficients_dp(fibonacci_automaton(), VariableMap::identity(2), 20, CountMode::exact);
  bool binom = true;
  for (std::uint32_t i = 0; i <= 20; ++i) {
    for (std::uint32_t j = 0; i + j <= 20; ++j) {
      BigInt c;
      mpz_bin_uiui(c.get_mpz_t(), i + 1, j);
      binom = binom && table.exact({i, j}) == c;
    }
  }
  add(out, s, "fibonacci coefficients are C(i+1, j)", binom);
}

void agreement(Checks& out, double tol) {
  const std::string s = "agreement";
  for (const std::string name : {"fibonacci", "f2_delta"}) {
    const Language lang = make_language({name});
    std::optional<CoefficientTable> cache;
    double worst = 0.0, worst_emp = 0.0;
    for (double p : agreement_grid(name)) {
      const Direction r({p, 1 - p});
      const double b = psi_by_method(lang, PsiMethod::boundary, r).as_double();
      const double t = psi_by_method(lang, PsiMethod::tmap, r).as_double();
      const double c = psi_by_method(lang, PsiMethod::closed_form, r).as_double();
      const double e = psi_by_method(lang, PsiMethod::empirical, r, &cache, 60).as_double();
      const double spread = std::max({std::abs(b - t), std::abs(b - c), std::abs(t - c)});
      worst = std::isfinite(spread) ? std::max(worst, spread) : INFINITY;
      worst_emp = std::isfinite(e - c) ? std::max(worst_emp, std::abs(e - c)) : INFINITY;
    }
    add(out, s, name + ": boundary, tmap, closed form agree", worst <= tol, "max spread " + num(worst));
    add(out, s, name + ": empirical within 0.1", worst_emp <= 0.1, "max gap " + num(worst_emp));
  }
  const Language fib = make_language({"fibonacci"});
  bool all_inf = true;
  for (double p : {0.1, 0.3, 0.45, 0.49}) {
    const Direction r({p, 1 - p});
    all_inf = all_inf && !psi_by_method(fib, PsiMethod::boundary, r).is_finite() &&
              !psi_by_method(fib, PsiMethod::tmap, r).is_finite() &&
              !psi_by_method(fib, PsiMethod::closed_form, r).is_finite();
  }
  add(out, s, "fibonacci: psi = -inf below p = 1/2 by every exact route", all_inf);

  const Language f3 = make_language({"fm_delta", 3});
  double worst3 = 0.0;
  for (const auto& v : std::vector<std::vector<double>>{{1.0 / 3, 1.0 / 3, 1.0 / 3}, {0.5, 0.3, 0.2}, {0.2, 0.2, 0.6}}) {
    const Direction r(v);
    const double b = psi_by_method(f3, PsiMethod::boundary, r).as_double();
    const double c = psi_by_method(f3, PsiMethod::closed_form, r).as_double();
    const double t = psi_by_method(f3, PsiMethod::tmap, r).as_double();
    worst3 = std::max({worst3, std::abs(b - c), std::abs(b - t)});
  }
  add(out, s, "rank 3: quartic, boundary, tmap agree", worst3 <= tol, "max spread " + num(worst3));
}

std::vector<double> state_direction(const Automaton& a, const Direction& r) {
  std::vector<double> out(a.num_states());
  for (std::size_t i = 0; i < a.num_states(); ++i) out[i] = r[*a.state_labels()[i]];
  return out;
}

void spectral(Checks& out, double tol, std::uint64_t seed) {
  const std::string s = "spectral";
  const Automaton fa = fibonacci_automaton();
  const SpectralData fs = parry(adjacency(fa));
  const double phi = (1 + std::sqrt(5.0)) / 2;
  add(out, s, "fibonacci Perron root", std::abs(fs.rho - phi) <= 1e-10, num(fs.rho));

  struct Case {
    std::string name;
    Language lang;
  };
  std::vector<Case> cases{{"fibonacci", make_language({"fibonacci"})}, {"f2_delta", make_language({"f2_delta"})}};
  for (const auto& c : cases) {
    const Automaton& a = *c.lang.tmap;
    const SpectralData sd = parry(adjacency(a));
    double worst = 0.0;
    for (double p : agreement_grid(c.name)) {
      const Direction r({p, 1 - p});
      const double psi = psi_by_method(c.lang, PsiMethod::boundary, r).as_double();
      const double analytic = std::log(sd.rho) - psi;
      const Direction lifted = lift_direction(c.lang, r);
      const double sanov = sanov_rate(sd.p, Direction(state_direction(a, lifted)));
      worst = std::max(worst, std::abs(analytic - sanov));
    }
    add(out, s, c.name + ": log rho - psi = Sanov rate", worst <= tol, "max gap " + num(worst));

    std::vector<double> stat(a.num_symbols(), 0.0);
    for (std::size_t i = 0; i < a.num_states(); ++i) stat[*a.state_labels()[i]] += sd.stationary[i];
    const double at_stat = sanov_rate(sd.p, Direction(state_direction(a, Direction::normalized(stat))));
    add(out, s, c.name + ": rate vanishes at the Parry frequencies", std::abs(at_stat) < 1e-8, num(at_stat));
  }

  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  const std::vector<std::pair<std::string, Automaton>> autos{
      {"fibonacci", fibonacci_automaton()},
      {"free_group_ergodic m=2", free_group_ergodic(2)},
      {"free_group_ergodic m=3", free_group_ergodic(3)},
      {"free_monoid d=3", *make_language({"free_monoid", 2, 3}).tmap}};
  for (const auto& [name, a] : autos) {
    const AdjacencyMatrix adj = adjacency(a);
    int passed = 0;
    for (int k = 0; k < 100; ++k) {
      std::vector<double> q(adj.n);
      for (auto& x : q) x = expo(rng);
      passed += verify_t_identities(adj, q).pass() ? 1 : 0;
    }
    add(out, s, name + ": T-map identities on 100 random q", passed == 100, std::to_string(passed) + "/100");
  }
}

void asymptotics(Checks& out) {
  const std::string s = "asymptotics";
  struct Case {
    std::string label;
    LanguageSpec spec;
    std::vector<double> r;
    double psi;
  };
  const std::vector<Case> cases{
      {"f2 at (1/2, 1/2)", {"free_group_unambiguous", 2, 2, true}, {0.5, 0.5}, std::log(3.0)},
      {"fibonacci at (2/3, 1/3)", {"fibonacci"}, {2.0 / 3, 1.0 / 3}, 2.0 / 3 * std::log(2.0)},
      {"free monoid at (1/2, 1/2)", {"free_monoid", 2, 2}, {0.5, 0.5}, std::log(2.0)}};
  for (const auto& c : cases) {
    const Language lang = make_language(c.spec);
    const auto table = coefficients_dp(*lang.counting, lang.count_vars, 402, CountMode::log_domain);
    const FitReport fit = fit_correction(table, Direction(c.r), c.psi, 100, 402);
    add(out, s, "slope -1/2: " + c.label, std::abs(fit.slope + 0.5) <= 0.05, "slope " + num(fit.slope));
  }
  const double h0 = hessian_scalar_f2(1.0 / 3, 1.0 / 3);
  add(out, s, "f2 Hessian scalar at (1/3, 1/3) = 1", std::abs(h0 - 1) <= 1e-12, num(h0));
  bool positive = true;
  for (int k = 1; k < 100; ++k) {
    const CriticalPoint cp = f2_critical_closed(k / 100.0);
    positive = positive && hessian_scalar_f2(cp.z_star[0], cp.z_star[1]) > 0;
  }
  add(out, s, "f2 Hessian scalar positive on the p-grid", positive);
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"identities", "agreement", "spectral", "asymptotics", "all"};
  return names;
}

std::vector<double> agreement_grid(const std::string& language) {
  std::vector<double> out;
  for (int k = 1; k <= 21; ++k) out.push_back(language == "fibonacci" ? 0.5 + k / 44.0 : k / 22.0);
  return out;
}

std::vector<SuiteCheck> run_suite(const std::string& suite, const VerifyOptions& opt) {
  Checks out;
  const bool all = suite == "all";
  bool known = all;
  if (all || suite == "identities") {
    identities(out);
    known = true;
  }
  if (all || suite == "agreement") {
    agreement(out, opt.tol);
    known = true;
  }
  if (all || suite == "spectral") {
    spectral(out, opt.tol, opt.seed);
    known = true;
  }
  if (all || suite == "asymptotics") {
    asymptotics(out);
    known = true;
  }
  if (!known) throw InvalidInput("unknown suite '" + suite + "'");
  return out;
}

nlohmann::ordered_json suite_report(const std::vector<SuiteCheck>& checks) {
  nlohmann::ordered_json j;
  std::size_t failed = 0;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json e;
    e["suite"] = c.suite;
    e["name"] = c.name;
    e["pass"] = c.pass;
    if (!c.detail.empty()) e["detail"] = c.detail;
    j["checks"].push_back(std::move(e));
    failed += c.pass ? 0 : 1;
  }
  j["total"] = checks.size();
  j["failed"] = failed;
  j["pass"] = failed == 0;
  return j;
}

}  // namespace growth
