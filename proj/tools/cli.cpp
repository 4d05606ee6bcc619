#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "growth/asymptotics.hpp"
#include "growth/catalog.hpp"
#include "growth/error.hpp"
#include "growth/format.hpp"
#include "growth/language.hpp"
#include "growth/spectral.hpp"
#include "growth/verify.hpp"

namespace growth::cli {

namespace {

using nlohmann::ordered_json;

struct RunConfig {
  std::string language;
  std::string automaton;
  int m = 2;
  int d = 2;
  bool paired = false;
  std::string method = "all";
  int grid = 101;
  std::string r;
  std::size_t max_total = 0;
  std::string mode = "exact";
  std::string source = "dp";
  std::uint64_t seed = 1;
  std::string out = "-";
  std::string suite = "all";
  double tol = 1e-6;
  int n = 200;
  int trials = 10000;
  double window = 0.05;
  std::string sampling = "tilted";
  std::size_t n_min = 100;
  bool normal = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Language load_language(const RunConfig& c) {
  if (c.language.empty() == c.automaton.empty()) {
    throw InvalidInput("give exactly one of --language and --automaton");
  }
  if (!c.automaton.empty()) return language_from_automaton(load_automaton(read_file(c.automaton)), c.automaton);
  return make_language({c.language, c.m, c.d, c.paired});
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InvalidInput("--r: cannot parse '" + item + "'");
    }
    if (used != item.size()) throw InvalidInput("--r: cannot parse '" + item + "'");
    out.push_back(v);
  }
  return out;
}

// "p,q" with d = 3 leaves the last coordinate implicit.
Direction parse_direction(const std::string& text, std::size_t dim) {
  std::vector<double> v = parse_list(text);
  if (v.size() + 1 == dim) {
    double s = 0.0;
    for (double x : v) s += x;
    v.push_back(1.0 - s);
  }
  if (v.size() != dim) throw InvalidInput("--r needs " + std::to_string(dim) + " coordinates");
  for (double x : v)
    if (x < -1e-12) throw InvalidInput("--r coordinates must be non-negative");
  for (double& x : v) x = std::max(0.0, x);
  return Direction::normalized(v);
}

class Output {
 public:
  Output(const std::string& path, std::ostream& out) : out_(out) {
    if (path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw InvalidInput("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : out_; }

 private:
  std::ostream& out_;
  std::ofstream file_;
};

std::vector<PsiMethod> parse_methods(const std::string& name, const Language& lang) {
  if (name == "all") {
    std::vector<PsiMethod> out;
    for (auto m : {PsiMethod::boundary, PsiMethod::tmap, PsiMethod::closed_form, PsiMethod::empirical})
      if (method_applicable(lang, m)) out.push_back(m);
    return out;
  }
  for (auto m : {PsiMethod::boundary, PsiMethod::tmap, PsiMethod::closed_form, PsiMethod::empirical}) {
    if (name == method_name(m)) {
      if (!method_applicable(lang, m)) throw Inapplicable(std::string(method_name(m)) + " does not apply to " + lang.name);
      return {m};
    }
  }
  throw InvalidInput("unknown method '" + name + "'");
}

std::vector<Direction> direction_grid(std::size_t dim, int grid) {
  if (grid < 2) throw InvalidInput("--grid must be at least 2");
  const double step = 1.0 / (grid - 1);
  std::vector<Direction> out;
  if (dim == 2) {
    for (int k = 0; k < grid; ++k) {
      const double p = k == grid - 1 ? 1.0 : k * step;
      out.emplace_back(std::vector<double>{p, 1.0 - p});
    }
  } else if (dim == 3) {
    for (int i = 0; i < grid; ++i) {
      for (int j = 0; i + j < grid; ++j) {
        const double p = i * step, q = j * step;
        out.emplace_back(std::vector<double>{p, q, std::max(0.0, 1.0 - p - q)});
      }
    }
  } else {
    throw InvalidInput("grids need d = 2 or 3; use --r for other dimensions");
  }
  return out;
}

std::size_t table_size(const RunConfig& c, std::size_t fallback) { return c.max_total ? c.max_total : fallback; }

// Best available exact route for psi.
ExtendedValue exact_psi(const Language& lang, const Direction& r) {
  for (auto m : {PsiMethod::closed_form, PsiMethod::boundary, PsiMethod::tmap})
    if (method_applicable(lang, m)) return psi_by_method(lang, m, r);
  throw Inapplicable("no exact route for psi on " + lang.name);
}

int cmd_series(const RunConfig& c, bool out_given, std::ostream& out) {
  const Language lang = load_language(c);
  if (!out_given) {
    out << lang.series.to_string(lang.var_names) << "\n";
    return kOk;
  }
  ordered_json doc;
  doc["language"] = lang.name;
  doc["variables"] = lang.var_names;
  doc["numerator"] = poly_to_json(lang.series.numerator);
  doc["denominator"] = poly_to_json(lang.series.denominator);
  doc["normal_form"] = lang.series.to_string(lang.var_names);
  Output o(c.out, out);
  o.stream() << doc.dump(2) << "\n";
  return kOk;
}

int cmd_coefficients(const RunConfig& c, std::ostream& out) {
  const Language lang = load_language(c);
  CountMode mode;
  if (c.mode == "exact") {
    mode = CountMode::exact;
  } else if (c.mode == "log") {
    mode = CountMode::log_domain;
  } else {
    throw InvalidInput("--mode must be exact or log");
  }
  const std::size_t n = table_size(c, 20);
  CoefficientTable t = [&] {
    if (c.source == "dp") return coefficients_dp(*lang.counting, lang.count_vars, n, mode);
    if (c.source == "recurrence") {
      if (mode != CountMode::exact) throw InvalidInput("the recurrence is exact only");
      return series_coefficients(lang.series, n);
    }
    throw InvalidInput("--source must be dp or recurrence");
  }();
  Output o(c.out, out);
  o.stream() << t.to_csv();
  return kOk;
}

int cmd_psi(const RunConfig& c, std::ostream& out) {
  const Language lang = load_language(c);
  const auto methods = parse_methods(c.method, lang);
  std::vector<Direction> dirs;
  if (!c.r.empty()) {
    dirs.push_back(parse_direction(c.r, lang.dim));
  } else {
    dirs = direction_grid(lang.dim, c.grid);
  }
  std::optional<CoefficientTable> cache;
  const std::size_t n = table_size(c, 60);
  std::ostringstream body;
  body << (lang.dim == 3 ? "p,q,psi,method\n" : lang.dim == 2 ? "p,psi,method\n" : "r,psi,method\n");
  for (const auto& r : dirs) {
    for (auto m : methods) {
      ExtendedValue v;
      try {
        v = psi_by_method(lang, m, r, &cache, n);
      } catch (const InvalidInput&) {
        // Faces of the simplex the route does not cover.
        if (r.interior()) throw;
        continue;
      }
      if (lang.dim == 2) {
        body << format_double(r[0]);
      } else if (lang.dim == 3) {
        body << format_double(r[0]) << "," << format_double(r[1]);
      } else {
        body << "\"";
        for (std::size_t k = 0; k < r.dim(); ++k) body << (k ? "," : "") << format_double(r[k]);
        body << "\"";
      }
      body << "," << format_double(v.as_double()) << "," << method_name(m) << "\n";
    }
  }
  Output o(c.out, out);
  o.stream() << body.str();
  return kOk;
}

std::vector<double> state_order(const Automaton& a, const Direction& lifted) {
  std::vector<double> out(a.num_states());
  for (std::size_t i = 0; i < a.num_states(); ++i) out[i] = lifted[*a.state_labels()[i]];
  return out;
}

int cmd_rate(const RunConfig& c, std::ostream& out) {
  const Language lang = load_language(c);
  if (!method_applicable(lang, PsiMethod::tmap)) throw Inapplicable("rate needs an ergodic vertex-labelled automaton");
  if (lang.dim != 2 && c.r.empty()) throw InvalidInput("rate grids need d = 2; use --r");
  const Automaton& a = *lang.tmap;
  const SpectralData sd = parry(adjacency(a));
  std::vector<Direction> dirs = c.r.empty() ? direction_grid(2, c.grid) : std::vector<Direction>{parse_direction(c.r, lang.dim)};
  std::ostringstream body;
  body << (lang.dim == 2 ? "p" : "r") << ",I_analytic,I_sanov\n";
  for (const auto& r : dirs) {
    const double analytic = rate_function(sd.rho, exact_psi(lang, r));
    const double sanov = sanov_rate(sd.p, Direction(state_order(a, lift_direction(lang, r))));
    if (lang.dim == 2) {
      body << format_double(r[0]);
    } else {
      body << "\"";
      for (std::size_t k = 0; k < r.dim(); ++k) body << (k ? "," : "") << format_double(r[k]);
      body << "\"";
    }
    body << "," << format_double(analytic) << "," << format_double(sanov) << "\n";
  }
  Output o(c.out, out);
  o.stream() << body.str();
  return kOk;
}

int cmd_critical(const RunConfig& c, std::ostream& out) {
  const Language lang = load_language(c);
  if (c.r.empty()) throw InvalidInput("critical needs --r");
  const Direction r = parse_direction(c.r, lang.dim);
  const auto pts = critical_points(lang.series.denominator, r);
  std::ostringstream body;
  for (std::size_t k = 0; k < lang.dim; ++k) body << lang.var_names[k] << ",";
  body << "lambda,height,minimal\n";
  for (const auto& cp : pts) {
    for (double z : cp.z_star) body << format_double(z) << ",";
    body << format_double(cp.lambda) << "," << format_double(cp.height) << "," << (cp.minimal ? "true" : "false")
         << "\n";
  }
  Output o(c.out, out);
  o.stream() << body.str();
  return kOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  VerifyOptions opt;
  opt.tol = c.tol;
  opt.seed = c.seed;
  const auto checks = run_suite(c.suite, opt);
  const ordered_json rep = suite_report(checks);
  Output o(c.out, out);
  o.stream() << rep.dump(2) << "\n";
  return rep["pass"].get<bool>() ? kOk : kCheckFailed;
}

int cmd_simulate(const RunConfig& c, std::ostream& out) {
  const Language lang = load_language(c);
  if (!method_applicable(lang, PsiMethod::tmap)) throw Inapplicable("simulate needs an ergodic vertex-labelled automaton");
  if (c.r.empty()) throw InvalidInput("simulate needs --r");
  const Direction r = parse_direction(c.r, lang.dim);
  SamplingMode mode;
  if (c.sampling == "direct") {
    mode = SamplingMode::direct;
  } else if (c.sampling == "tilted") {
    mode = SamplingMode::tilted;
  } else {
    throw InvalidInput("--sampling must be direct or tilted");
  }
  const Automaton& a = *lang.tmap;
  const SpectralData sd = parry(adjacency(a));
  std::vector<std::size_t> labels(a.num_states());
  for (std::size_t i = 0; i < a.num_states(); ++i) labels[i] = *a.state_labels()[i];
  const Direction lifted = lift_direction(lang, r);
  const LdpEstimate est = simulate_ldp(sd, labels, a.num_symbols(), lifted, c.n, c.trials, c.window, c.seed, mode);
  const double analytic = rate_function(sd.rho, exact_psi(lang, r));

  ordered_json doc;
  doc["language"] = lang.name;
  doc["r"] = r.values();
  doc["sampling"] = c.sampling;
  doc["seed"] = est.seed;
  doc["n"] = est.n;
  doc["trials"] = est.trials;
  doc["window"] = est.window;
  doc["hits"] = est.hits;
  doc["no_hits"] = est.no_hits;
  doc["probability"] = est.probability;
  doc["rate"] = format_double(est.rate);
  doc["rate_lo"] = format_double(est.rate_lo);
  doc["rate_hi"] = format_double(est.rate_hi);
  doc["rate_analytic"] = format_double(analytic);
  Output o(c.out, out);
  o.stream() << doc.dump(2) << "\n";
  return kOk;
}

int cmd_amoeba(const RunConfig& c, std::ostream& out) {
  const Language lang = load_language(c);
  if (lang.dim != 2) throw InvalidInput("amoeba slices need d = 2");
  if (c.grid < 2) throw InvalidInput("--grid must be at least 2");
  std::ostringstream body;
  body << "s,t\n";
  for (const auto& [s, t] : amoeba_slice(lang.series.denominator, c.grid))
    body << format_double(s) << "," << format_double(t) << "\n";
  Output o(c.out, out);
  o.stream() << body.str();
  return kOk;
}

int cmd_chi(const RunConfig& c, std::ostream& out) {
  if (c.grid < 2) throw InvalidInput("--grid must be at least 2");
  const double top = 2.0 * c.m - 1;
  const double lo = c.normal ? std::sqrt(top) : 1.0;
  std::ostringstream body;
  body << "alpha,chi\n";
  for (int k = 0; k < c.grid; ++k) {
    if (c.normal && k == 0) continue;
    const double alpha = k == c.grid - 1 ? top : lo + (top - lo) * k / (c.grid - 1);
    body << format_double(alpha) << "," << format_double(chi_of_alpha(alpha, c.m, c.normal)) << "\n";
  }
  Output o(c.out, out);
  o.stream() << body.str();
  return kOk;
}

int cmd_fit(const RunConfig& c, std::ostream& out) {
  const Language lang = load_language(c);
  if (c.r.empty()) throw InvalidInput("fit needs --r");
  const Direction r = parse_direction(c.r, lang.dim);
  const ExtendedValue psi = exact_psi(lang, r);
  if (!psi.is_finite()) throw Inapplicable("psi is -inf in this direction");
  const std::size_t n = table_size(c, 400);
  const auto table = coefficients_dp(*lang.counting, lang.count_vars, n, CountMode::log_domain);
  const FitReport fit = fit_correction(table, r, psi.value, c.n_min, n);
  ordered_json doc;
  doc["language"] = lang.name;
  doc["r"] = r.values();
  doc["psi"] = psi.value;
  doc["slope"] = fit.slope;
  doc["intercept"] = fit.intercept;
  doc["residual"] = fit.residual;
  doc["points"] = fit.points;
  doc["n_min"] = fit.n_min;
  doc["n_max"] = fit.n_max;
  Output o(c.out, out);
  o.stream() << doc.dump(2) << "\n";
  return kOk;
}

void language_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--language", c.language, "Catalog language");
  sub->add_option("--automaton", c.automaton, "Automaton JSON file");
  sub->add_option("--m", c.m, "Free-group rank");
  sub->add_option("--d", c.d, "Free-monoid alphabet size");
  sub->add_flag("--paired", c.paired, "One variable per generator pair");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multivariate growth series and indicatrices of regular languages", "growth"};
  app.require_subcommand(1);
  RunConfig c;

  auto* series = app.add_subcommand("series", "Rational growth series G/H");
  language_options(series, c);
  auto* out_opt = series->add_option("--out", c.out, "JSON document path, - for stdout");

  auto* coeffs = app.add_subcommand("coefficients", "Coefficient table as CSV");
  language_options(coeffs, c);
  coeffs->add_option("--max-total", c.max_total, "Largest total degree");
  coeffs->add_option("--mode", c.mode, "exact or log");
  coeffs->add_option("--source", c.source, "dp or recurrence");
  coeffs->add_option("--out", c.out);

  auto* psi = app.add_subcommand("psi", "Indicatrice curve");
  language_options(psi, c);
  psi->add_option("--method", c.method, "boundary, tmap, empirical, closed_form or all");
  psi->add_option("--grid", c.grid, "Grid points per axis");
  psi->add_option("--r", c.r, "Single direction p,q[,s]");
  psi->add_option("--max-total", c.max_total, "Table size for the empirical route");
  psi->add_option("--out", c.out);

  auto* rate = app.add_subcommand("rate", "Rate function, analytic and Sanov");
  language_options(rate, c);
  rate->add_option("--grid", c.grid);
  rate->add_option("--r", c.r);
  rate->add_option("--out", c.out);

  auto* critical = app.add_subcommand("critical", "Critical points of H in direction r");
  language_options(critical, c);
  critical->add_option("--r", c.r);
  critical->add_option("--out", c.out);

  auto* verify = app.add_subcommand("verify", "Invariant suites");
  verify->add_option("--suite", c.suite, "identities, agreement, spectral, asymptotics or all");
  verify->add_option("--tol", c.tol, "Agreement tolerance");
  verify->add_option("--seed", c.seed);
  verify->add_option("--out", c.out);

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo rate estimate under the Parry chain");
  language_options(simulate, c);
  simulate->add_option("--r", c.r);
  simulate->add_option("--n", c.n, "Path length");
  simulate->add_option("--trials", c.trials);
  simulate->add_option("--window", c.window, "l1 radius of the frequency window");
  simulate->add_option("--sampling", c.sampling, "direct or tilted");
  simulate->add_option("--seed", c.seed);
  simulate->add_option("--out", c.out);

  auto* amoeba = app.add_subcommand("amoeba", "Relog slice of H = 0");
  language_options(amoeba, c);
  amoeba->add_option("--grid", c.grid);
  amoeba->add_option("--out", c.out);

  auto* chi = app.add_subcommand("chi", "Spectral radius against cogrowth");
  chi->add_option("--m", c.m);
  chi->add_option("--grid", c.grid);
  chi->add_flag("--normal", c.normal, "Normal-subgroup branch only");
  chi->add_option("--out", c.out);

  auto* fit = app.add_subcommand("fit", "Polynomial correction exponent");
  language_options(fit, c);
  fit->add_option("--r", c.r);
  fit->add_option("--max-total", c.max_total);
  fit->add_option("--n-min", c.n_min);
  fit->add_option("--out", c.out);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (*series) return cmd_series(c, out_opt->count() > 0, out);
    if (*coeffs) return cmd_coefficients(c, out);
    if (*psi) return cmd_psi(c, out);
    if (*rate) return cmd_rate(c, out);
    if (*critical) return cmd_critical(c, out);
    if (*verify) return cmd_verify(c, out);
    if (*simulate) return cmd_simulate(c, out);
    if (*amoeba) return cmd_amoeba(c, out);
    if (*chi) return cmd_chi(c, out);
    if (*fit) return cmd_fit(c, out);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const SizeBoundExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kSizeBound;
  } catch (const Inapplicable& e) {
    err << "error: " << e.what() << "\n";
    return kInapplicable;
  } catch (const ConvergenceFailure& e) {
    err << "error: " << e.what() << "\n";
    return kNoConvergence;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace growth::cli
