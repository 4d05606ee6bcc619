#include "growth/indicatrice.hpp"
#include "growth/format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "growth/error.hpp"
#include "growth/newton.hpp"

namespace growth {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_sum_exp(const std::vector<double>& v) {
  double hi = -kInf;
  for (double x : v) hi = std::max(hi, x);
  if (hi == -kInf) return -kInf;
  double s = 0.0;
  for (double x : v) s += std::exp(x - hi);
  return hi + std::log(s);
}

}  // namespace

Direction::Direction(std::vector<double> r) : r_(std::move(r)) {
  if (r_.empty()) throw InvalidInput("direction must have at least one entry");
  double sum = 0.0;
  for (double v : r_) {
    if (!std::isfinite(v) || v < 0) throw InvalidInput("direction entries must be finite and non-negative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw InvalidInput("direction entries must sum to 1");
}

Direction Direction::normalized(std::vector<double> w) {
  double sum = 0.0;
  for (double v : w) {
    if (!std::isfinite(v) || v < 0) throw InvalidInput("direction entries must be finite and non-negative");
    sum += v;
  }
  if (!(sum > 0)) throw InvalidInput("direction must have positive mass");
  for (double& v : w) v /= sum;
  double fix = 1.0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) fix -= w[i];
  w.back() = std::max(0.0, fix);
  return Direction(std::move(w));
}

bool Direction::interior() const {
  return std::all_of(r_.begin(), r_.end(), [](double v) { return v > 0; });
}

const char* method_name(PsiMethod m) {
  switch (m) {
    case PsiMethod::boundary: return "boundary";
    case PsiMethod::tmap: return "tmap";
    case PsiMethod::empirical: return "empirical";
    case PsiMethod::closed_form: return "closed_form";
  }
  return "unknown";
}

ExtendedValue ExtendedValue::finite(double v, PsiMethod m, std::optional<std::vector<double>> theta) {
  ExtendedValue e;
  e.value = v;
  e.method = m;
  e.minimizer = std::move(theta);
  return e;
}

ExtendedValue ExtendedValue::minus_infinity(PsiMethod m) {
  ExtendedValue e;
  e.value = -kInf;
  e.neg_infinity = true;
  e.method = m;
  return e;
}

double ExtendedValue::as_double() const { return neg_infinity ? -kInf : value; }

double shannon_entropy(const std::vector<double>& r) {
  double h = 0.0;
  for (double v : r)
    if (v > 0) h -= v * std::log(v);
  return h;
}

namespace {

// P = sum_alpha c_alpha z^alpha restricted to the active variables.
struct Posynomial {
  std::vector<std::vector<double>> alpha;
  std::vector<double> log_c;
  std::vector<double> degree;
};

// Root t of log sum c exp(-<alpha,theta> - |alpha| t) = 0.
double solve_shift(const Posynomial& p, const Eigen::VectorXd& theta) {
  const std::size_t m = p.alpha.size();
  std::vector<double> base(m);
  double t = -kInf;
  for (std::size_t k = 0; k < m; ++k) {
    double dotp = 0.0;
    for (Eigen::Index j = 0; j < theta.size(); ++j) dotp += p.alpha[k][j] * theta[j];
    base[k] = p.log_c[k] - dotp;
    t = std::max(t, base[k] / p.degree[k]);
  }
  std::vector<double> ex(m);
  for (int it = 0; it < 200; ++it) {
    for (std::size_t k = 0; k < m; ++k) ex[k] = base[k] - p.degree[k] * t;
    const double lse = log_sum_exp(ex);
    double wdeg = 0.0;
    for (std::size_t k = 0; k < m; ++k) wdeg += std::exp(ex[k] - lse) * p.degree[k];
    const double step = lse / wdeg;
    t += step;
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(t))) break;
  }
  return t;
}

}  // namespace

ExtendedValue psi_boundary(const MultiPoly& h, const Direction& r, const PsiOptions& opt) {
  const std::size_t d = h.nvars();
  if (r.dim() != d) throw InvalidInput("direction dimension does not match the polynomial");
  if (h.constant_term() != 1) throw Inapplicable("boundary route needs H(0) = 1");
  for (const auto& [e, c] : h.terms()) {
    if (total_degree(e) > 0 && c > 0) {
      throw Inapplicable("boundary route needs H = 1 - P with P having non-negative coefficients");
    }
  }

  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < d; ++i)
    if (r[i] > 0) active.push_back(i);
  const std::size_t k = active.size();

  Posynomial p;
  for (const auto& [e, c] : h.terms()) {
    if (total_degree(e) == 0) continue;
    bool keep = true;
    for (std::size_t i = 0; i < d; ++i)
      if (e[i] > 0 && r[i] == 0) keep = false;
    if (!keep) continue;
    std::vector<double> a(k);
    double deg = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      a[j] = e[active[j]];
      deg += a[j];
    }
    p.alpha.push_back(std::move(a));
    p.log_c.push_back(std::log(-c.get_d()));
    p.degree.push_back(deg);
  }
  if (p.alpha.empty()) return ExtendedValue::minus_infinity(PsiMethod::boundary);

  std::vector<double> ra(k);
  for (std::size_t j = 0; j < k; ++j) ra[j] = r[active[j]];

  // Free coordinates are the first k-1 active ones; the last is gauged to 0.
  auto lift = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k));
    theta.head(x.size()) = x;
    return theta;
  };
  ConvexObjective f;
  f.value = [&](const Eigen::VectorXd& x) {
    const Eigen::VectorXd theta = lift(x);
    double v = solve_shift(p, theta);
    for (Eigen::Index j = 0; j < x.size(); ++j) v += ra[j] * x[j];
    return v;
  };
  f.derivatives = [&](const Eigen::VectorXd& x, Eigen::VectorXd& g, Eigen::MatrixXd& hess) {
    const Eigen::VectorXd theta = lift(x);
    const double t = solve_shift(p, theta);
    const auto kk = static_cast<Eigen::Index>(k);
    Eigen::VectorXd a = Eigen::VectorXd::Zero(kk);
    Eigen::MatrixXd hm = Eigen::MatrixXd::Zero(kk, kk);
    for (std::size_t m = 0; m < p.alpha.size(); ++m) {
      double ex = p.log_c[m];
      for (std::size_t j = 0; j < k; ++j) ex -= p.alpha[m][j] * (theta[j] + t);
      const double w = std::exp(ex);
      for (std::size_t j = 0; j < k; ++j) {
        a[j] += w * p.alpha[m][j];
        for (std::size_t l = 0; l < k; ++l) hm(j, l) -= w * p.alpha[m][j] * p.alpha[m][l];
      }
    }
    const double s = a.sum();
    const Eigen::VectorXd b = hm.rowwise().sum();
    const double bb = b.sum();
    const auto n = x.size();
    g.resize(n);
    hess.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      g[j] = ra[j] - a[j] / s;
      for (Eigen::Index l = 0; l < n; ++l) {
        hess(j, l) = -(hm(j, l) / s - b[j] * a[l] / (s * s) - a[j] * b[l] / (s * s) +
                       a[j] * a[l] * bb / (s * s * s));
      }
    }
  };
  f.recession = [&](const Eigen::VectorXd& u) {
    const Eigen::VectorXd theta = lift(u);
    double best = -kInf;
    for (std::size_t m = 0; m < p.alpha.size(); ++m) {
      double dotp = 0.0;
      for (std::size_t j = 0; j < k; ++j) dotp += p.alpha[m][j] * theta[static_cast<Eigen::Index>(j)];
      best = std::max(best, -dotp / p.degree[m]);
    }
    double v = best;
    for (Eigen::Index j = 0; j < u.size(); ++j) v += ra[j] * u[j];
    return v;
  };

  NewtonOptions nopt;
  nopt.grad_tol = opt.tol;
  nopt.max_iter = opt.max_iter;
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k) - 1);
  NewtonResult res = minimize_convex(f, x0, nopt);
  if (res.status == NewtonStatus::unbounded) return ExtendedValue::minus_infinity(PsiMethod::boundary);
  if (res.status != NewtonStatus::converged) {
    throw ConvergenceFailure("boundary minimization did not converge (gradient " +
                             format_double(res.grad_norm) + ")");
  }
  const Eigen::VectorXd theta = lift(res.x);
  const double t = solve_shift(p, theta);
  std::vector<double> full(d, kInf);
  for (std::size_t j = 0; j < k; ++j) full[active[j]] = theta[j] + t;
  double psi = 0.0;
  for (std::size_t j = 0; j < k; ++j) psi += ra[j] * full[active[j]];
  return ExtendedValue::finite(psi, PsiMethod::boundary, std::move(full));
}

LogRatioResult log_ratio_min(const std::vector<double>& m, std::size_t n, const std::vector<double>& r,
                             const PsiOptions& opt) {
  if (m.size() != n * n || r.size() != n) throw InvalidInput("matrix and direction sizes disagree");
  for (std::size_t j = 0; j < n; ++j) {
    if (r[j] <= 0) continue;
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) any = any || m[i * n + j] > 0;
    if (!any) throw InvalidInput("column with positive weight has no entries");
  }
  std::vector<double> logm(n * n);
  for (std::size_t k = 0; k < n * n; ++k) logm[k] = m[k] > 0 ? std::log(m[k]) : -kInf;

  auto full = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    w.head(x.size()) = x;
    return w;
  };
  std::vector<double> buf(n);
  auto column_lse = [&](const Eigen::VectorXd& w, std::size_t j) {
    for (std::size_t i = 0; i < n; ++i) buf[i] = logm[i * n + j] + w[static_cast<Eigen::Index>(i)];
    return log_sum_exp(buf);
  };
  ConvexObjective f;
  f.value = [&](const Eigen::VectorXd& x) {
    const Eigen::VectorXd w = full(x);
    double v = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (r[j] > 0) v += r[j] * (column_lse(w, j) - w[static_cast<Eigen::Index>(j)]);
    return v;
  };
  f.derivatives = [&](const Eigen::VectorXd& x, Eigen::VectorXd& g, Eigen::MatrixXd& hess) {
    const Eigen::VectorXd w = full(x);
    const auto nn = static_cast<Eigen::Index>(n);
    Eigen::VectorXd gf = Eigen::VectorXd::Zero(nn);
    Eigen::MatrixXd hf = Eigen::MatrixXd::Zero(nn, nn);
    Eigen::VectorXd pi(nn);
    for (std::size_t j = 0; j < n; ++j) {
      if (r[j] <= 0) continue;
      const double lse = column_lse(w, j);
      for (std::size_t i = 0; i < n; ++i) pi[static_cast<Eigen::Index>(i)] = std::exp(buf[i] - lse);
      gf += r[j] * pi;
      gf[static_cast<Eigen::Index>(j)] -= r[j];
      hf.diagonal() += r[j] * pi;
      hf -= r[j] * pi * pi.transpose();
    }
    const auto k = x.size();
    g = gf.head(k);
    hess = hf.topLeftCorner(k, k);
  };
  f.recession = [&](const Eigen::VectorXd& u) {
    const Eigen::VectorXd w = full(u);
    double v = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (r[j] <= 0) continue;
      double top = -kInf;
      for (std::size_t i = 0; i < n; ++i)
        if (m[i * n + j] > 0) top = std::max(top, w[static_cast<Eigen::Index>(i)]);
      v += r[j] * (top - w[static_cast<Eigen::Index>(j)]);
    }
    return v;
  };
  NewtonOptions nopt;
  nopt.grad_tol = opt.tol;
  nopt.max_iter = opt.max_iter;
  NewtonResult res = minimize_convex(f, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n) - 1), nopt);
  LogRatioResult out;
  if (res.status == NewtonStatus::unbounded) {
    out.value = ExtendedValue::minus_infinity(PsiMethod::tmap);
    return out;
  }
  if (res.status != NewtonStatus::converged) {
    throw ConvergenceFailure("log-ratio minimization did not converge (gradient " +
                             format_double(res.grad_norm) + ")");
  }
  const Eigen::VectorXd w = full(res.x);
  out.w.assign(w.data(), w.data() + w.size());
  out.value = ExtendedValue::finite(res.value, PsiMethod::tmap);
  return out;
}

ExtendedValue psi_tmap(const Automaton& a, const Direction& r, const PsiOptions& opt) {
  if (r.dim() != a.num_symbols()) throw InvalidInput("direction dimension does not match the alphabet");
  if (!a.vertex_labeled()) throw Inapplicable("T-map route needs a vertex-labelled automaton");
  if (!is_ergodic(a)) throw Inapplicable("T-map route needs an ergodic automaton");
  const AdjacencyMatrix adj = adjacency(a);
  if (!adj.is_zero_one()) throw Inapplicable("T-map route needs a 0/1 adjacency matrix");
  const std::size_t n = a.num_states();
  if (n != a.num_symbols()) throw Inapplicable("T-map route needs one state per symbol");
  std::vector<bool> used(n, false);
  std::vector<double> rs(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& lab = a.state_labels()[j];
    if (!lab || used[*lab]) throw Inapplicable("state labels must be a bijection onto the alphabet");
    used[*lab] = true;
    rs[j] = r[*lab];
  }
  LogRatioResult res = log_ratio_min(adj.as_double(), n, rs, opt);
  if (!res.value.is_finite()) return ExtendedValue::minus_infinity(PsiMethod::tmap);
  // s_j = e^{w_j} / sum_i a_ij e^{w_i}; report theta = -log s per symbol.
  std::vector<double> theta(n);
  for (std::size_t j = 0; j < n; ++j) {
    double denom = 0.0;
    for (std::size_t i = 0; i < n; ++i) denom += static_cast<double>(adj.at(i, j)) * std::exp(res.w[i]);
    theta[*a.state_labels()[j]] = std::log(denom) - res.w[j];
  }
  return ExtendedValue::finite(res.value.value, PsiMethod::tmap, std::move(theta));
}

ExtendedValue psi_empirical(const CoefficientTable& t, const Direction& r, const EmpiricalOptions& opt) {
  if (r.dim() != t.dimension()) throw InvalidInput("direction dimension does not match the table");
  if (!(opt.cone_eps > 0)) throw InvalidInput("cone width must be positive");
  if (opt.window == 0) throw InvalidInput("shell window must be positive");
  if (t.max_total() < std::max(opt.min_table, opt.window + 1)) {
    throw InvalidInput("coefficient table too small for the empirical estimate");
  }
  double best = -kInf;
  std::vector<double> logs;
  for (std::size_t radius = t.max_total() - opt.window; radius < t.max_total(); ++radius) {
    if (radius == 0) continue;
    logs.clear();
    for (const auto& i : layer_exponents(t.dimension(), radius)) {
      double dist = 0.0;
      for (std::size_t k = 0; k < i.size(); ++k) dist += std::abs(i[k] / static_cast<double>(radius) - r[k]);
      if (dist >= opt.cone_eps) continue;
      const double lc = t.log_count(i);
      if (lc != -kInf) logs.push_back(lc);
    }
    if (logs.empty()) continue;
    best = std::max(best, log_sum_exp(logs) / static_cast<double>(radius));
  }
  if (best == -kInf) return ExtendedValue::minus_infinity(PsiMethod::empirical);
  return ExtendedValue::finite(best, PsiMethod::empirical);
}

ExtendedValue psi_closed_form(ClosedForm name, const Direction& r) {
  auto xlog = [](double x, double y) { return x > 0 ? x * std::log(y) : 0.0; };
  switch (name) {
    case ClosedForm::f2_delta: {
      if (r.dim() != 2) throw InvalidInput("f2_delta closed form needs d = 2");
      const double p = r[0], q = r[1];
      const double root = std::sqrt(p * p - p * q + q * q);
      const double v = shannon_entropy(r.values()) + xlog(p, 2 * q - p + 2 * root) + xlog(q, 2 * p - q + 2 * root);
      return ExtendedValue::finite(v, PsiMethod::closed_form);
    }
    case ClosedForm::fibonacci: {
      if (r.dim() != 2) throw InvalidInput("fibonacci closed form needs d = 2");
      const double p = r[0], q = r[1];
      if (p < 0.5) return ExtendedValue::minus_infinity(PsiMethod::closed_form);
      if (p == 0.5) return ExtendedValue::finite(0.0, PsiMethod::closed_form);
      const double v = p * std::log(p / (2 * p - 1)) + xlog(q, (2 * p - 1) / q);
      return ExtendedValue::finite(v, PsiMethod::closed_form);
    }
    case ClosedForm::free_monoid: return ExtendedValue::finite(shannon_entropy(r.values()), PsiMethod::closed_form);
  }
  throw InvalidInput("unknown closed form");
}

std::vector<double> positive_roots(const std::vector<double>& coeffs) {
  std::vector<double> c = coeffs;
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  std::size_t low = 0;
  while (low < c.size() && c[low] == 0.0) ++low;
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(low));
  if (c.size() < 2) return {};
  const std::size_t deg = c.size() - 1;
  auto eval = [&](double y, double& dv) {
    double v = 0.0;
    dv = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) {
      dv = dv * y + v;
      v = v * y + c[k];
    }
    return v;
  };
  std::vector<double> cand;
  if (deg == 1) {
    cand.push_back(-c[0] / c[1]);
  } else {
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(deg), static_cast<Eigen::Index>(deg));
    for (std::size_t k = 1; k < deg; ++k) comp(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k - 1)) = 1.0;
    for (std::size_t k = 0; k < deg; ++k) {
      comp(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(deg - 1)) = -c[k] / c[deg];
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
      const auto z = es.eigenvalues()[k];
      if (std::abs(z.imag()) <= 1e-7 * (1.0 + std::abs(z.real()))) cand.push_back(z.real());
    }
  }
  std::vector<double> out;
  for (double y : cand) {
    for (int it = 0; it < 50; ++it) {
      double dv;
      const double v = eval(y, dv);
      if (dv == 0.0) break;
      const double step = v / dv;
      y -= step;
      if (std::abs(step) <= 1e-16 * std::abs(y)) break;
    }
    if (y > 0 && std::isfinite(y)) out.push_back(y);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [](double a, double b) { return std::abs(a - b) <= 1e-12 * (1 + std::abs(a)); }),
            out.end());
  return out;
}

std::vector<std::pair<double, double>> amoeba_slice(const MultiPoly& h, int grid, const AmoebaOptions& opt) {
  if (h.nvars() != 2) throw InvalidInput("amoeba slice needs a polynomial in two variables");
  if (grid < 2) throw InvalidInput("grid must have at least 2 points");
  if (!(opt.s_max > opt.s_min)) throw InvalidInput("empty sweep range");
  auto grid_value = [&](int k) { return opt.s_min + (opt.s_max - opt.s_min) * k / (grid - 1); };
  std::vector<std::pair<double, double>> out;
  const bool has_z1 = h.degree_in(0) > 0;
  const bool has_z2 = h.degree_in(1) > 0;
  if (!has_z1 && !has_z2) return out;
  if (!has_z2 || !has_z1) {
    const std::size_t var = has_z1 ? 0 : 1;
    std::vector<double> c(h.degree_in(var) + 1, 0.0);
    for (const auto& [e, coef] : h.terms()) c[e[var]] += coef.get_d();
    for (double x : positive_roots(c)) {
      const double fixed = -std::log(x);
      for (int k = 0; k < grid; ++k) {
        if (var == 0) {
          out.emplace_back(fixed, grid_value(k));
        } else {
          out.emplace_back(grid_value(k), fixed);
        }
      }
    }
    return out;
  }
  std::vector<double> c(h.degree_in(1) + 1);
  for (int k = 0; k < grid; ++k) {
    const double s = grid_value(k);
    const double x = std::exp(-s);
    std::fill(c.begin(), c.end(), 0.0);
    for (const auto& [e, coef] : h.terms()) c[e[1]] += coef.get_d() * std::pow(x, static_cast<double>(e[0]));
    const auto roots = positive_roots(c);
    if (roots.empty()) continue;
    out.emplace_back(s, -std::log(roots.front()));
  }
  return out;
}

}  // namespace growth
