#include "growth/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "growth/error.hpp"

namespace growth {

namespace {

struct Derivs {
  std::vector<MultiPoly> first;
  std::vector<std::vector<MultiPoly>> second;
};

Derivs derivatives_of(const MultiPoly& h) {
  const std::size_t d = h.nvars();
  Derivs out;
  for (std::size_t i = 0; i < d; ++i) out.first.push_back(h.derivative(i));
  out.second.resize(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) out.second[i].push_back(out.first[i].derivative(k));
  return out;
}

// Smallest positive c with H(e^{-c}, ..., e^{-c}) = 0, as -log of the root.
std::optional<double> symmetric_seed(const MultiPoly& h) {
  std::vector<double> c(h.total_degree() + 1, 0.0);
  for (const auto& [e, coef] : h.terms()) c[total_degree(e)] += coef.get_d();
  const auto roots = positive_roots(c);
  if (roots.empty()) return std::nullopt;
  return -std::log(roots.front());
}

std::optional<CriticalPoint> newton_from(const MultiPoly& h, const Derivs& dv, const Direction& r,
                                         const std::vector<double>& theta0, const CriticalOptions& opt) {
  const std::size_t d = h.nvars();
  const auto n = static_cast<Eigen::Index>(d + 1);
  std::vector<double> z(d);
  auto residual = [&](const Eigen::VectorXd& x, Eigen::VectorXd& f) {
    for (std::size_t i = 0; i < d; ++i) z[i] = std::exp(-x[static_cast<Eigen::Index>(i)]);
    const double lambda = x[n - 1];
    f.resize(n);
    for (std::size_t i = 0; i < d; ++i) {
      f[static_cast<Eigen::Index>(i)] = r[i] - lambda * z[i] * dv.first[i].evaluate(z);
    }
    f[n - 1] = h.evaluate(z);
  };
  Eigen::VectorXd x(n);
  for (std::size_t i = 0; i < d; ++i) {
    x[static_cast<Eigen::Index>(i)] = theta0[i];
    z[i] = std::exp(-theta0[i]);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < d; ++i) sum += z[i] * dv.first[i].evaluate(z);
  if (sum == 0.0) return std::nullopt;
  x[n - 1] = 1.0 / sum;

  Eigen::VectorXd f;
  residual(x, f);
  for (int it = 0; it < opt.max_iter && f.lpNorm<Eigen::Infinity>() > opt.tol; ++it) {
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    const double lambda = x[n - 1];
    std::vector<double> hi(d);
    for (std::size_t i = 0; i < d; ++i) hi[i] = dv.first[i].evaluate(z);
    for (std::size_t i = 0; i < d; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      for (std::size_t k = 0; k < d; ++k) {
        const double hik = dv.second[i][k].evaluate(z);
        jac(ii, static_cast<Eigen::Index>(k)) = lambda * z[k] * ((i == k ? hi[i] : 0.0) + z[i] * hik);
      }
      jac(ii, n - 1) = -z[i] * hi[i];
      jac(n - 1, ii) = -z[i] * hi[i];
    }
    const Eigen::VectorXd step = jac.fullPivLu().solve(-f);
    if (!step.allFinite()) return std::nullopt;
    const double f0 = f.norm();
    double alpha = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 50; ++ls) {
      const Eigen::VectorXd trial = x + alpha * step;
      Eigen::VectorXd ft;
      residual(trial, ft);
      if (ft.allFinite() && ft.norm() < f0) {
        x = trial;
        f = ft;
        moved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!moved) break;
  }
  residual(x, f);
  if (!(f.lpNorm<Eigen::Infinity>() < 1e-10)) return std::nullopt;
  CriticalPoint cp;
  cp.z_star = z;
  cp.lambda = x[n - 1];
  cp.r = r.values();
  cp.height = 0.0;
  for (std::size_t i = 0; i < d; ++i) cp.height += r[i] * x[static_cast<Eigen::Index>(i)];
  return cp;
}

}  // namespace

std::vector<CriticalPoint> critical_points(const MultiPoly& h, const Direction& r, const CriticalOptions& opt) {
  const std::size_t d = h.nvars();
  if (r.dim() != d) throw InvalidInput("direction dimension does not match the polynomial");
  if (!r.interior()) throw InvalidInput("critical points need an interior direction");
  const Derivs dv = derivatives_of(h);

  std::vector<std::vector<double>> seeds;
  if (auto c = symmetric_seed(h)) {
    seeds.emplace_back(d, *c);
    for (std::size_t i = 0; i < d; ++i) {
      for (double delta : {-1.0, 1.0}) {
        std::vector<double> s(d, *c);
        s[i] += delta;
        seeds.push_back(std::move(s));
      }
    }
    std::vector<double> scaled(d);
    for (std::size_t i = 0; i < d; ++i) scaled[i] = *c - std::log(r[i] * static_cast<double>(d));
    seeds.push_back(std::move(scaled));
  }
  try {
    ExtendedValue b = psi_boundary(h, r);
    if (b.is_finite() && b.minimizer) seeds.push_back(*b.minimizer);
  } catch (const std::exception&) {
  }
  for (const auto& s : opt.extra_seeds) {
    if (s.size() != d) throw InvalidInput("seed has wrong dimension");
    seeds.push_back(s);
  }

  std::vector<CriticalPoint> found;
  for (const auto& s : seeds) {
    auto cp = newton_from(h, dv, r, s, opt);
    if (!cp) continue;
    bool dup = false;
    for (const auto& other : found) {
      bool same = true;
      for (std::size_t i = 0; i < d; ++i)
        if (std::abs(other.z_star[i] - cp->z_star[i]) > 1e-8 * (1.0 + std::abs(cp->z_star[i]))) same = false;
      dup = dup || same;
    }
    if (!dup) found.push_back(std::move(*cp));
  }
  if (found.empty()) throw ConvergenceFailure("no start converged to a critical point");
  std::sort(found.begin(), found.end(),
            [](const CriticalPoint& a, const CriticalPoint& b) { return a.z_star < b.z_star; });
  for (auto& cp : found) {
    cp.minimal = true;
    for (const auto& other : found) {
      if (&other == &cp) continue;
      bool le = true, lt = false;
      for (std::size_t i = 0; i < d; ++i) {
        if (other.z_star[i] > cp.z_star[i] * (1 + 1e-12)) le = false;
        if (other.z_star[i] < cp.z_star[i] * (1 - 1e-12)) lt = true;
      }
      if (le && lt) cp.minimal = false;
    }
  }
  return found;
}

CriticalPoint f2_critical_closed(double p) {
  if (!(p > 0 && p < 1)) throw InvalidInput("p must lie in (0, 1)");
  const double root = std::sqrt(3 * p * p - 3 * p + 1);
  const double x = (3 * p - 2 + 2 * root) / (3 * p);
  const double y = (1 - 3 * p + 2 * root) / (3 * (1 - p));
  const double h = 1 - x - y - 3 * x * y;
  if (std::abs(h) > 1e-12) throw ConvergenceFailure("closed-form point is off the variety");
  CriticalPoint cp;
  cp.z_star = {x, y};
  cp.r = {p, 1 - p};
  cp.lambda = p / (x * (-1 - 3 * y));
  cp.height = -p * std::log(x) - (1 - p) * std::log(y);
  cp.minimal = true;
  return cp;
}

double hessian_scalar_f2(double x, double y) {
  if (!(x > 0 && y > 0)) throw InvalidInput("point must have positive coordinates");
  if (std::abs(1 - x - y - 3 * x * y) > 1e-8) throw InvalidInput("point is not on the variety");
  return (x * y + 3 * x * x * y + 3 * x * y * y + x * x) / (y * y * (1 + 3 * x) * (1 + 3 * x));
}

double log_gradient_misalignment(const MultiPoly& h, const std::vector<double>& z, const std::vector<double>& r) {
  const auto g = h.gradient(z);
  double s = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) s += z[i] * g[i];
  double worst = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) worst = std::max(worst, std::abs(z[i] * g[i] / s - r[i]));
  return worst;
}

FitReport fit_correction(const CoefficientTable& t, const Direction& r, double psi, std::size_t n_min,
                         std::size_t n_max) {
  if (r.dim() != t.dimension()) throw InvalidInput("direction dimension does not match the table");
  if (n_max > t.max_total()) throw InvalidInput("table is not complete up to n_max");
  std::vector<double> xs, ys;
  Exponent e(r.dim());
  for (std::size_t n = std::max<std::size_t>(n_min, 1); n <= n_max; ++n) {
    bool integral = true;
    for (std::size_t k = 0; k < r.dim(); ++k) {
      const double v = r[k] * static_cast<double>(n);
      const double rv = std::round(v);
      if (std::abs(v - rv) > 1e-9 * static_cast<double>(n)) integral = false;
      e[k] = static_cast<std::uint32_t>(std::max(0.0, rv));
    }
    if (!integral) continue;
    const double lg = t.log_count(e);
    if (!std::isfinite(lg)) continue;
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(lg - static_cast<double>(n) * psi);
  }
  if (xs.size() < 5) throw InvalidInput("fewer than 5 admissible n in the fit range");
  const double m = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sx += xs[k];
    sy += ys[k];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
  }
  FitReport rep;
  rep.slope = sxy / sxx;
  rep.intercept = my - rep.slope * mx;
  double rss = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double e2 = ys[k] - rep.intercept - rep.slope * xs[k];
    rss += e2 * e2;
  }
  rep.residual = std::sqrt(rss / m);
  rep.points = xs.size();
  rep.n_min = n_min;
  rep.n_max = n_max;
  return rep;
}

}  // namespace growth
