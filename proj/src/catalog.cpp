#include "growth/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "growth/automaton.hpp"
#include "growth/error.hpp"
#include "growth/series.hpp"

namespace growth {

GroupParams GroupParams::uniform(int m) {
  GroupParams g;
  g.m = m;
  g.p.assign(static_cast<std::size_t>(m), 1.0 / (2.0 * m));
  return g;
}

void GroupParams::validate() const {
  if (m < 2) throw InvalidInput("rank must be at least 2");
  if (p.size() != static_cast<std::size_t>(m)) throw InvalidInput("need one probability per generator");
  double s = 0.0;
  for (double v : p) {
    if (!(v > 0)) throw InvalidInput("generator probabilities must be positive");
    s += v;
  }
  if (std::abs(2 * s - 1) > 1e-12) throw InvalidInput("generator probabilities must satisfy 2 sum p_i = 1");
}

MultiPoly elementary_symmetric(std::size_t m, std::size_t l) {
  MultiPoly out(m);
  if (l > m) return out;
  std::vector<bool> pick(m, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(l), true);
  do {
    Exponent e(m, 0);
    for (std::size_t i = 0; i < m; ++i) e[i] = pick[i] ? 1 : 0;
    out.add_term(e, 1);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

MultiPoly r_polynomial(int m) {
  if (m < 1) throw InvalidInput("rank must be positive");
  const auto mm = static_cast<std::size_t>(m);
  MultiPoly r = MultiPoly::constant(mm, 1);
  for (std::size_t l = 1; l <= mm; ++l) r -= elementary_symmetric(mm, l).scaled(static_cast<long>(2 * l - 1));
  return r;
}

namespace {

MultiPoly product_one_plus(std::size_t m, std::size_t skip = std::numeric_limits<std::size_t>::max()) {
  MultiPoly out = MultiPoly::constant(m, 1);
  for (std::size_t j = 0; j < m; ++j)
    if (j != skip) out *= MultiPoly::constant(m, 1) + MultiPoly::variable(m, j);
  return out;
}

}  // namespace

RationalSeries delta_free_group(int m) {
  if (m < 2) throw InvalidInput("rank must be at least 2");
  RationalSeries s{product_one_plus(static_cast<std::size_t>(m)), r_polynomial(m)};
  s.normalize();
  return s;
}

MultiPoly cleared_delta_denominator(int m) {
  if (m < 2) throw InvalidInput("rank must be at least 2");
  const auto mm = static_cast<std::size_t>(m);
  MultiPoly out = product_one_plus(mm);
  for (std::size_t i = 0; i < mm; ++i) {
    out -= (MultiPoly::variable(mm, i) * product_one_plus(mm, i)).scaled(2);
  }
  return out;
}

bool FmIdentityReport::pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

FmIdentityReport verify_fm_identities(int m) {
  if (m < 2 || m > 4) throw InvalidInput("identity suite supports 2 <= m <= 4");
  const auto mm = static_cast<std::size_t>(m);
  FmIdentityReport rep;
  rep.m = m;
  const Automaton a = free_group_unambiguous(m);
  const PolyMatrix mat = PolyMatrix::identity(a.num_states(), mm) - transfer_matrix(a, VariableMap::paired(mm));
  const MultiPoly det = det_poly_matrix(mat);

  MultiPoly one_minus = MultiPoly::constant(mm, 1);
  MultiPoly one_minus_sq = MultiPoly::constant(mm, 1);
  for (std::size_t i = 0; i < mm; ++i) {
    const MultiPoly z = MultiPoly::variable(mm, i);
    one_minus *= MultiPoly::constant(mm, 1) - z;
    one_minus_sq *= MultiPoly::constant(mm, 1) - z * z;
  }
  const MultiPoly r = r_polynomial(m);
  rep.checks.push_back({"det(I - A(z)) = prod(1 - z_i) R(z)", det == one_minus * r});

  // Numerator: signed cofactors along the initial column, all states final.
  MultiPoly numer(mm);
  bool each_ok = true;
  for (std::size_t s = 0; s < a.num_states(); ++s) {
    MultiPoly c = minor(mat, s, 0);
    if (s % 2) c = -c;
    if (s > 0) {
      const std::size_t var = (s - 1) % mm;
      MultiPoly expect = MultiPoly::variable(mm, var) * (MultiPoly::constant(mm, 1) - MultiPoly::variable(mm, var));
      for (std::size_t j = 0; j < mm; ++j) {
        if (j == var) continue;
        const MultiPoly z = MultiPoly::variable(mm, j);
        expect *= MultiPoly::constant(mm, 1) - z * z;
      }
      each_ok = each_ok && c == expect;
    }
    numer += c;
  }
  rep.checks.push_back({"signed cofactor of each letter state = z_i(1 - z_i) prod_{j!=i}(1 - z_j^2)", each_ok});
  rep.checks.push_back({"cofactor sum = prod(1 - z_i^2)", numer == one_minus_sq});

  const RationalSeries delta = delta_free_group(m);
  const RationalSeries reduced = cancel_binomial_factors(RationalSeries{numer, det});
  rep.checks.push_back({"cofactor sum / det reduces to prod(1 + z_i) / R(z)", reduced == delta});
  rep.checks.push_back({"cross-multiplied ratio matches", numer * delta.denominator == det * delta.numerator});
  rep.checks.push_back({"cleared 1/(1 - 2 sum z_i/(1 + z_i)) denominator = R(z)", cleared_delta_denominator(m) == r});
  return rep;
}

std::vector<double> f3_quartic_coefficients(double p, double q) {
  return {-45 * p * p, 12 * p * (5 * p - 6), 2 * (33 * p * p - 32 * p * q - 8 * p - 32 * q * q + 32 * q - 8),
          4 * p * (7 * p - 2), 3 * p * p};
}

std::vector<double> f3_quartic_roots(double p, double q) {
  const auto c = f3_quartic_coefficients(p, q);
  const auto deg = static_cast<Eigen::Index>(c.size() - 1);
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
  for (Eigen::Index k = 1; k < deg; ++k) comp(k, k - 1) = 1.0;
  for (Eigen::Index k = 0; k < deg; ++k) comp(k, deg - 1) = -c[static_cast<std::size_t>(k)] / c.back();
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  std::vector<double> out;
  for (Eigen::Index k = 0; k < deg; ++k) {
    const auto z = es.eigenvalues()[k];
    if (std::abs(z.imag()) > 1e-7 * (1 + std::abs(z.real()))) continue;
    double x = z.real();
    for (int it = 0; it < 30; ++it) {
      double v = 0, dv = 0;
      for (std::size_t j = c.size(); j-- > 0;) {
        dv = dv * x + v;
        v = v * x + c[j];
      }
      if (dv == 0) break;
      const double step = v / dv;
      x -= step;
      if (std::abs(step) <= 1e-16 * std::abs(x)) break;
    }
    out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

double r3(double x1, double x2, double x3) {
  return 1 - x1 - x2 - x3 - 3 * (x1 * x2 + x1 * x3 + x2 * x3) - 5 * x1 * x2 * x3;
}

// Given x1, solve R = 0 and r1 x2 R_2 = r2 x1 R_1 for (x2, x3).
bool complete_point(double x1, const Direction& r, double& x2, double& x3) {
  auto eqs = [&](double a, double b, double& e1, double& e2) {
    const double h1 = -1 - 3 * (a + b) - 5 * a * b;
    const double h2 = -1 - 3 * (x1 + b) - 5 * x1 * b;
    e1 = r3(x1, a, b);
    e2 = r[0] * a * h2 - r[1] * x1 * h1;
  };
  for (int it = 0; it < 100; ++it) {
    double e1, e2;
    eqs(x2, x3, e1, e2);
    if (std::max(std::abs(e1), std::abs(e2)) < 1e-15) return true;
    const double h = 1e-7;
    double a1, a2, b1, b2, c1, c2, d1, d2;
    eqs(x2 + h * x2, x3, a1, a2);
    eqs(x2 - h * x2, x3, b1, b2);
    eqs(x2, x3 + h * x3, c1, c2);
    eqs(x2, x3 - h * x3, d1, d2);
    Eigen::Matrix2d jac;
    jac << (a1 - b1) / (2 * h * x2), (c1 - d1) / (2 * h * x3), (a2 - b2) / (2 * h * x2), (c2 - d2) / (2 * h * x3);
    const Eigen::Vector2d step = jac.fullPivLu().solve(Eigen::Vector2d(-e1, -e2));
    double alpha = 1.0;
    while (alpha > 1e-6 && (x2 + alpha * step[0] <= 0 || x3 + alpha * step[1] <= 0)) alpha *= 0.5;
    x2 += alpha * step[0];
    x3 += alpha * step[1];
    if (std::abs(step[0]) + std::abs(step[1]) < 1e-17) break;
  }
  double e1, e2;
  eqs(x2, x3, e1, e2);
  return std::max(std::abs(e1), std::abs(e2)) < 1e-12;
}

}  // namespace

ExtendedValue psi_f3(const Direction& r) {
  if (r.dim() != 3) throw InvalidInput("rank-3 formula needs d = 3");
  if (!r.interior()) throw InvalidInput("rank-3 formula needs an interior direction");
  constexpr int steps = 64;
  double z = 5.0;
  double x2 = 0.2, x3 = 0.2;
  const double third = 1.0 / 3.0;
  for (int k = 1; k <= steps; ++k) {
    const double s = static_cast<double>(k) / steps;
    const double p = third + s * (r[0] - third);
    const double q = third + s * (r[1] - third);
    const auto roots = f3_quartic_roots(p, q);
    double best = std::numeric_limits<double>::quiet_NaN();
    for (double c : roots) {
      if (c <= 0) continue;
      if (std::isnan(best) || std::abs(c - z) < std::abs(best - z)) best = c;
    }
    if (std::isnan(best)) throw ConvergenceFailure("no admissible positive root of the quartic");
    z = best;
    const Direction rk({p, q, 1 - p - q});
    if (!complete_point(1.0 / z, rk, x2, x3)) throw ConvergenceFailure("could not complete the boundary point");
  }
  const double x1 = 1.0 / z;
  const std::vector<double> theta{-std::log(x1), -std::log(x2), -std::log(x3)};
  const double psi = r[0] * theta[0] + r[1] * theta[1] + r[2] * theta[2];
  return ExtendedValue::finite(psi, PsiMethod::closed_form, theta);
}

namespace {

double akemann_objective(const std::vector<double>& p, double t) {
  double s = 0.0;
  for (double v : p) s += std::sqrt(t * t + v * v);
  return 2 * (s - static_cast<double>(p.size() - 1) * t);
}

double akemann_slope(const std::vector<double>& p, double t) {
  double s = 0.0;
  for (double v : p) s += t / std::sqrt(t * t + v * v);
  return 2 * (s - static_cast<double>(p.size() - 1));
}

}  // namespace

double chi_akemann(const GroupParams& g) {
  g.validate();
  double lo = 0.0, hi = 1.0;
  while (akemann_slope(g.p, hi) < 0) hi *= 2;
  for (int it = 0; it < 200 && hi - lo > 1e-17 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (akemann_slope(g.p, mid) < 0 ? lo : hi) = mid;
  }
  return akemann_objective(g.p, 0.5 * (lo + hi));
}

double chi_kesten(int m) {
  if (m < 2) throw InvalidInput("rank must be at least 2");
  return std::sqrt(2.0 * m - 1) / m;
}

double chi_of_alpha(double alpha, int m, bool normal_subgroup) {
  if (m < 2) throw InvalidInput("rank must be at least 2");
  const double top = 2.0 * m - 1;
  const double root = std::sqrt(top);
  if (!(alpha >= 1 && alpha <= top)) throw InvalidInput("cogrowth must lie in [1, 2m - 1]");
  if (normal_subgroup && alpha <= root) {
    throw InvalidInput("cogrowth of a nontrivial normal subgroup lies in (sqrt(2m - 1), 2m - 1]");
  }
  if (alpha == top) return 1.0;
  if (alpha <= root) return root / m;
  return root / (2.0 * m) * (root / alpha + alpha / root);
}

std::vector<double> deg8_coefficients(double p1, double p2) {
  const double a = p1 * p1, b = p2 * p2;
  return {-a * a * b * b, 0.0, 6 * a * b, 4 * (a + b), 3.0};
}

Deg8Result deg8_check(double p1, double p2) {
  if (!(p1 > 0 && p2 > 0)) throw InvalidInput("probabilities must be positive");
  if (std::abs(2 * (p1 + p2) - 1) > 1e-12) throw InvalidInput("probabilities must satisfy 2(p1 + p2) = 1");
  const auto roots = positive_roots(deg8_coefficients(p1, p2));
  if (roots.empty()) throw ConvergenceFailure("no positive root");
  Deg8Result res;
  res.x = roots.front();
  res.t = std::sqrt(res.x);
  res.chi = akemann_objective({p1, p2}, res.t);
  return res;
}

}  // namespace growth
