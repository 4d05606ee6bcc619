#include "growth/spectral.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "growth/error.hpp"
#include "growth/kernels.hpp"

namespace growth {

Matrix Matrix::from(const AdjacencyMatrix& m) {
  Matrix out;
  out.n = m.n;
  out.a = m.as_double();
  return out;
}

namespace {

bool irreducible(const Matrix& a) {
  AdjacencyMatrix pattern;
  pattern.n = a.n;
  pattern.entries.resize(a.a.size());
  for (std::size_t k = 0; k < a.a.size(); ++k) pattern.entries[k] = a.a[k] > 0 ? 1 : 0;
  return is_strongly_connected(pattern);
}

// Power iteration on (A + I); returns the eigenvector of A normalized to sum 1.
std::vector<double> power_vector(const Matrix& a, bool left, double tol, int max_iter, int& iters) {
  const std::size_t n = a.n;
  std::vector<double> x(n, 1.0 / static_cast<double>(n)), y(n);
  double lambda = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    if (left) {
      kernels::vecmat(a.a.data(), n, n, x.data(), y.data());
    } else {
      kernels::matvec(a.a.data(), n, n, x.data(), y.data());
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] += x[i];
      sum += y[i];
    }
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] /= sum;
      change = std::max(change, std::abs(y[i] - x[i]));
    }
    x.swap(y);
    const bool settled = std::abs(sum - lambda) <= tol * std::max(1.0, sum) && change <= 1e-15;
    lambda = sum;
    if (settled) {
      iters = it;
      return x;
    }
  }
  throw ConvergenceFailure("power iteration did not converge");
}

}  // namespace

SpectralData perron(const Matrix& a, double tol, int max_iter) {
  if (a.n == 0 || a.a.size() != a.n * a.n) throw InvalidInput("matrix must be square and non-empty");
  for (double v : a.a)
    if (!(v >= 0) || !std::isfinite(v)) throw InvalidInput("matrix entries must be finite and non-negative");
  if (!irreducible(a)) throw InvalidInput("matrix is reducible");
  const std::size_t n = a.n;
  SpectralData s;
  int it_r = 0, it_l = 0;
  s.v = power_vector(a, false, tol, max_iter, it_r);
  s.u = power_vector(a, true, tol, max_iter, it_l);
  s.iterations = std::max(it_r, it_l);
  std::vector<double> av(n);
  kernels::matvec(a.a.data(), n, n, s.v.data(), av.data());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += s.u[i] * av[i];
    den += s.u[i] * s.v[i];
  }
  s.rho = num / den;
  for (double& x : s.u) x /= den;
  return s;
}

SpectralData perron(const AdjacencyMatrix& a, double tol) { return perron(Matrix::from(a), tol); }

SpectralData parry(const AdjacencyMatrix& a) {
  if (!a.is_zero_one()) throw InvalidInput("Parry measure needs a 0/1 matrix");
  SpectralData s = perron(a);
  const std::size_t n = a.n;
  s.p.n = n;
  s.p.a.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a.at(i, j)) s.p.at(i, j) = s.v[j] / (s.rho * s.v[i]);
  std::vector<double> x(n, 1.0 / static_cast<double>(n)), y(n);
  for (int it = 0; it < 100000; ++it) {
    kernels::vecmat(s.p.a.data(), n, n, x.data(), y.data());
    double change = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = 0.5 * (y[i] + x[i]);
      sum += y[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      y[i] /= sum;
      change = std::max(change, std::abs(y[i] - x[i]));
    }
    x.swap(y);
    if (change <= 1e-16) break;
  }
  s.stationary = x;
  return s;
}

double cylinder_measure(const SpectralData& s, const AdjacencyMatrix& a, const std::vector<std::size_t>& path) {
  if (path.empty()) throw InvalidInput("empty cylinder");
  for (auto st : path)
    if (st >= a.n) throw InvalidInput("cylinder state out of range");
  for (std::size_t k = 0; k + 1 < path.size(); ++k)
    if (a.at(path[k], path[k + 1]) == 0) return 0.0;
  const double steps = static_cast<double>(path.size() - 1);
  return s.u[path.front()] * s.v[path.back()] / std::pow(s.rho, steps);
}

double rate_function(double rho, const ExtendedValue& psi) {
  if (!psi.is_finite()) return std::numeric_limits<double>::infinity();
  return std::log(rho) - psi.value;
}

double rate_function(const AdjacencyMatrix& a, const ExtendedValue& psi) {
  return rate_function(perron(a).rho, psi);
}

double sanov_rate(const Matrix& p, const Direction& r, double tol) {
  if (r.dim() != p.n) throw InvalidInput("direction dimension does not match the chain");
  if (!irreducible(p)) throw InvalidInput("chain is reducible");
  PsiOptions opt;
  opt.tol = tol;
  LogRatioResult res = log_ratio_min(p.a, p.n, r.values(), opt);
  if (!res.value.is_finite()) return std::numeric_limits<double>::infinity();
  return -res.value.value;
}

TMapResult t_map(const AdjacencyMatrix& a, const std::vector<double>& q) {
  if (q.size() != a.n) throw InvalidInput("q has wrong dimension");
  for (double x : q)
    if (!(x > 0)) throw InvalidInput("q must be interior");
  const SpectralData sd = perron(a);
  TMapResult out;
  out.s.resize(a.n);
  out.t.resize(a.n);
  for (std::size_t j = 0; j < a.n; ++j) {
    double denom = 0.0;
    for (std::size_t i = 0; i < a.n; ++i) denom += q[i] * static_cast<double>(a.at(i, j)) / sd.v[i];
    if (!(denom > 0)) throw InvalidInput("T-map undefined: empty column");
    out.s[j] = q[j] / (sd.v[j] * denom);
    out.t[j] = q[j] / sd.v[j];
  }
  return out;
}

TIdentityReport verify_t_identities(const AdjacencyMatrix& a, const std::vector<double>& q) {
  const TMapResult tm = t_map(a, q);
  const auto n = static_cast<Eigen::Index>(a.n);
  Eigen::MatrixXd as(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      as(i, j) = static_cast<double>(a.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) *
                 tm.s[static_cast<std::size_t>(j)];
  Eigen::RowVectorXd t(n);
  for (Eigen::Index i = 0; i < n; ++i) t[i] = tm.t[static_cast<std::size_t>(i)];
  TIdentityReport rep;
  rep.fixed_point_residual = (t * as - t).lpNorm<Eigen::Infinity>();
  rep.det_residual = std::abs((Eigen::MatrixXd::Identity(n, n) - as).fullPivLu().determinant());
  rep.fixed_point_ok = rep.fixed_point_residual < 1e-12;
  rep.det_ok = rep.det_residual < 1e-10;
  return rep;
}

double characteristic_residual(const AdjacencyMatrix& a, double rho) {
  const auto n = static_cast<Eigen::Index>(a.n);
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = -static_cast<double>(a.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
  m.diagonal().array() += rho;
  return std::abs(m.fullPivLu().determinant()) / std::pow(std::max(1.0, rho), static_cast<double>(n));
}

}  // namespace growth
