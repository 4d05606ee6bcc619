#include "growth/newton.hpp"

#include <cmath>
#include <limits>

namespace growth {

namespace {

bool certify_unbounded(const ConvexObjective& f, const Eigen::VectorXd& x, const Eigen::VectorXd& dir,
                       const NewtonOptions& opt) {
  const double norm = dir.norm();
  if (!(norm > 0)) return false;
  const Eigen::VectorXd u = dir / norm;
  if (f.recession) return f.recession(u) < -opt.recession_tol;
  double prev = f.value(x);
  double step = 1.0;
  for (int k = 0; k < opt.probe_doublings; ++k) {
    const double cur = f.value(x + step * u);
    if (!std::isfinite(cur) || !(prev - cur > opt.probe_drop)) return false;
    prev = cur;
    step *= 2.0;
  }
  return true;
}

}  // namespace

NewtonResult minimize_convex(const ConvexObjective& f, Eigen::VectorXd x0, const NewtonOptions& opt) {
  NewtonResult res;
  const auto n = x0.size();
  Eigen::VectorXd x = std::move(x0);
  Eigen::VectorXd g(n);
  Eigen::MatrixXd h(n, n);
  double fx = f.value(x);
  for (int it = 0; it < opt.max_iter; ++it) {
    res.iterations = it;
    f.derivatives(x, g, h);
    res.grad_norm = g.lpNorm<Eigen::Infinity>();
    if (res.grad_norm < opt.grad_tol) {
      res.status = NewtonStatus::converged;
      break;
    }

    Eigen::VectorXd p;
    double mu = 0.0;
    const double scale = 1.0 + h.lpNorm<Eigen::Infinity>();
    for (int attempt = 0; attempt < 60; ++attempt) {
      Eigen::MatrixXd shifted = h;
      shifted.diagonal().array() += mu;
      Eigen::LDLT<Eigen::MatrixXd> ldlt(shifted);
      if (ldlt.info() == Eigen::Success && ldlt.isPositive() && (ldlt.vectorD().array() > 0).all()) {
        p = ldlt.solve(-g);
        if (p.allFinite() && g.dot(p) < 0) break;
      }
      p.resize(0);
      mu = mu == 0.0 ? 1e-12 * scale : mu * 10.0;
    }
    if (p.size() == 0) p = -g;

    if (x.norm() > opt.probe_radius || p.norm() > opt.probe_radius) {
      if (certify_unbounded(f, x, p, opt)) {
        res.status = NewtonStatus::unbounded;
        res.x = x;
        res.value = -std::numeric_limits<double>::infinity();
        return res;
      }
    }

    const double slope = g.dot(p);
    // Predicted decrease below the resolution of f: nothing left to gain.
    if (-slope <= 4e-16 * (1.0 + std::abs(fx)) && res.grad_norm < 1e-6) {
      res.status = NewtonStatus::converged;
      break;
    }
    double alpha = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 80; ++ls) {
      const Eigen::VectorXd trial = x + alpha * p;
      const double ft = f.value(trial);
      if (std::isfinite(ft) && ft <= fx + 1e-4 * alpha * slope) {
        moved = ft < fx;
        x = trial;
        fx = ft;
        break;
      }
      alpha *= 0.5;
    }
    if (!moved) {
      // Line search stalled at the floating-point floor.
      res.status = res.grad_norm < 1e-8 ? NewtonStatus::converged : NewtonStatus::failed;
      break;
    }
    res.iterations = it + 1;
  }
  if (res.status == NewtonStatus::failed && res.grad_norm < opt.grad_tol) res.status = NewtonStatus::converged;
  res.x = x;
  res.value = fx;
  if (res.status != NewtonStatus::converged) {
    f.derivatives(x, g, h);
    res.grad_norm = g.lpNorm<Eigen::Infinity>();
    if (res.grad_norm < opt.grad_tol) res.status = NewtonStatus::converged;
  }
  return res;
}

}  // namespace growth
