#pragma once

#include <functional>

#include <Eigen/Dense>

namespace growth {

enum class NewtonStatus { converged, unbounded, failed };

struct NewtonOptions {
  double grad_tol = 1e-12;
  int max_iter = 500;
  /// Unboundedness is probed once the iterate or a step exceeds this size.
  double probe_radius = 25.0;
  /// Each of `probe_doublings` successive doublings must lower f by at least this.
  double probe_drop = 1e-3;
  int probe_doublings = 10;
  /// With a recession function, a ray is unbounded once its asymptotic slope is below -recession_tol.
  double recession_tol = 1e-12;
};

struct NewtonResult {
  NewtonStatus status = NewtonStatus::failed;
  Eigen::VectorXd x;
  double value = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
};

/// Smooth convex objective: value and (gradient, Hessian).
struct ConvexObjective {
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&, Eigen::MatrixXd&)> derivatives;
  /// Optional asymptotic slope lim f(x + s u) / s along a unit direction u.
  std::function<double(const Eigen::VectorXd&)> recession;
};

/// Damped Newton with backtracking on a convex objective. Reports `unbounded`
/// when the recession slope along a descent ray is negative or, without a
/// recession function, when f decreases by more than probe_drop over each of
/// probe_doublings successive doublings along that ray.
NewtonResult minimize_convex(const ConvexObjective& f, Eigen::VectorXd x0, const NewtonOptions& opt = {});

}  // namespace growth
