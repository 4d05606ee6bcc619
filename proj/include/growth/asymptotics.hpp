#pragma once

#include <optional>
#include <vector>

#include "growth/indicatrice.hpp"
#include "growth/polyalg.hpp"
#include "growth/series.hpp"

namespace growth {

struct CriticalPoint {
  std::vector<double> z_star;
  double lambda = 0.0;
  std::vector<double> r;
  /// -sum r_i log z_i
  double height = 0.0;
  bool minimal = false;
};

struct CriticalOptions {
  double tol = 1e-13;
  int max_iter = 200;
  /// Extra seeds in -log z coordinates, tried after the built-in ones.
  std::vector<std::vector<double>> extra_seeds;
};

/// Positive real solutions of r_i = lambda z_i dH/dz_i, H(z) = 0.
std::vector<CriticalPoint> critical_points(const MultiPoly& h, const Direction& r, const CriticalOptions& opt = {});

CriticalPoint f2_critical_closed(double p);
double hessian_scalar_f2(double x, double y);

/// max_i |z_i H_i / s - r_i| with s = sum_i z_i H_i: zero iff grad_log H is parallel to r.
double log_gradient_misalignment(const MultiPoly& h, const std::vector<double>& z, const std::vector<double>& r);

struct FitReport {
  double slope = 0.0;
  double intercept = 0.0;
  /// Root-mean-square residual of the regression.
  double residual = 0.0;
  std::size_t points = 0;
  std::size_t n_min = 0;
  std::size_t n_max = 0;
};

/// Regression of log gamma_{n r} - n psi on log n over admissible n.
FitReport fit_correction(const CoefficientTable& t, const Direction& r, double psi, std::size_t n_min,
                         std::size_t n_max);

}  // namespace growth
