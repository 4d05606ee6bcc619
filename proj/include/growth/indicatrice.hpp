#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "growth/automaton.hpp"
#include "growth/polyalg.hpp"
#include "growth/series.hpp"

namespace growth {

/// Point of the probability simplex.
class Direction {
 public:
  explicit Direction(std::vector<double> r);
  /// Divides by the sum; entries must be non-negative with positive sum.
  static Direction normalized(std::vector<double> w);

  std::size_t dim() const { return r_.size(); }
  double operator[](std::size_t i) const { return r_[i]; }
  const std::vector<double>& values() const { return r_; }
  bool interior() const;

 private:
  std::vector<double> r_;
};

enum class PsiMethod { boundary, tmap, empirical, closed_form };
const char* method_name(PsiMethod m);

/// A value in R or -inf, with the boundary point theta* when one is attained.
struct ExtendedValue {
  double value = 0.0;
  bool neg_infinity = false;
  std::optional<std::vector<double>> minimizer;
  PsiMethod method = PsiMethod::boundary;

  static ExtendedValue finite(double v, PsiMethod m, std::optional<std::vector<double>> theta = std::nullopt);
  static ExtendedValue minus_infinity(PsiMethod m);
  bool is_finite() const { return !neg_infinity; }
  /// value, or -inf.
  double as_double() const;
};

struct PsiOptions {
  double tol = 1e-12;
  int max_iter = 500;
};

/// inf of <r, theta> over {H(e^{-theta}) = 0}, for H = 1 - P with P having
/// non-negative coefficients. Zero entries of r drop the matching variables.
ExtendedValue psi_boundary(const MultiPoly& h, const Direction& r, const PsiOptions& opt = {});

/// min over w of sum_j r_j [log sum_i m_ij e^{w_i} - w_j]; -inf when unbounded.
/// Shared by the T-map route (m = adjacency) and the Sanov route (m = P).
struct LogRatioResult {
  ExtendedValue value;
  std::vector<double> w;
};
LogRatioResult log_ratio_min(const std::vector<double>& m, std::size_t n, const std::vector<double>& r,
                             const PsiOptions& opt = {});

/// T-map route. Needs an ergodic vertex-labelled automaton with 0/1 adjacency
/// whose state labels are a bijection onto the alphabet; r is indexed by symbol.
/// The minimizer reported is s* = T(q*).
ExtendedValue psi_tmap(const Automaton& a, const Direction& r, const PsiOptions& opt = {});

struct EmpiricalOptions {
  double cone_eps = 0.05;
  std::size_t window = 5;
  std::size_t min_table = 20;
};

ExtendedValue psi_empirical(const CoefficientTable& t, const Direction& r, const EmpiricalOptions& opt = {});

enum class ClosedForm { f2_delta, fibonacci, free_monoid };
ExtendedValue psi_closed_form(ClosedForm name, const Direction& r);

/// Shannon entropy -sum r_i log r_i with 0 log 0 = 0.
double shannon_entropy(const std::vector<double>& r);

struct AmoebaOptions {
  double s_min = -2.0;
  double s_max = 6.0;
};

/// Points (s, t) with H(e^{-s}, e^{-t}) = 0, sweeping s over a uniform grid and
/// taking the smallest positive root in z2.
std::vector<std::pair<double, double>> amoeba_slice(const MultiPoly& h, int grid, const AmoebaOptions& opt = {});

/// Positive real roots of sum_k c_k y^k, ascending.
std::vector<double> positive_roots(const std::vector<double>& coeffs);

}  // namespace growth
