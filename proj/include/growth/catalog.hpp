#pragma once

#include <string>
#include <vector>

#include "growth/indicatrice.hpp"
#include "growth/polyalg.hpp"

namespace growth {

struct GroupParams {
  int m = 2;
  /// p_i = p(a_i) = p(a_i^{-1}); 2 sum p_i = 1. Empty when absent.
  std::vector<double> p;

  static GroupParams uniform(int m);
  void validate() const;
};

/// Elementary symmetric polynomial e_l(z_1..z_m).
MultiPoly elementary_symmetric(std::size_t m, std::size_t l);
/// R(z) = 1 - sum_l (2l - 1) e_l(z).
MultiPoly r_polynomial(int m);
/// prod (1 + z_i) / R(z), exact.
RationalSeries delta_free_group(int m);
/// Clears 1/(1 - 2 sum z_i/(1+z_i)) to prod(1+z_j) - 2 sum_i z_i prod_{j!=i}(1+z_j).
MultiPoly cleared_delta_denominator(int m);

struct IdentityCheck {
  std::string name;
  bool pass = false;
};

struct FmIdentityReport {
  int m = 0;
  std::vector<IdentityCheck> checks;
  bool pass() const;
};

/// Exact checks for the paired unambiguous free-group automaton of rank m.
FmIdentityReport verify_fm_identities(int m);

/// psi on the rank-3 denominator by the quartic in z = e^{theta_1}.
ExtendedValue psi_f3(const Direction& r);
/// All real roots of the quartic for r1 = p, r2 = q.
std::vector<double> f3_quartic_roots(double p, double q);
std::vector<double> f3_quartic_coefficients(double p, double q);

double chi_akemann(const GroupParams& g);
double chi_kesten(int m);
/// Normal-subgroup semantics evaluates the upper branch on (sqrt(2m-1), 2m-1];
/// Schreier semantics uses the plateau below sqrt(2m-1).
double chi_of_alpha(double alpha, int m, bool normal_subgroup = false);

struct Deg8Result {
  double x = 0.0;
  double t = 0.0;
  double chi = 0.0;
};
Deg8Result deg8_check(double p1, double p2);
std::vector<double> deg8_coefficients(double p1, double p2);

}  // namespace growth
