#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "growth/automaton.hpp"
#include "growth/polyalg.hpp"

namespace growth {

/// Assigns each alphabet symbol a series variable. Several symbols may share a
/// variable, e.g. a generator and its inverse.
struct VariableMap {
  std::vector<std::size_t> symbol_to_var;
  std::size_t nvars = 0;

  static VariableMap identity(std::size_t d);
  /// Symbol k and symbol k + m share variable k (free-group pairing).
  static VariableMap paired(std::size_t m);
};

PolyMatrix transfer_matrix(const Automaton& a, const VariableMap& vars);
PolyMatrix transfer_matrix(const Automaton& a);

/// G/H with H = det(I - A(z)), counting accepting paths. Dead states are pruned first.
RationalSeries growth_series(const Automaton& a, const VariableMap& vars,
                             std::size_t bound = kDefaultDeterminantBound);
RationalSeries growth_series(const Automaton& a);

enum class CountMode { exact, log_domain };

/// Coefficients gamma_i for all ||i||_1 <= max_total. Absent entries are zero.
class CoefficientTable {
 public:
  using ExactMap = std::map<Exponent, BigInt, GradedOrder>;
  using LogMap = std::map<Exponent, double, GradedOrder>;

  CoefficientTable(std::size_t d, CountMode mode, std::size_t max_total)
      : d_(d), mode_(mode), max_total_(max_total) {}

  std::size_t dimension() const { return d_; }
  CountMode mode() const { return mode_; }
  std::size_t max_total() const { return max_total_; }
  std::size_t size() const { return mode_ == CountMode::exact ? exact_.size() : logs_.size(); }

  void set_exact(const Exponent& i, const BigInt& count);
  void set_log(const Exponent& i, double log_count);

  BigInt exact(const Exponent& i) const;
  /// Natural log of gamma_i; -inf when gamma_i = 0.
  double log_count(const Exponent& i) const;
  bool contains(const Exponent& i) const;

  const ExactMap& exact_entries() const { return exact_; }
  const LogMap& log_entries() const { return logs_; }

  /// Lines "i1,...,id,count" or "i1,...,id,logcount" after a header row.
  std::string to_csv() const;

 private:
  std::size_t d_;
  CountMode mode_;
  std::size_t max_total_;
  ExactMap exact_;
  LogMap logs_;
};

/// Forward dynamic programming over (state, frequency vector), two layers at a time.
CoefficientTable coefficients_dp(const Automaton& a, const VariableMap& vars, std::size_t max_total,
                                 CountMode mode, std::size_t max_entries = 50'000'000);

/// Power-series coefficients of G/H by the recurrence gamma = G - (H - H(0)) gamma.
CoefficientTable series_coefficients(const RationalSeries& s, std::size_t max_total);

/// All exponent vectors of length d and total degree n in graded order.
std::vector<Exponent> layer_exponents(std::size_t d, std::size_t n);

struct CGReport {
  int a = 0;
  int b = 0;
  int range = 0;
  double c = 0.0;
  /// Minimal ratio as an exact fraction num/den.
  BigInt ratio_num = 0;
  BigInt ratio_den = 1;
  std::size_t pairs = 0;
  Exponent worst_x;
  Exponent worst_y;
  bool pass = false;
};

CGReport check_cg(const CoefficientTable& t, int a, int b, int range);

}  // namespace growth
