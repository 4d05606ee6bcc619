#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace growth {

using BigInt = mpz_class;
using Exponent = std::vector<std::uint32_t>;

std::uint64_t total_degree(const Exponent& e);

/// Graded order used for every canonical listing: ascending total degree,
/// then lexicographically descending so that z1 is listed before z2.
struct GradedOrder {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Sparse multivariate polynomial with arbitrary-precision integer coefficients.
/// Zero coefficients are never stored.
class MultiPoly {
 public:
  using TermMap = std::map<Exponent, BigInt, GradedOrder>;

  MultiPoly() = default;
  explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

  static MultiPoly constant(std::size_t nvars, const BigInt& c);
  static MultiPoly variable(std::size_t nvars, std::size_t index);
  static MultiPoly monomial(std::size_t nvars, Exponent e, const BigInt& c);

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  BigInt coefficient(const Exponent& e) const;
  BigInt constant_term() const;
  std::uint64_t total_degree() const;
  std::uint32_t degree_in(std::size_t var) const;
  /// Positive gcd of all coefficients; 0 for the zero polynomial.
  BigInt content() const;

  void add_term(const Exponent& e, const BigInt& c);

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly operator-() const;
  MultiPoly scaled(const BigInt& c) const;
  /// Divides every coefficient by c; c must divide the content.
  MultiPoly divided_exact(const BigInt& c) const;

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  MultiPoly derivative(std::size_t var) const;
  /// Sets z_var = 0, keeping the variable count.
  MultiPoly without_variable(std::size_t var) const;
  /// Re-indexes variables: old variable i becomes new variable mapping[i].
  /// Several old variables may share a new one (their exponents add).
  MultiPoly remap(std::span<const std::size_t> mapping, std::size_t new_nvars) const;
  /// Removes variable `var`, which must not occur in any term.
  MultiPoly drop_variable(std::size_t var) const;

  /// Evaluates with Neumaier-compensated summation over terms.
  double evaluate(std::span<const double> x) const;
  std::vector<double> gradient(std::span<const double> x) const;

  /// Normal form such as "1 - z1 - z1*z2". Default names are z1..zd.
  std::string to_string(std::span<const std::string> names = {}) const;

 private:
  void check_vars(const MultiPoly& o) const;

  std::size_t nvars_ = 0;
  TermMap terms_;
};

enum class ArithOp { add, sub, mul };
MultiPoly poly_arith(ArithOp op, const MultiPoly& p, const MultiPoly& q);

/// Exact quotient p / q if q divides p, otherwise nullopt.
std::optional<MultiPoly> exact_divide(const MultiPoly& p, const MultiPoly& q);

/// Square matrix of polynomials sharing one variable count.
class PolyMatrix {
 public:
  PolyMatrix(std::size_t n, std::size_t nvars);

  std::size_t size() const { return n_; }
  std::size_t nvars() const { return nvars_; }
  MultiPoly& at(std::size_t i, std::size_t j) { return cells_[i * n_ + j]; }
  const MultiPoly& at(std::size_t i, std::size_t j) const { return cells_[i * n_ + j]; }

  static PolyMatrix identity(std::size_t n, std::size_t nvars);
  PolyMatrix without(std::size_t row, std::size_t col) const;
  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);

 private:
  std::size_t n_;
  std::size_t nvars_;
  std::vector<MultiPoly> cells_;
};

inline constexpr std::size_t kDefaultDeterminantBound = 12;

/// Exact determinant by expansion over column subsets (2^n * n products).
MultiPoly det_poly_matrix(const PolyMatrix& m, std::size_t bound = kDefaultDeterminantBound);

/// Determinant of m with row `row` and column `col` removed (0-based).
MultiPoly minor(const PolyMatrix& m, std::size_t row, std::size_t col,
                std::size_t bound = kDefaultDeterminantBound);

/// Rational function G/H whose power-series expansion at 0 exists.
struct RationalSeries {
  MultiPoly numerator;
  MultiPoly denominator;

  std::size_t nvars() const { return denominator.nvars(); }
  /// Removes the joint integer content and makes H(0) positive.
  void normalize();
  std::string to_string(std::span<const std::string> names = {}) const;
  friend bool operator==(const RationalSeries&, const RationalSeries&) = default;
};

/// Cancels common factors of the form (1 - z_i) and (1 + z_i) by trial division.
RationalSeries cancel_binomial_factors(RationalSeries s);

/// Serialization: object mapping "i1,...,id" to decimal integer strings.
nlohmann::ordered_json poly_to_json(const MultiPoly& p);
MultiPoly poly_from_json(const nlohmann::json& j, std::size_t nvars);

std::string exponent_key(const Exponent& e);

}  // namespace growth
