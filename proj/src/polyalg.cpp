#include "growth/polyalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "growth/error.hpp"

namespace growth {

std::uint64_t total_degree(const Exponent& e) {
  std::uint64_t s = 0;
  for (auto v : e) s += v;
  return s;
}

bool GradedOrder::operator()(const Exponent& a, const Exponent& b) const {
  const auto da = total_degree(a);
  const auto db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

MultiPoly MultiPoly::constant(std::size_t nvars, const BigInt& c) {
  MultiPoly p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw InvalidInput("variable index out of range");
  Exponent e(nvars, 0);
  e[index] = 1;
  return monomial(nvars, std::move(e), 1);
}

MultiPoly MultiPoly::monomial(std::size_t nvars, Exponent e, const BigInt& c) {
  if (e.size() != nvars) throw InvalidInput("exponent length does not match variable count");
  MultiPoly p(nvars);
  p.add_term(e, c);
  return p;
}

BigInt MultiPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? BigInt(0) : it->second;
}

BigInt MultiPoly::constant_term() const { return coefficient(Exponent(nvars_, 0)); }

std::uint64_t MultiPoly::total_degree() const {
  return terms_.empty() ? 0 : growth::total_degree(terms_.rbegin()->first);
}

std::uint32_t MultiPoly::degree_in(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

BigInt MultiPoly::content() const {
  BigInt g = 0;
  for (const auto& [e, c] : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  }
  return g;
}

void MultiPoly::add_term(const Exponent& e, const BigInt& c) {
  if (e.size() != nvars_) throw InvalidInput("exponent length does not match variable count");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void MultiPoly::check_vars(const MultiPoly& o) const {
  if (nvars_ != o.nvars_) throw InvalidInput("variable-count mismatch");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_vars(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_vars(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_vars(b);
  MultiPoly out(a.nvars_);
  if (a.is_zero() || b.is_zero()) return out;
  Exponent e(a.nvars_);
  BigInt prod;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      prod = ca * cb;
      out.add_term(e, prod);
    }
  }
  return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
  *this = *this * o;
  return *this;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

MultiPoly MultiPoly::scaled(const BigInt& c) const {
  MultiPoly out(nvars_);
  if (c == 0) return out;
  out.terms_ = terms_;
  for (auto& [e, v] : out.terms_) v *= c;
  return out;
}

MultiPoly MultiPoly::divided_exact(const BigInt& c) const {
  if (c == 0) throw InvalidInput("division by zero");
  MultiPoly out = *this;
  for (auto& [e, v] : out.terms_) {
    if (!mpz_divisible_p(v.get_mpz_t(), c.get_mpz_t())) {
      throw InvalidInput("coefficient not divisible");
    }
    mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
  }
  return out;
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
  if (var >= nvars_) throw InvalidInput("variable index out of range");
  MultiPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent d = e;
    d[var] -= 1;
    out.add_term(d, c * static_cast<unsigned long>(e[var]));
  }
  return out;
}

MultiPoly MultiPoly::without_variable(std::size_t var) const {
  MultiPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) out.terms_.emplace(e, c);
  }
  return out;
}

MultiPoly MultiPoly::remap(std::span<const std::size_t> mapping, std::size_t new_nvars) const {
  if (mapping.size() != nvars_) throw InvalidInput("variable map has wrong length");
  MultiPoly out(new_nvars);
  Exponent ne(new_nvars);
  for (const auto& [e, c] : terms_) {
    std::fill(ne.begin(), ne.end(), 0);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (mapping[i] >= new_nvars) throw InvalidInput("variable map target out of range");
      ne[mapping[i]] += e[i];
    }
    out.add_term(ne, c);
  }
  return out;
}

MultiPoly MultiPoly::drop_variable(std::size_t var) const {
  if (var >= nvars_) throw InvalidInput("variable index out of range");
  MultiPoly out(nvars_ - 1);
  for (const auto& [e, c] : terms_) {
    if (e[var] != 0) throw InvalidInput("cannot drop a variable that occurs in the polynomial");
    Exponent ne;
    ne.reserve(nvars_ - 1);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (i != var) ne.push_back(e[i]);
    }
    out.terms_.emplace(std::move(ne), c);
  }
  return out;
}

namespace {

// Neumaier summation.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

double monomial_value(const Exponent& e, std::span<const double> x) {
  double m = 1.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] != 0) m *= std::pow(x[i], static_cast<double>(e[i]));
  }
  return m;
}

}  // namespace

double MultiPoly::evaluate(std::span<const double> x) const {
  if (x.size() != nvars_) throw InvalidInput("evaluation point has wrong dimension");
  CompensatedSum acc;
  for (const auto& [e, c] : terms_) acc.add(c.get_d() * monomial_value(e, x));
  return acc.value();
}

std::vector<double> MultiPoly::gradient(std::span<const double> x) const {
  std::vector<double> g(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) g[i] = derivative(i).evaluate(x);
  return g;
}

std::string MultiPoly::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  auto name = [&](std::size_t i) {
    return i < names.size() ? names[i] : "z" + std::to_string(i + 1);
  };
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool negative = c < 0;
    BigInt mag = abs(c);
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    std::vector<std::string> factors;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      factors.push_back(e[i] == 1 ? name(i) : name(i) + "^" + std::to_string(e[i]));
    }
    if (factors.empty()) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    for (std::size_t k = 0; k < factors.size(); ++k) {
      if (k) os << "*";
      os << factors[k];
    }
  }
  return os.str();
}

MultiPoly poly_arith(ArithOp op, const MultiPoly& p, const MultiPoly& q) {
  switch (op) {
    case ArithOp::add: return p + q;
    case ArithOp::sub: return p - q;
    case ArithOp::mul: return p * q;
  }
  throw InvalidInput("unknown arithmetic operation");
}

std::optional<MultiPoly> exact_divide(const MultiPoly& p, const MultiPoly& q) {
  if (p.nvars() != q.nvars()) throw InvalidInput("variable-count mismatch");
  if (q.is_zero()) throw InvalidInput("division by the zero polynomial");
  const auto& [lq_exp, lq_coef] = *q.terms().rbegin();
  MultiPoly rem = p;
  MultiPoly quot(p.nvars());
  while (!rem.is_zero()) {
    const auto [lr_exp, lr_coef] = *rem.terms().rbegin();
    Exponent diff(p.nvars());
    for (std::size_t i = 0; i < diff.size(); ++i) {
      if (lr_exp[i] < lq_exp[i]) return std::nullopt;
      diff[i] = lr_exp[i] - lq_exp[i];
    }
    if (!mpz_divisible_p(lr_coef.get_mpz_t(), lq_coef.get_mpz_t())) return std::nullopt;
    BigInt c;
    mpz_divexact(c.get_mpz_t(), lr_coef.get_mpz_t(), lq_coef.get_mpz_t());
    MultiPoly t = MultiPoly::monomial(p.nvars(), diff, c);
    quot += t;
    rem -= t * q;
  }
  return quot;
}

PolyMatrix::PolyMatrix(std::size_t n, std::size_t nvars)
    : n_(n), nvars_(nvars), cells_(n * n, MultiPoly(nvars)) {}

PolyMatrix PolyMatrix::identity(std::size_t n, std::size_t nvars) {
  PolyMatrix m(n, nvars);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = MultiPoly::constant(nvars, 1);
  return m;
}

PolyMatrix PolyMatrix::without(std::size_t row, std::size_t col) const {
  if (row >= n_ || col >= n_) throw InvalidInput("minor index out of range");
  PolyMatrix out(n_ - 1, nvars_);
  for (std::size_t i = 0, oi = 0; i < n_; ++i) {
    if (i == row) continue;
    for (std::size_t j = 0, oj = 0; j < n_; ++j) {
      if (j == col) continue;
      out.at(oi, oj) = at(i, j);
      ++oj;
    }
    ++oi;
  }
  return out;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.n_ != b.n_ || a.nvars_ != b.nvars_) throw InvalidInput("matrix shape mismatch");
  PolyMatrix out(a.n_, a.nvars_);
  for (std::size_t k = 0; k < a.cells_.size(); ++k) out.cells_[k] = a.cells_[k] - b.cells_[k];
  return out;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.n_ != b.n_ || a.nvars_ != b.nvars_) throw InvalidInput("matrix shape mismatch");
  PolyMatrix out(a.n_, a.nvars_);
  for (std::size_t i = 0; i < a.n_; ++i)
    for (std::size_t j = 0; j < a.n_; ++j)
      for (std::size_t k = 0; k < a.n_; ++k) out.at(i, j) += a.at(i, k) * b.at(k, j);
  return out;
}

MultiPoly det_poly_matrix(const PolyMatrix& m, std::size_t bound) {
  const std::size_t n = m.size();
  if (n > bound) {
    throw SizeBoundExceeded("matrix order " + std::to_string(n) + " exceeds determinant bound " +
                            std::to_string(bound));
  }
  if (n == 0) return MultiPoly::constant(m.nvars(), 1);
  // partial[S]: signed sum over injections of the first |S| rows onto column set S.
  std::vector<MultiPoly> partial(std::size_t{1} << n, MultiPoly(m.nvars()));
  partial[0] = MultiPoly::constant(m.nvars(), 1);
  for (std::size_t mask = 0; mask + 1 < partial.size(); ++mask) {
    if (partial[mask].is_zero()) continue;
    const auto row = static_cast<std::size_t>(std::popcount(mask));
    for (std::size_t col = 0; col < n; ++col) {
      if (mask & (std::size_t{1} << col)) continue;
      const MultiPoly& entry = m.at(row, col);
      if (entry.is_zero()) continue;
      const int above = std::popcount(mask >> (col + 1));
      MultiPoly term = entry * partial[mask];
      if (above % 2) term = -term;
      partial[mask | (std::size_t{1} << col)] += term;
    }
    partial[mask] = MultiPoly(m.nvars());
  }
  return partial.back();
}

MultiPoly minor(const PolyMatrix& m, std::size_t row, std::size_t col, std::size_t bound) {
  return det_poly_matrix(m.without(row, col), bound);
}

void RationalSeries::normalize() {
  BigInt g = denominator.content();
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), numerator.content().get_mpz_t());
  if (g == 0) return;
  if (denominator.constant_term() < 0) g = -g;
  if (g != 1) {
    numerator = numerator.divided_exact(g);
    denominator = denominator.divided_exact(g);
  }
}

std::string RationalSeries::to_string(std::span<const std::string> names) const {
  return "(" + numerator.to_string(names) + ") / (" + denominator.to_string(names) + ")";
}

RationalSeries cancel_binomial_factors(RationalSeries s) {
  const std::size_t d = s.nvars();
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < d; ++i) {
      for (int sign : {-1, 1}) {
        MultiPoly f = MultiPoly::constant(d, 1);
        MultiPoly z = MultiPoly::variable(d, i);
        f = sign < 0 ? f - z : f + z;
        auto qn = exact_divide(s.numerator, f);
        if (!qn) continue;
        auto qd = exact_divide(s.denominator, f);
        if (!qd) continue;
        s.numerator = std::move(*qn);
        s.denominator = std::move(*qd);
        progress = true;
      }
    }
  }
  s.normalize();
  return s;
}

std::string exponent_key(const Exponent& e) {
  std::string key;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) key += ',';
    key += std::to_string(e[i]);
  }
  return key;
}

nlohmann::ordered_json poly_to_json(const MultiPoly& p) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [e, c] : p.terms()) j[exponent_key(e)] = c.get_str();
  return j;
}

MultiPoly poly_from_json(const nlohmann::json& j, std::size_t nvars) {
  if (!j.is_object()) throw InvalidInput("polynomial must be a JSON object");
  MultiPoly p(nvars);
  for (const auto& [key, value] : j.items()) {
    Exponent e;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) {
      try {
        std::size_t used = 0;
        const long v = std::stol(part, &used);
        if (used != part.size() || v < 0) throw InvalidInput("");
        e.push_back(static_cast<std::uint32_t>(v));
      } catch (const std::exception&) {
        throw InvalidInput("bad exponent key '" + key + "'");
      }
    }
    if (e.size() != nvars) throw InvalidInput("exponent key '" + key + "' has wrong length");
    if (!value.is_string()) throw InvalidInput("coefficient for '" + key + "' must be a string");
    BigInt c;
    if (c.set_str(value.get<std::string>(), 10) != 0) {
      throw InvalidInput("bad integer coefficient for '" + key + "'");
    }
    p.add_term(e, c);
  }
  return p;
}

}  // namespace growth
