#include "growth/series.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "growth/error.hpp"
#include "growth/format.hpp"
#include "growth/kernels.hpp"

namespace growth {

VariableMap VariableMap::identity(std::size_t d) {
  VariableMap v;
  v.nvars = d;
  for (std::size_t i = 0; i < d; ++i) v.symbol_to_var.push_back(i);
  return v;
}

VariableMap VariableMap::paired(std::size_t m) {
  VariableMap v;
  v.nvars = m;
  for (std::size_t i = 0; i < 2 * m; ++i) v.symbol_to_var.push_back(i % m);
  return v;
}

namespace {

void check_map(const Automaton& a, const VariableMap& vars) {
  if (vars.symbol_to_var.size() != a.num_symbols()) {
    throw InvalidInput("variable map does not cover the alphabet");
  }
  for (auto v : vars.symbol_to_var)
    if (v >= vars.nvars) throw InvalidInput("variable map target out of range");
}

}  // namespace

PolyMatrix transfer_matrix(const Automaton& a, const VariableMap& vars) {
  check_map(a, vars);
  PolyMatrix m(a.num_states(), vars.nvars);
  for (const auto& t : a.transitions()) {
    m.at(t.from, t.to) += MultiPoly::variable(vars.nvars, vars.symbol_to_var[t.symbol]);
  }
  return m;
}

PolyMatrix transfer_matrix(const Automaton& a) {
  return transfer_matrix(a, VariableMap::identity(a.num_symbols()));
}

RationalSeries growth_series(const Automaton& a, const VariableMap& vars, std::size_t bound) {
  check_map(a, vars);
  const Automaton pruned = prune_dead_states(a);
  const std::size_t n = pruned.num_states();
  if (n > bound) {
    throw SizeBoundExceeded("automaton has " + std::to_string(n) + " live states; determinant bound is " +
                            std::to_string(bound));
  }
  const PolyMatrix m = PolyMatrix::identity(n, vars.nvars) - transfer_matrix(pruned, vars);
  RationalSeries s;
  s.denominator = det_poly_matrix(m, bound);
  s.numerator = MultiPoly(vars.nvars);
  // (I - A)^{-1}_{st} = (-1)^{s+t} minor(t, s) / det.
  for (auto init : pruned.initial()) {
    for (auto fin : pruned.final_states()) {
      MultiPoly c = minor(m, fin, init, bound);
      if ((init + fin) % 2) c = -c;
      s.numerator += c;
    }
  }
  s.normalize();
  return s;
}

RationalSeries growth_series(const Automaton& a) {
  return growth_series(a, VariableMap::identity(a.num_symbols()));
}

void CoefficientTable::set_exact(const Exponent& i, const BigInt& count) {
  if (mode_ != CountMode::exact) throw InvalidInput("table is not in exact mode");
  if (count == 0) {
    exact_.erase(i);
  } else {
    exact_[i] = count;
  }
}

void CoefficientTable::set_log(const Exponent& i, double log_count) {
  if (mode_ != CountMode::log_domain) throw InvalidInput("table is not in log mode");
  if (std::isinf(log_count) && log_count < 0) {
    logs_.erase(i);
  } else {
    logs_[i] = log_count;
  }
}

BigInt CoefficientTable::exact(const Exponent& i) const {
  if (mode_ != CountMode::exact) throw InvalidInput("table is not in exact mode");
  auto it = exact_.find(i);
  return it == exact_.end() ? BigInt(0) : it->second;
}

namespace {

double log_of(const BigInt& v) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

}  // namespace

double CoefficientTable::log_count(const Exponent& i) const {
  if (mode_ == CountMode::exact) {
    auto it = exact_.find(i);
    return it == exact_.end() ? -std::numeric_limits<double>::infinity() : log_of(it->second);
  }
  auto it = logs_.find(i);
  return it == logs_.end() ? -std::numeric_limits<double>::infinity() : it->second;
}

bool CoefficientTable::contains(const Exponent& i) const {
  return mode_ == CountMode::exact ? exact_.count(i) > 0 : logs_.count(i) > 0;
}

std::string CoefficientTable::to_csv() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < d_; ++k) os << "i" << (k + 1) << ",";
  os << (mode_ == CountMode::exact ? "count" : "logcount") << "\n";
  if (mode_ == CountMode::exact) {
    for (const auto& [e, c] : exact_) os << exponent_key(e) << "," << c.get_str() << "\n";
  } else {
    for (const auto& [e, v] : logs_) os << exponent_key(e) << "," << format_double(v) << "\n";
  }
  return os.str();
}

namespace {

void fill_layer(std::size_t d, std::size_t remaining, Exponent& cur, std::size_t pos,
                std::vector<Exponent>& out) {
  if (pos + 1 == d) {
    cur[pos] = static_cast<std::uint32_t>(remaining);
    out.push_back(cur);
    return;
  }
  for (std::size_t v = remaining + 1; v-- > 0;) {
    cur[pos] = static_cast<std::uint32_t>(v);
    fill_layer(d, remaining - v, cur, pos + 1, out);
  }
}

BigInt binomial(std::size_t n, std::size_t k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

struct Run {
  std::size_t src;
  std::size_t dst;
  std::size_t len;
};

// Index map from layer n to layer n+1 under adding e_var, as contiguous runs.
std::vector<Run> shift_runs(const std::vector<Exponent>& from, const std::map<Exponent, std::size_t>& to_index,
                            std::size_t var) {
  std::vector<Run> runs;
  Exponent e;
  for (std::size_t k = 0; k < from.size(); ++k) {
    e = from[k];
    e[var] += 1;
    const std::size_t dst = to_index.at(e);
    if (!runs.empty() && runs.back().src + runs.back().len == k && runs.back().dst + runs.back().len == dst) {
      ++runs.back().len;
    } else {
      runs.push_back({k, dst, 1});
    }
  }
  return runs;
}

struct EdgeGroup {
  std::size_t from;
  std::size_t to;
  std::size_t var;
  std::uint64_t multiplicity;
};

std::vector<EdgeGroup> group_edges(const Automaton& a, const VariableMap& vars) {
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::uint64_t> counts;
  for (const auto& t : a.transitions()) counts[{t.from, t.to, vars.symbol_to_var[t.symbol]}] += 1;
  std::vector<EdgeGroup> out;
  for (const auto& [key, c] : counts) out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), c});
  return out;
}

}  // namespace

std::vector<Exponent> layer_exponents(std::size_t d, std::size_t n) {
  std::vector<Exponent> out;
  if (d == 0) return out;
  Exponent cur(d, 0);
  fill_layer(d, n, cur, 0, out);
  return out;
}

CoefficientTable coefficients_dp(const Automaton& a, const VariableMap& vars, std::size_t max_total,
                                 CountMode mode, std::size_t max_entries) {
  check_map(a, vars);
  const std::size_t d = vars.nvars;
  const BigInt total = binomial(max_total + d, d);
  if (total > BigInt(static_cast<unsigned long>(max_entries))) {
    throw SizeBoundExceeded("coefficient table would hold " + total.get_str() + " vectors; bound is " +
                            std::to_string(max_entries));
  }
  const std::size_t n_states = a.num_states();
  const auto edges = group_edges(a, vars);
  CoefficientTable table(d, mode, max_total);

  std::vector<Exponent> layer = layer_exponents(d, 0);
  constexpr double ninf = -std::numeric_limits<double>::infinity();
  std::vector<std::vector<BigInt>> exact_cur;
  std::vector<std::vector<double>> log_cur;
  if (mode == CountMode::exact) {
    exact_cur.assign(n_states, std::vector<BigInt>(1, 0));
    for (auto s : a.initial()) exact_cur[s][0] = 1;
  } else {
    log_cur.assign(n_states, std::vector<double>(1, ninf));
    for (auto s : a.initial()) log_cur[s][0] = 0.0;
  }

  for (std::size_t n = 0;; ++n) {
    for (std::size_t k = 0; k < layer.size(); ++k) {
      if (mode == CountMode::exact) {
        BigInt sum = 0;
        for (auto f : a.final_states()) sum += exact_cur[f][k];
        if (sum != 0) table.set_exact(layer[k], sum);
      } else {
        double acc = ninf;
        for (auto f : a.final_states()) kernels::log_accumulate(&acc, &log_cur[f][k], 1, 0.0);
        if (acc != ninf) table.set_log(layer[k], acc);
      }
    }
    if (n == max_total) break;

    std::vector<Exponent> next = layer_exponents(d, n + 1);
    std::map<Exponent, std::size_t> next_index;
    for (std::size_t k = 0; k < next.size(); ++k) next_index.emplace(next[k], k);
    std::vector<std::vector<Run>> runs(d);
    for (std::size_t v = 0; v < d; ++v) runs[v] = shift_runs(layer, next_index, v);

    if (mode == CountMode::exact) {
      std::vector<std::vector<BigInt>> nxt(n_states, std::vector<BigInt>(next.size(), 0));
      for (const auto& e : edges) {
        const auto& src = exact_cur[e.from];
        auto& dst = nxt[e.to];
        for (const auto& r : runs[e.var]) {
          for (std::size_t k = 0; k < r.len; ++k) {
            const BigInt& val = src[r.src + k];
            if (val == 0) continue;
            if (e.multiplicity == 1) {
              dst[r.dst + k] += val;
            } else {
              dst[r.dst + k] += val * static_cast<unsigned long>(e.multiplicity);
            }
          }
        }
      }
      exact_cur = std::move(nxt);
    } else {
      std::vector<std::vector<double>> nxt(n_states, std::vector<double>(next.size(), ninf));
      for (const auto& e : edges) {
        const double shift = std::log(static_cast<double>(e.multiplicity));
        const auto& src = log_cur[e.from];
        auto& dst = nxt[e.to];
        for (const auto& r : runs[e.var]) {
          kernels::log_accumulate(dst.data() + r.dst, src.data() + r.src, r.len, shift);
        }
      }
      log_cur = std::move(nxt);
    }
    layer = std::move(next);
  }
  return table;
}

CoefficientTable series_coefficients(const RationalSeries& s, std::size_t max_total) {
  const std::size_t d = s.nvars();
  const BigInt h0 = s.denominator.constant_term();
  if (h0 == 0) throw InvalidInput("denominator vanishes at the origin");
  CoefficientTable table(d, CountMode::exact, max_total);
  std::map<Exponent, BigInt, GradedOrder> gamma;
  std::vector<std::pair<Exponent, BigInt>> tail;
  for (const auto& [e, c] : s.denominator.terms())
    if (total_degree(e) > 0) tail.emplace_back(e, c);

  Exponent prev(d);
  for (std::size_t n = 0; n <= max_total; ++n) {
    for (const auto& i : layer_exponents(d, n)) {
      BigInt acc = s.numerator.coefficient(i);
      for (const auto& [alpha, h] : tail) {
        bool fits = true;
        for (std::size_t k = 0; k < d; ++k) {
          if (alpha[k] > i[k]) {
            fits = false;
            break;
          }
          prev[k] = i[k] - alpha[k];
        }
        if (!fits) continue;
        auto it = gamma.find(prev);
        if (it != gamma.end()) acc -= h * it->second;
      }
      if (acc == 0) continue;
      if (!mpz_divisible_p(acc.get_mpz_t(), h0.get_mpz_t())) {
        throw InvalidInput("series has non-integer coefficient at " + exponent_key(i));
      }
      mpz_divexact(acc.get_mpz_t(), acc.get_mpz_t(), h0.get_mpz_t());
      if (acc < 0) throw InvalidInput("series has negative coefficient at " + exponent_key(i));
      gamma.emplace(i, acc);
      table.set_exact(i, acc);
    }
  }
  return table;
}

namespace {

struct Fraction {
  BigInt num;
  BigInt den;
  bool less_than(const Fraction& o) const { return num * o.den < o.num * den; }
};

void ball_offsets(std::size_t d, int radius, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (cur.size() == d) {
    out.push_back(cur);
    return;
  }
  int used = 0;
  for (int v : cur) used += std::abs(v);
  for (int v = -(radius - used); v <= radius - used; ++v) {
    cur.push_back(v);
    ball_offsets(d, radius, cur, out);
    cur.pop_back();
  }
}

std::vector<Exponent> points_up_to(std::size_t d, std::size_t n) {
  std::vector<Exponent> out;
  for (std::size_t k = 0; k <= n; ++k) {
    auto layer = layer_exponents(d, k);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

BigInt ball_mass(const CoefficientTable& t, const Exponent& center, const std::vector<std::vector<int>>& offsets) {
  BigInt sum = 0;
  Exponent p(center.size());
  for (const auto& off : offsets) {
    bool ok = true;
    for (std::size_t k = 0; k < center.size(); ++k) {
      const long v = static_cast<long>(center[k]) + off[k];
      if (v < 0) {
        ok = false;
        break;
      }
      p[k] = static_cast<std::uint32_t>(v);
    }
    if (ok) sum += t.exact(p);
  }
  return sum;
}

}  // namespace

CGReport check_cg(const CoefficientTable& t, int a, int b, int range) {
  if (t.mode() != CountMode::exact) throw InvalidInput("condition check needs an exact table");
  if (a < 0 || b < 0 || range < 0) throw InvalidInput("radii and range must be non-negative");
  if (static_cast<std::size_t>(2 * range + std::max(a, b)) > t.max_total()) {
    throw InvalidInput("coefficient table too small for the requested range");
  }
  const std::size_t d = t.dimension();
  std::vector<std::vector<int>> off_a, off_b;
  std::vector<int> scratch;
  ball_offsets(d, a, scratch, off_a);
  ball_offsets(d, b, scratch, off_b);

  const auto small = points_up_to(d, static_cast<std::size_t>(range));
  std::vector<BigInt> mass_b;
  for (const auto& x : small) mass_b.push_back(ball_mass(t, x, off_b));
  std::map<Exponent, BigInt> mass_a;

  CGReport rep;
  rep.a = a;
  rep.b = b;
  rep.range = range;
  std::optional<Fraction> worst;
  Exponent sum(d);
  for (std::size_t i = 0; i < small.size(); ++i) {
    if (mass_b[i] == 0) continue;
    for (std::size_t j = 0; j < small.size(); ++j) {
      if (mass_b[j] == 0) continue;
      for (std::size_t k = 0; k < d; ++k) sum[k] = small[i][k] + small[j][k];
      auto it = mass_a.find(sum);
      if (it == mass_a.end()) it = mass_a.emplace(sum, ball_mass(t, sum, off_a)).first;
      Fraction f{it->second, mass_b[i] * mass_b[j]};
      ++rep.pairs;
      if (!worst || f.less_than(*worst)) {
        worst = f;
        rep.worst_x = small[i];
        rep.worst_y = small[j];
      }
    }
  }
  if (!worst) {
    rep.pass = true;
    rep.c = std::numeric_limits<double>::infinity();
    return rep;
  }
  BigInt g;
  mpz_gcd(g.get_mpz_t(), worst->num.get_mpz_t(), worst->den.get_mpz_t());
  if (g != 0 && g != 1) {
    worst->num /= g;
    worst->den /= g;
  }
  rep.ratio_num = worst->num;
  rep.ratio_den = worst->den;
  mpq_class q(worst->num, worst->den);
  rep.c = q.get_d();
  rep.pass = worst->num > 0;
  return rep;
}

}  // namespace growth
