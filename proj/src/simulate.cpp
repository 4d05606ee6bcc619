#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Dense>

#include "growth/error.hpp"
#include "growth/spectral.hpp"

namespace growth {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t draw(const std::vector<double>& cdf, double u) {
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

std::vector<double> cumulative(const double* w, std::size_t n) {
  std::vector<double> c(n);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s += w[i];
    c[i] = s;
  }
  for (double& x : c) x /= s;
  return c;
}

// Label frequencies of the stationary law of the tilted chain, plus the chain.
struct Tilted {
  Matrix q;
  std::vector<double> freq;
};

Tilted tilt_chain(const Matrix& p, const std::vector<std::size_t>& labels, std::size_t d,
                  const std::vector<double>& y) {
  Matrix pi = p;
  for (std::size_t i = 0; i < p.n; ++i)
    for (std::size_t j = 0; j < p.n; ++j) pi.at(i, j) *= std::exp(y[labels[j]]);
  const SpectralData sd = perron(pi, 1e-15);
  Tilted t;
  t.q = pi;
  for (std::size_t i = 0; i < p.n; ++i)
    for (std::size_t j = 0; j < p.n; ++j) t.q.at(i, j) = pi.at(i, j) * sd.v[j] / (sd.rho * sd.v[i]);
  t.freq.assign(d, 0.0);
  for (std::size_t i = 0; i < p.n; ++i) t.freq[labels[i]] += sd.u[i] * sd.v[i];
  return t;
}

// Tilt y (last coordinate 0) whose tilted chain has label frequencies r.
std::vector<double> solve_tilt(const Matrix& p, const std::vector<std::size_t>& labels, std::size_t d,
                               const Direction& r) {
  std::vector<double> y(d, 0.0);
  const auto k = static_cast<Eigen::Index>(d) - 1;
  if (k == 0) return y;
  auto residual = [&](const std::vector<double>& yy) {
    const Tilted t = tilt_chain(p, labels, d, yy);
    Eigen::VectorXd f(k);
    for (Eigen::Index i = 0; i < k; ++i) f[i] = t.freq[static_cast<std::size_t>(i)] - r[static_cast<std::size_t>(i)];
    return f;
  };
  for (int it = 0; it < 100; ++it) {
    const Eigen::VectorXd f = residual(y);
    if (f.lpNorm<Eigen::Infinity>() < 1e-11) break;
    Eigen::MatrixXd jac(k, k);
    const double h = 1e-6;
    for (Eigen::Index c = 0; c < k; ++c) {
      auto yp = y, ym = y;
      yp[static_cast<std::size_t>(c)] += h;
      ym[static_cast<std::size_t>(c)] -= h;
      jac.col(c) = (residual(yp) - residual(ym)) / (2 * h);
    }
    Eigen::VectorXd step = jac.fullPivLu().solve(-f);
    const double cap = 2.0;
    if (step.lpNorm<Eigen::Infinity>() > cap) step *= cap / step.lpNorm<Eigen::Infinity>();
    double alpha = 1.0;
    const double f0 = f.norm();
    for (int ls = 0; ls < 40; ++ls) {
      auto trial = y;
      for (Eigen::Index i = 0; i < k; ++i) trial[static_cast<std::size_t>(i)] += alpha * step[i];
      if (residual(trial).norm() < f0) {
        y = trial;
        break;
      }
      alpha *= 0.5;
    }
  }
  return y;
}

}  // namespace

LdpEstimate simulate_ldp(const SpectralData& s, const std::vector<std::size_t>& labels, std::size_t d,
                         const Direction& r, int n, int trials, double window, std::uint64_t seed,
                         SamplingMode mode) {
  if (!(window > 0) || !std::isfinite(window)) throw InvalidInput("window must be positive");
  if (n < 1) throw InvalidInput("path length must be positive");
  if (trials < 1) throw InvalidInput("trials must be positive");
  if (static_cast<double>(n) * trials > 5e9) throw InvalidInput("simulation budget exceeded");
  const std::size_t ns = s.p.n;
  if (labels.size() != ns) throw InvalidInput("one label per state required");
  if (r.dim() != d) throw InvalidInput("direction dimension does not match the label count");
  for (auto l : labels)
    if (l >= d) throw InvalidInput("label out of range");

  LdpEstimate est;
  est.mode = mode;
  est.seed = seed;
  est.n = n;
  est.trials = trials;
  est.window = window;

  Matrix q = s.p;
  if (mode == SamplingMode::tilted) {
    est.tilt = solve_tilt(s.p, labels, d, r);
    q = tilt_chain(s.p, labels, d, est.tilt).q;
  }
  std::vector<std::vector<double>> rows(ns);
  for (std::size_t i = 0; i < ns; ++i) rows[i] = cumulative(&q.a[i * ns], ns);
  const auto start = cumulative(s.stationary.data(), ns);

  std::vector<double> log_weights;
  std::vector<double> counts(d);
  for (int trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(trial))));
    std::fill(counts.begin(), counts.end(), 0.0);
    std::size_t x = draw(start, uniform(rng));
    counts[labels[x]] += 1;
    double log_lr = 0.0;
    for (int k = 1; k < n; ++k) {
      const std::size_t y = draw(rows[x], uniform(rng));
      if (mode == SamplingMode::tilted) log_lr += std::log(s.p.at(x, y)) - std::log(q.at(x, y));
      counts[labels[y]] += 1;
      x = y;
    }
    double dist = 0.0;
    for (std::size_t c = 0; c < d; ++c) dist += std::abs(counts[c] / n - r[c]);
    if (dist <= window) {
      ++est.hits;
      log_weights.push_back(log_lr);
    }
  }
  const double nd = static_cast<double>(n);
  const double tt = static_cast<double>(trials);
  if (est.hits == 0) {
    est.no_hits = true;
    est.probability = 0.0;
    est.rate = kInf;
    est.rate_lo = -std::log(1.0 - std::pow(0.05, 1.0 / tt)) / nd;
    est.rate_hi = kInf;
    return est;
  }
  est.no_hits = false;
  constexpr double z = 1.959963984540054;
  if (mode == SamplingMode::direct) {
    const double ph = static_cast<double>(est.hits) / tt;
    const double denom = 1 + z * z / tt;
    const double center = (ph + z * z / (2 * tt)) / denom;
    const double half = z * std::sqrt(ph * (1 - ph) / tt + z * z / (4 * tt * tt)) / denom;
    est.probability = ph;
    est.rate = -std::log(ph) / nd;
    est.rate_lo = -std::log(std::min(1.0, center + half)) / nd;
    est.rate_hi = center - half > 0 ? -std::log(center - half) / nd : kInf;
    return est;
  }
  const double wmax = *std::max_element(log_weights.begin(), log_weights.end());
  double s1 = 0.0, s2 = 0.0;
  for (double lw : log_weights) {
    const double w = std::exp(lw - wmax);
    s1 += w;
    s2 += w * w;
  }
  const double mean = s1 / tt;
  const double var = std::max(0.0, s2 / tt - mean * mean);
  const double half = z * std::sqrt(var / tt);
  const double log_mean = std::log(mean) + wmax;
  est.probability = std::exp(log_mean);
  est.rate = -log_mean / nd;
  est.rate_lo = -(std::log(mean + half) + wmax) / nd;
  est.rate_hi = mean - half > 0 ? -(std::log(mean - half) + wmax) / nd : kInf;
  return est;
}

}  // namespace growth
