#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "growth/automaton.hpp"
#include "growth/indicatrice.hpp"

namespace growth {

/// Dense row-major square matrix of doubles.
struct Matrix {
  std::size_t n = 0;
  std::vector<double> a;

  double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
  double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  static Matrix from(const AdjacencyMatrix& m);
};

struct SpectralData {
  double rho = 0.0;
  /// Right eigenvector, sum 1.
  std::vector<double> v;
  /// Left eigenvector, <u, v> = 1.
  std::vector<double> u;
  Matrix p;
  std::vector<double> stationary;
  int iterations = 0;
};

SpectralData perron(const Matrix& a, double tol = 1e-15, int max_iter = 100000);
SpectralData perron(const AdjacencyMatrix& a, double tol = 1e-15);

/// Perron data plus the Parry chain p_ij = a_ij v_j / (rho v_i) and its
/// stationary vector (power iteration on P^T).
SpectralData parry(const AdjacencyMatrix& a);

/// mu([w_0, ..., w_n]) = u_{w0} v_{wn} / rho^n for admissible paths, else 0.
double cylinder_measure(const SpectralData& s, const AdjacencyMatrix& a, const std::vector<std::size_t>& path);

/// log rho - psi, or +inf when psi = -inf.
double rate_function(double rho, const ExtendedValue& psi);
double rate_function(const AdjacencyMatrix& a, const ExtendedValue& psi);

/// sup over positive u of sum_j r_j log(u_j / (uP)_j).
double sanov_rate(const Matrix& p, const Direction& r, double tol = 1e-12);

struct TMapResult {
  std::vector<double> s;
  std::vector<double> t;
};
TMapResult t_map(const AdjacencyMatrix& a, const std::vector<double>& q);

struct TIdentityReport {
  double fixed_point_residual = 0.0;
  double det_residual = 0.0;
  bool fixed_point_ok = false;
  bool det_ok = false;
  bool pass() const { return fixed_point_ok && det_ok; }
};
TIdentityReport verify_t_identities(const AdjacencyMatrix& a, const std::vector<double>& q);

enum class SamplingMode { direct, tilted };

struct LdpEstimate {
  SamplingMode mode = SamplingMode::direct;
  std::uint64_t seed = 0;
  int n = 0;
  int trials = 0;
  double window = 0.0;
  std::size_t hits = 0;
  /// Estimated probability of the window event under the Parry chain.
  double probability = 0.0;
  bool no_hits = true;
  /// -(1/n) log probability, with an approximate 95% interval.
  double rate = 0.0;
  double rate_lo = 0.0;
  double rate_hi = 0.0;
  std::vector<double> tilt;
};

/// Monte-Carlo estimate of the rate of {empirical letter frequency within l1
/// distance `window` of r} for paths of length n of the Parry chain. Letters
/// are the state labels of a vertex-labelled automaton (`labels[state]`).
/// `direct` samples the chain itself; `tilted` samples an exponentially tilted
/// chain aimed at r and reweights by the likelihood ratio.
LdpEstimate simulate_ldp(const SpectralData& s, const std::vector<std::size_t>& labels, std::size_t d,
                         const Direction& r, int n, int trials, double window, std::uint64_t seed,
                         SamplingMode mode = SamplingMode::direct);

/// Largest real eigenvalue-style check: |det(rho I - A)| scaled by rho^n.
double characteristic_residual(const AdjacencyMatrix& a, double rho);

}  // namespace growth
