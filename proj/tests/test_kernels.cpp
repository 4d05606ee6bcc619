#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "growth/kernels.hpp"

using namespace growth;

namespace {

const double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<double> random_logs(std::size_t n, std::mt19937_64& rng, bool holes) {
  std::uniform_real_distribution<double> u(-800.0, 800.0);
  std::uniform_int_distribution<int> coin(0, 4);
  std::vector<double> v(n);
  for (auto& x : v) x = holes && coin(rng) == 0 ? kNegInf : u(rng);
  return v;
}

std::vector<double> random_values(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

double reference_log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

}  // namespace

TEST_CASE("scalar log accumulation is exact log-add") {
  std::mt19937_64 rng(1);
  for (std::size_t n : {1u, 7u, 64u}) {
    auto dst = random_logs(n, rng, true);
    const auto src = random_logs(n, rng, true);
    auto expect = dst;
    for (std::size_t k = 0; k < n; ++k) expect[k] = reference_log_add(dst[k], src[k] + 0.5);
    kernels::scalar::log_accumulate(dst.data(), src.data(), n, 0.5);
    for (std::size_t k = 0; k < n; ++k) {
      if (expect[k] == kNegInf) {
        CHECK(dst[k] == kNegInf);
      } else {
        CHECK(dst[k] == doctest::Approx(expect[k]).epsilon(1e-15));
      }
    }
  }
}

TEST_CASE("AVX2 kernels match the scalar reference") {
  if (!kernels::avx2_available()) {
    MESSAGE("AVX2 not available; equivalence not exercised");
    return;
  }
  std::mt19937_64 rng(2);
  for (std::size_t n : {1u, 3u, 4u, 5u, 17u, 256u, 1001u}) {
    SUBCASE("log_accumulate") {
      for (bool holes : {false, true}) {
        const auto base = random_logs(n, rng, holes);
        const auto src = random_logs(n, rng, holes);
        // Close magnitudes exercise the log1p branch away from its tails.
        std::vector<double> near(n);
        std::uniform_real_distribution<double> jitter(-40.0, 40.0);
        for (std::size_t k = 0; k < n; ++k) near[k] = base[k] == kNegInf ? kNegInf : base[k] + jitter(rng);
        for (const std::vector<double>* s : {&src, static_cast<const std::vector<double>*>(&near)}) {
          auto a = base, b = base;
          kernels::scalar::log_accumulate(a.data(), s->data(), n, -1.25);
          kernels::avx2::log_accumulate(b.data(), s->data(), n, -1.25);
          for (std::size_t k = 0; k < n; ++k) {
            if (a[k] == kNegInf) {
              CHECK(b[k] == kNegInf);
            } else {
              CHECK(std::abs(a[k] - b[k]) <= 1e-14 * std::max(1.0, std::abs(a[k])));
            }
          }
        }
      }
    }
    SUBCASE("dot") {
      const auto x = random_values(n, rng), y = random_values(n, rng);
      CHECK(kernels::avx2::dot(x.data(), y.data(), n) ==
            doctest::Approx(kernels::scalar::dot(x.data(), y.data(), n)).epsilon(1e-13));
    }
    SUBCASE("matvec and vecmat") {
      const std::size_t rows = n % 13 + 1, cols = n;
      const auto a = random_values(rows * cols, rng);
      const auto x = random_values(cols, rng);
      const auto xr = random_values(rows, rng);
      std::vector<double> y1(rows), y2(rows), z1(cols), z2(cols);
      kernels::scalar::matvec(a.data(), rows, cols, x.data(), y1.data());
      kernels::avx2::matvec(a.data(), rows, cols, x.data(), y2.data());
      for (std::size_t i = 0; i < rows; ++i) CHECK(y2[i] == doctest::Approx(y1[i]).epsilon(1e-13));
      kernels::scalar::vecmat(a.data(), rows, cols, xr.data(), z1.data());
      kernels::avx2::vecmat(a.data(), rows, cols, xr.data(), z2.data());
      for (std::size_t j = 0; j < cols; ++j) CHECK(z2[j] == doctest::Approx(z1[j]).epsilon(1e-13));
    }
  }
}

TEST_CASE("runtime dispatch") {
  const kernels::Isa before = kernels::active_isa();
  CHECK(kernels::set_isa(kernels::Isa::scalar) == kernels::Isa::scalar);
  CHECK(kernels::active_isa() == kernels::Isa::scalar);
  std::vector<double> x{1, 2, 3, 4, 5}, y{5, 4, 3, 2, 1};
  CHECK(kernels::dot(x.data(), y.data(), 5) == 35.0);
  const kernels::Isa now = kernels::set_isa(kernels::Isa::avx2);
  CHECK(now == (kernels::avx2_available() ? kernels::Isa::avx2 : kernels::Isa::scalar));
  CHECK(kernels::dot(x.data(), y.data(), 5) == 35.0);
  kernels::set_isa(before);
  CHECK(std::string(kernels::isa_name(kernels::Isa::avx2)) == "avx2");
}
