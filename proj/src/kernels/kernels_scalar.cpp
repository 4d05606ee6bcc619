#include <cmath>
#include <limits>

#include "growth/kernels.hpp"

namespace growth::kernels::scalar {

void log_accumulate(double* dst, const double* src, std::size_t n, double shift) {
  constexpr double ninf = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    const double b = src[k] + shift;
    const double a = dst[k];
    if (b == ninf) continue;
    if (a == ninf) {
      dst[k] = b;
      continue;
    }
    const double hi = a > b ? a : b;
    const double lo = a > b ? b : a;
    dst[k] = hi + std::log1p(std::exp(lo - hi));
  }
}

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += x[k] * y[k];
  return s;
}

void matvec(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
  for (std::size_t i = 0; i < rows; ++i) y[i] = dot(a + i * cols, x, cols);
}

void vecmat(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
  for (std::size_t j = 0; j < cols; ++j) y[j] = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    const double xi = x[i];
    const double* row = a + i * cols;
    for (std::size_t j = 0; j < cols; ++j) y[j] += xi * row[j];
  }
}

}  // namespace growth::kernels::scalar
