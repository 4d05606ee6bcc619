#include <immintrin.h>

#include <cmath>
#include <limits>

#include "growth/kernels.hpp"

namespace growth::kernels::avx2 {

namespace {

// exp(d) for d in [-700, 0]: d = k ln2 + r, |r| <= ln2/2, Taylor to degree 13.
inline __m256d exp_nonpositive(__m256d d) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634);
  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
  __m256d k = _mm256_round_pd(_mm256_mul_pd(d, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(k, ln2_hi, d);
  r = _mm256_fnmadd_pd(k, ln2_lo, r);

  static constexpr double inv_fact[] = {
      1.0,
      1.0,
      1.0 / 2,
      1.0 / 6,
      1.0 / 24,
      1.0 / 120,
      1.0 / 720,
      1.0 / 5040,
      1.0 / 40320,
      1.0 / 362880,
      1.0 / 3628800,
      1.0 / 39916800,
      1.0 / 479001600,
      1.0 / 6227020800.0,
  };
  __m256d p = _mm256_set1_pd(inv_fact[13]);
  for (int i = 12; i >= 0; --i) p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(inv_fact[i]));

  __m128i k32 = _mm256_cvtpd_epi32(k);
  __m256i k64 = _mm256_cvtepi32_epi64(k32);
  k64 = _mm256_add_epi64(k64, _mm256_set1_epi64x(1023));
  __m256d scale = _mm256_castsi256_pd(_mm256_slli_epi64(k64, 52));
  return _mm256_mul_pd(p, scale);
}

// log1p(e) for e in [0, 1] via 2 atanh(e / (2 + e)).
inline __m256d log1p_unit(__m256d e) {
  const __m256d u = _mm256_div_pd(e, _mm256_add_pd(_mm256_set1_pd(2.0), e));
  const __m256d u2 = _mm256_mul_pd(u, u);
  constexpr int terms = 18;
  __m256d s = _mm256_set1_pd(1.0 / (2 * terms - 1));
  for (int j = terms - 2; j >= 0; --j) s = _mm256_fmadd_pd(s, u2, _mm256_set1_pd(1.0 / (2 * j + 1)));
  return _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(2.0), u), s);
}

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

}  // namespace

void log_accumulate(double* dst, const double* src, std::size_t n, double shift) {
  const __m256d vshift = _mm256_set1_pd(shift);
  const __m256d ninf = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  const __m256d floor = _mm256_set1_pd(-700.0);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d a = _mm256_loadu_pd(dst + k);
    const __m256d b = _mm256_add_pd(_mm256_loadu_pd(src + k), vshift);
    const __m256d hi = _mm256_max_pd(a, b);
    const __m256d lo = _mm256_min_pd(a, b);
    const __m256d hi_dead = _mm256_cmp_pd(hi, ninf, _CMP_EQ_OQ);
    __m256d d = _mm256_sub_pd(lo, hi);
    const __m256d tiny = _mm256_cmp_pd(d, floor, _CMP_NGE_UQ);
    d = _mm256_blendv_pd(d, zero, tiny);
    __m256d e = exp_nonpositive(d);
    e = _mm256_blendv_pd(e, zero, tiny);
    __m256d out = _mm256_add_pd(hi, log1p_unit(e));
    out = _mm256_blendv_pd(out, ninf, hi_dead);
    _mm256_storeu_pd(dst + k, out);
  }
  if (k < n) scalar::log_accumulate(dst + k, src + k, n - k, shift);
}

double dot(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + k), _mm256_loadu_pd(y + k), acc);
  double s = hsum(acc);
  for (; k < n; ++k) s += x[k] * y[k];
  return s;
}

void matvec(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
  for (std::size_t i = 0; i < rows; ++i) y[i] = dot(a + i * cols, x, cols);
}

void vecmat(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
  for (std::size_t j = 0; j < cols; ++j) y[j] = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    const __m256d xi = _mm256_set1_pd(x[i]);
    const double* row = a + i * cols;
    std::size_t j = 0;
    for (; j + 4 <= cols; j += 4) {
      _mm256_storeu_pd(y + j, _mm256_fmadd_pd(xi, _mm256_loadu_pd(row + j), _mm256_loadu_pd(y + j)));
    }
    for (; j < cols; ++j) y[j] += x[i] * row[j];
  }
}

}  // namespace growth::kernels::avx2
