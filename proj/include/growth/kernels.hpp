#pragma once

#include <cstddef>

// Hot inner loops with a scalar reference and an AVX2 variant chosen at runtime.
// Setting GROWTH_SIMD=scalar in the environment forces the reference path.

namespace growth::kernels {

enum class Isa { scalar, avx2 };

bool avx2_available();
Isa active_isa();
/// Overrides the runtime choice; requesting avx2 on a machine without it
/// falls back to scalar. Returns the ISA now in effect.
Isa set_isa(Isa isa);
const char* isa_name(Isa isa);

/// dst[k] = log(exp(dst[k]) + exp(src[k] + shift)); -inf encodes zero.
void log_accumulate(double* dst, const double* src, std::size_t n, double shift);
double dot(const double* x, const double* y, std::size_t n);
/// y = A x with A row-major rows x cols.
void matvec(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
/// y = x^T A with A row-major rows x cols.
void vecmat(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);

namespace scalar {
void log_accumulate(double* dst, const double* src, std::size_t n, double shift);
double dot(const double* x, const double* y, std::size_t n);
void matvec(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
void vecmat(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
}  // namespace scalar

namespace avx2 {
void log_accumulate(double* dst, const double* src, std::size_t n, double shift);
double dot(const double* x, const double* y, std::size_t n);
void matvec(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
void vecmat(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
}  // namespace avx2

}  // namespace growth::kernels
