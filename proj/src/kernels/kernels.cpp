#include <atomic>
#include <cstdlib>
#include <cstring>

#include "growth/kernels.hpp"

namespace growth::kernels {

namespace {

Isa detect() {
  if (const char* env = std::getenv("GROWTH_SIMD"); env && std::strcmp(env, "scalar") == 0) {
    return Isa::scalar;
  }
  return avx2_available() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

bool avx2_available() {
#if defined(GROWTH_HAVE_AVX2_KERNELS)
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

Isa set_isa(Isa isa) {
  if (isa == Isa::avx2 && !avx2_available()) isa = Isa::scalar;
  current().store(isa, std::memory_order_relaxed);
  return isa;
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

#if defined(GROWTH_HAVE_AVX2_KERNELS)
#define GROWTH_DISPATCH(fn, ...) \
  (active_isa() == Isa::avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define GROWTH_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

void log_accumulate(double* dst, const double* src, std::size_t n, double shift) {
  GROWTH_DISPATCH(log_accumulate, dst, src, n, shift);
}

double dot(const double* x, const double* y, std::size_t n) { return GROWTH_DISPATCH(dot, x, y, n); }

void matvec(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
  GROWTH_DISPATCH(matvec, a, rows, cols, x, y);
}

void vecmat(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
  GROWTH_DISPATCH(vecmat, a, rows, cols, x, y);
}

#undef GROWTH_DISPATCH

}  // namespace growth::kernels
