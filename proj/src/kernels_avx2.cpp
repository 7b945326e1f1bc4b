// Compiled with -mavx2. Only reached through the dispatcher after a CPUID
// check, so nothing here may be inlined into generic translation units.

#include <immintrin.h>

#include "limitwalk/kernels.hpp"

namespace limitwalk::kernels::avx2 {

// Separate multiply and add (no FMA) keeps results bit-identical to the
// scalar reference.
void axpy(double a, std::span<const double> x, std::span<double> y) noexcept {
  const std::size_t n = y.size();
  const double* px = x.data();
  double* py = y.data();
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d y0 = _mm256_loadu_pd(py + i);
    __m256d y1 = _mm256_loadu_pd(py + i + 4);
    const __m256d x0 = _mm256_loadu_pd(px + i);
    const __m256d x1 = _mm256_loadu_pd(px + i + 4);
    y0 = _mm256_add_pd(y0, _mm256_mul_pd(va, x0));
    y1 = _mm256_add_pd(y1, _mm256_mul_pd(va, x1));
    _mm256_storeu_pd(py + i, y0);
    _mm256_storeu_pd(py + i + 4, y1);
  }
  for (; i + 4 <= n; i += 4) {
    __m256d y0 = _mm256_loadu_pd(py + i);
    y0 = _mm256_add_pd(y0, _mm256_mul_pd(va, _mm256_loadu_pd(px + i)));
    _mm256_storeu_pd(py + i, y0);
  }
  for (; i < n; ++i) {
    py[i] = py[i] + a * px[i];
  }
}

double dot(std::span<const double> x, std::span<const double> y) noexcept {
  const std::size_t n = x.size();
  const double* px = x.data();
  const double* py = y.data();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(px + i), _mm256_loadu_pd(py + i)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double sum = (lanes[0] + lanes[2]) + (lanes[1] + lanes[3]);
  for (; i < n; ++i) {
    sum = sum + px[i] * py[i];
  }
  return sum;
}

}  // namespace limitwalk::kernels::avx2
