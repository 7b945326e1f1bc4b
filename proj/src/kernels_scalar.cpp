#include "limitwalk/kernels.hpp"

namespace limitwalk::kernels::scalar {

void axpy(double a, std::span<const double> x, std::span<double> y) noexcept {
  const std::size_t n = y.size();
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = y[i] + a * x[i];
  }
}

// Four interleaved partial sums, combined pairwise, so the reference has the
// same association as the 4-lane vector variant.
double dot(std::span<const double> x, std::span<const double> y) noexcept {
  const std::size_t n = x.size();
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc[0] = acc[0] + x[i] * y[i];
    acc[1] = acc[1] + x[i + 1] * y[i + 1];
    acc[2] = acc[2] + x[i + 2] * y[i + 2];
    acc[3] = acc[3] + x[i + 3] * y[i + 3];
  }
  double sum = (acc[0] + acc[2]) + (acc[1] + acc[3]);
  for (; i < n; ++i) {
    sum = sum + x[i] * y[i];
  }
  return sum;
}

}  // namespace limitwalk::kernels::scalar
