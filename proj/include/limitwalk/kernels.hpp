#pragma once

// Dense double-precision inner loops shared by the convolution, the
// finite-horizon DP and the memo recurrences. Each kernel has a scalar
// reference implementation and, where the target supports it, an AVX2
// variant. The dispatching entry points pick the widest variant the running
// CPU supports; set LIMITWALK_ISA=scalar in the environment to force the
// reference path.

#include <cstddef>
#include <span>
#include <string_view>

namespace limitwalk::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa) noexcept;

/// Whether this binary was built with the variant and the CPU can run it.
bool isa_supported(Isa isa) noexcept;

Isa active_isa() noexcept;

/// Overrides the dispatch choice. Returns false (and changes nothing) if the
/// requested variant is not supported here.
bool force_isa(Isa isa) noexcept;

// y[i] += a * x[i]; x.size() must equal y.size().
void axpy(double a, std::span<const double> x, std::span<double> y) noexcept;

// sum_i x[i] * y[i]; sizes must match.
double dot(std::span<const double> x, std::span<const double> y) noexcept;

namespace scalar {
void axpy(double a, std::span<const double> x, std::span<double> y) noexcept;
double dot(std::span<const double> x, std::span<const double> y) noexcept;
}  // namespace scalar

#if defined(LIMITWALK_HAVE_AVX2)
namespace avx2 {
void axpy(double a, std::span<const double> x, std::span<double> y) noexcept;
double dot(std::span<const double> x, std::span<const double> y) noexcept;
}  // namespace avx2
#endif

}  // namespace limitwalk::kernels
