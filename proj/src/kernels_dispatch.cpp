#include <atomic>
#include <cstdlib>
#include <cstring>

#include "limitwalk/kernels.hpp"

namespace limitwalk::kernels {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(LIMITWALK_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

Isa detect() noexcept {
  if (const char* env = std::getenv("LIMITWALK_ISA"); env != nullptr && std::strcmp(env, "scalar") == 0) {
    return Isa::Scalar;
  }
  return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() noexcept {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2: return cpu_has_avx2();
  }
  return false;
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

bool force_isa(Isa isa) noexcept {
  if (!isa_supported(isa)) return false;
  current().store(isa, std::memory_order_relaxed);
  return true;
}

void axpy(double a, std::span<const double> x, std::span<double> y) noexcept {
#if defined(LIMITWALK_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) {
    avx2::axpy(a, x, y);
    return;
  }
#endif
  scalar::axpy(a, x, y);
}

double dot(std::span<const double> x, std::span<const double> y) noexcept {
#if defined(LIMITWALK_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return avx2::dot(x, y);
#endif
  return scalar::dot(x, y);
}

}  // namespace limitwalk::kernels
