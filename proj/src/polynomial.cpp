#include "limitwalk/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace limitwalk::poly {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Newton correction p(z)/p'(z) plus a backward-error stopping flag. For
// |z| > 1 the reversed polynomial is used so large roots do not overflow.
struct Correction {
  cplx ratio;
  bool converged;
};

Correction newton_ratio(std::span<const double> a, cplx z) noexcept {
  const std::size_t n = a.size() - 1;
  const double r = std::abs(z);
  if (r <= 1.0) {
    cplx p{0.0, 0.0}, dp{0.0, 0.0};
    double bound = 0.0;
    for (std::size_t k = a.size(); k-- > 0;) {
      dp = dp * z + p;
      p = p * z + a[k];
      bound = bound * r + std::abs(a[k]);
    }
    const bool converged = std::abs(p) <= 4.0 * kEps * bound;
    return {p / dp, converged};
  }
  const cplx y = 1.0 / z;
  const double ry = 1.0 / r;
  cplx q{0.0, 0.0}, dq{0.0, 0.0};
  double bound = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    dq = dq * y + q;
    q = q * y + a[k];
    bound = bound * ry + std::abs(a[k]);
  }
  const bool converged = std::abs(q) <= 4.0 * kEps * bound;
  return {z / (static_cast<double>(n) - y * dq / q), converged};
}

// Upper convex hull of (i, log|a_i|) gives one radius per hull edge.
std::vector<cplx> initial_guesses(std::span<const double> a) {
  const std::size_t n = a.size() - 1;
  std::vector<std::size_t> hull;
  std::vector<double> lg(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    lg[i] = a[i] != 0.0 ? std::log(std::abs(a[i])) : -std::numeric_limits<double>::infinity();
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    while (hull.size() >= 2) {
      const std::size_t p = hull[hull.size() - 2];
      const std::size_t q = hull.back();
      const double cross = (static_cast<double>(q) - static_cast<double>(p)) * (lg[i] - lg[p]) -
                           (static_cast<double>(i) - static_cast<double>(p)) * (lg[q] - lg[p]);
      if (cross >= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }

  std::vector<cplx> z;
  z.reserve(n);
  constexpr double sigma = 0.7;
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const std::size_t lo = hull[h];
    const std::size_t hi = hull[h + 1];
    const std::size_t count = hi - lo;
    const double radius = std::exp((lg[lo] - lg[hi]) / static_cast<double>(count));
    for (std::size_t j = 0; j < count; ++j) {
      const double angle = two_pi * static_cast<double>(j) / static_cast<double>(count) +
                           two_pi * static_cast<double>(lo) / static_cast<double>(n) + sigma;
      z.push_back(std::polar(radius, angle));
    }
  }
  return z;
}

}  // namespace

void horner(std::span<const double> coeffs, cplx z, cplx& value, cplx& derivative) noexcept {
  value = {0.0, 0.0};
  derivative = {0.0, 0.0};
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    derivative = derivative * z + value;
    value = value * z + coeffs[k];
  }
}

std::vector<cplx> aberth_roots(std::span<const double> coeffs, const AberthOptions& options) {
  std::size_t hi = coeffs.size();
  while (hi > 0 && coeffs[hi - 1] == 0.0) --hi;
  std::size_t lo = 0;
  while (lo < hi && coeffs[lo] == 0.0) ++lo;

  std::vector<cplx> roots(lo, cplx{0.0, 0.0});
  if (hi <= lo + 1) return roots;

  const std::span<const double> a = coeffs.subspan(lo, hi - lo);
  const std::size_t n = a.size() - 1;
  if (n == 1) {
    roots.emplace_back(-a[0] / a[1], 0.0);
    return roots;
  }

  std::vector<cplx> z = initial_guesses(a);
  std::vector<char> done(n, 0);
  std::size_t remaining = n;
  for (int iter = 0; iter < options.max_iterations && remaining > 0; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      const Correction c = newton_ratio(a, z[i]);
      if (c.converged) {
        done[i] = 1;
        --remaining;
        continue;
      }
      cplx sum{0.0, 0.0};
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      }
      const cplx step = c.ratio / (1.0 - c.ratio * sum);
      z[i] -= step;
      if (std::abs(step) <= kEps * std::abs(z[i])) {
        done[i] = 1;
        --remaining;
      }
    }
  }
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

}  // namespace limitwalk::poly
