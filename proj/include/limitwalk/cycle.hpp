#pragma once

#include <complex>
#include <cstdint>
#include <string_view>
#include <vector>

#include "limitwalk/pmf.hpp"

namespace limitwalk {

/// One period X_1, ..., X_N of the periodic sequence; X_{k+N} has the law of X_k.
class CyclePattern {
 public:
  /// Throws InvalidParameter on an empty list.
  explicit CyclePattern(std::vector<DiscretePmf> laws);

  std::span<const DiscretePmf> laws() const noexcept { return laws_; }
  std::size_t period() const noexcept { return laws_.size(); }
  const DiscretePmf& law_at_step(std::int64_t k) const noexcept {
    return laws_[static_cast<std::size_t>(k % static_cast<std::int64_t>(laws_.size()))];
  }

 private:
  std::vector<DiscretePmf> laws_;
};

/// Quantities derived from one period.
struct CycleSummary {
  std::size_t period = 0;
  /// Minus the sum of the per-step minima; the period sum S_N is >= -lower_reach.
  std::int64_t lower_reach = 0;
  /// Largest prefix sum of the per-step minima. F(x) = 0 for x below it.
  std::int64_t support_floor = 0;
  /// Law of S_N; min_support() == -lower_reach.
  DiscretePmf period_sum;
  /// E S_N, from the per-step means.
  double drift = 0.0;
  /// m_1, m_1 + m_2, ..., m_1 + ... + m_N.
  std::vector<std::int64_t> prefix_minima;
  double tail_error_total = 0.0;

  /// P(S_N = x) and P(S_N <= x).
  double pmf(std::int64_t x) const noexcept { return period_sum.prob(x); }
  double cdf(std::int64_t x) const noexcept { return period_sum.cdf(x); }
};

enum class CaseLabel {
  ZeroFunction,     // positive drift, or zero drift with a non-degenerate S_N
  DegenerateStep,   // S_N = 0 almost surely
  ComputableMleq0,  // negative drift, support_floor <= 0
  ComputableMgt0,   // negative drift, support_floor > 0
};

std::string_view case_name(CaseLabel label) noexcept;

inline bool is_computable(CaseLabel label) noexcept {
  return label == CaseLabel::ComputableMleq0 || label == CaseLabel::ComputableMgt0;
}

/// Convolves the period into the law of S_N (direct summation), truncates the
/// convolved upper tail at `tail_tol` and renormalizes.
CycleSummary summarize(const CyclePattern& pattern, double tail_tol = kDefaultTailTol);

/// order-th derivative of G_N(s) = sum_j s^j P(S_N = j) at s != 0.
std::complex<double> period_pgf(const CycleSummary& summary, std::complex<double> s, int order = 0);

/// Throws DNotPositive if the drift is negative but lower_reach <= 0.
CaseLabel classify(const CycleSummary& summary);

}  // namespace limitwalk
