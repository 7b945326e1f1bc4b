#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace limitwalk {

inline constexpr double kDefaultTailTol = 1e-12;

/// Integer-valued law with a finite lower support bound.
///
/// weights()[i] = P(X = min_support() + i). Laws with an infinite upper tail
/// are truncated once the remaining mass drops below a tolerance and then
/// renormalized; the discarded mass is kept in tail_error(). Immutable after
/// construction.
class DiscretePmf {
 public:
  /// Normalizes `weights`. Trailing zeros are dropped.
  /// Throws EmptyWeights, NegativeWeight, ZeroMassAtMinimum or ZeroTotalMass.
  static DiscretePmf from_weights(std::int64_t min_support, std::span<const double> weights);

  /// As from_weights, recording `tail_error` as mass removed before the call.
  static DiscretePmf from_truncated(std::int64_t min_support, std::span<const double> weights,
                                    double tail_error);

  std::int64_t min_support() const noexcept { return min_support_; }
  std::int64_t max_support() const noexcept {
    return min_support_ + static_cast<std::int64_t>(weights_.size()) - 1;
  }
  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return weights_.size(); }
  double tail_error() const noexcept { return tail_error_; }

  /// P(X = x); zero outside the table.
  double prob(std::int64_t x) const noexcept;
  /// P(X <= x).
  double cdf(std::int64_t x) const noexcept;
  double mean() const noexcept;

 private:
  DiscretePmf(std::int64_t min_support, std::vector<double> weights, double tail_error)
      : min_support_(min_support), weights_(std::move(weights)), tail_error_(tail_error) {}

  std::int64_t min_support_;
  std::vector<double> weights_;
  double tail_error_;
};

inline DiscretePmf from_weights(std::int64_t min_support, std::span<const double> weights) {
  return DiscretePmf::from_weights(min_support, weights);
}

inline double mean(const DiscretePmf& pmf) noexcept { return pmf.mean(); }

/// P(X = k) = p (1-p)^(k-1), k >= 1.
DiscretePmf geometric(double p, double tol = kDefaultTailTol);

/// Poisson(lambda) + shift.
DiscretePmf shifted_poisson(double lambda, std::int64_t shift, double tol = kDefaultTailTol);

/// P(Z = k) = e^{-k} - e^{-k-1}, k >= 0 (discrete Weibull, unit parameters).
DiscretePmf discrete_weibull_unit(double tol = kDefaultTailTol);

}  // namespace limitwalk
