#include "limitwalk/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "limitwalk/error.hpp"

namespace limitwalk {
namespace {

void check_tol(double tol) {
  if (!(tol > 0.0 && tol < 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "truncation tolerance must lie in (0, 1), got " + short_number(tol));
  }
}

}  // namespace

DiscretePmf DiscretePmf::from_weights(std::int64_t min_support, std::span<const double> weights) {
  return from_truncated(min_support, weights, 0.0);
}

DiscretePmf DiscretePmf::from_truncated(std::int64_t min_support, std::span<const double> weights,
                                        double tail_error) {
  if (weights.empty()) throw Error(ErrorCode::EmptyWeights, "weight table is empty");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0) || !std::isfinite(weights[i])) {
      throw Error(ErrorCode::NegativeWeight,
                  "weight at offset " + std::to_string(i) + " is " + short_number(weights[i]));
    }
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) throw Error(ErrorCode::ZeroTotalMass, "weights sum to zero");
  if (!(weights[0] > 0.0)) {
    throw Error(ErrorCode::ZeroMassAtMinimum, "no mass at the minimum support point " + std::to_string(min_support));
  }

  std::size_t len = weights.size();
  while (len > 1 && weights[len - 1] == 0.0) --len;

  std::vector<double> w(weights.begin(), weights.begin() + static_cast<std::ptrdiff_t>(len));
  if (total != 1.0) {
    for (double& v : w) v /= total;
  }
  return DiscretePmf(min_support, std::move(w), tail_error);
}

double DiscretePmf::prob(std::int64_t x) const noexcept {
  if (x < min_support_ || x > max_support()) return 0.0;
  return weights_[static_cast<std::size_t>(x - min_support_)];
}

double DiscretePmf::cdf(std::int64_t x) const noexcept {
  if (x < min_support_) return 0.0;
  if (x >= max_support()) return 1.0;
  const auto end = static_cast<std::ptrdiff_t>(x - min_support_ + 1);
  return std::accumulate(weights_.begin(), weights_.begin() + end, 0.0);
}

double DiscretePmf::mean() const noexcept {
  double acc = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    acc += static_cast<double>(static_cast<std::int64_t>(i)) * weights_[i];
  }
  return static_cast<double>(min_support_) + acc;
}

DiscretePmf geometric(double p, double tol) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "geometric success probability must lie in (0, 1), got " + short_number(p));
  }
  check_tol(tol);
  const double q = 1.0 - p;
  std::vector<double> w;
  double term = p;
  double tail = q;  // (1-p)^(K+1) after K+1 entries
  for (;;) {
    w.push_back(term);
    if (tail <= tol) break;
    term *= q;
    tail *= q;
  }
  return DiscretePmf::from_truncated(1, w, tail);
}

DiscretePmf shifted_poisson(double lambda, std::int64_t shift, double tol) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::InvalidParameter, "Poisson rate must be positive, got " + short_number(lambda));
  }
  check_tol(tol);
  std::vector<double> w;
  double term = std::exp(-lambda);
  // Tail mass is tracked by summing the terms not yet emitted: for i past the
  // mode the ratio lambda/(i+1) < 1 bounds the remainder geometrically.
  double cumulative = 0.0;
  for (std::int64_t i = 0;; ++i) {
    w.push_back(term);
    cumulative += term;
    const double next = term * lambda / static_cast<double>(i + 1);
    const double ratio = lambda / static_cast<double>(i + 2);
    if (ratio < 1.0) {
      const double tail_bound = next / (1.0 - ratio);
      if (tail_bound <= tol) {
        return DiscretePmf::from_truncated(shift, w, std::min(tail_bound, std::max(0.0, 1.0 - cumulative)));
      }
    }
    term = next;
  }
}

DiscretePmf discrete_weibull_unit(double tol) {
  check_tol(tol);
  // Keep k = 0..K-1 with e^{-K} <= tol.
  const auto k_max = static_cast<std::int64_t>(std::ceil(-std::log(tol) - 1e-12));
  std::vector<double> w;
  w.reserve(static_cast<std::size_t>(k_max));
  const double decay = std::exp(-1.0);
  double upper = 1.0;  // e^{-k}
  for (std::int64_t k = 0; k < std::max<std::int64_t>(k_max, 1); ++k) {
    w.push_back(upper - upper * decay);
    upper *= decay;
  }
  return DiscretePmf::from_truncated(0, w, upper);
}

}  // namespace limitwalk
