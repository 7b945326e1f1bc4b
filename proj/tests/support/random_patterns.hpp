#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "limitwalk/cycle.hpp"
#include "limitwalk/pmf.hpp"

namespace limitwalk::testing {

struct PatternShape {
  int max_period = 3;
  std::int64_t min_support_lo = -3;
  std::int64_t min_support_hi = 1;
  int max_width = 4;
  /// Accept only patterns with E S_N <= -min_negative_drift.
  double min_negative_drift = 0.2;
};

/// Random finite-support pattern with negative drift and positive lower reach.
inline CyclePattern random_pattern(std::mt19937_64& rng, const PatternShape& shape = {}) {
  std::uniform_int_distribution<int> period_dist(1, shape.max_period);
  std::uniform_int_distribution<std::int64_t> min_dist(shape.min_support_lo, shape.min_support_hi);
  std::uniform_int_distribution<int> width_dist(1, shape.max_width);
  std::uniform_real_distribution<double> weight_dist(0.0, 1.0);
  for (;;) {
    const int period = period_dist(rng);
    std::vector<DiscretePmf> laws;
    double drift = 0.0;
    std::int64_t min_sum = 0;
    for (int k = 0; k < period; ++k) {
      const std::int64_t lo = min_dist(rng);
      const int width = width_dist(rng);
      std::vector<double> w(static_cast<std::size_t>(width));
      for (double& v : w) v = weight_dist(rng);
      w[0] += 0.1;
      laws.push_back(DiscretePmf::from_weights(lo, w));
      drift += laws.back().mean();
      min_sum += lo;
    }
    if (drift <= -shape.min_negative_drift && min_sum < 0) return CyclePattern(std::move(laws));
  }
}

}  // namespace limitwalk::testing
