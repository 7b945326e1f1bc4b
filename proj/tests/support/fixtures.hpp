#pragma once

#include <array>

#include "limitwalk/cycle.hpp"
#include "limitwalk/pmf.hpp"

namespace limitwalk::testing {

// P(X = -3) = P(X = 1) = 1/2, i.i.d.
inline CyclePattern example1_pattern() {
  const std::array<double, 5> w{0.5, 0.0, 0.0, 0.0, 0.5};
  return CyclePattern({DiscretePmf::from_weights(-3, w)});
}

// Geometric(0.55) on {1, 2, ...}, Poisson(1/2) - 3, discrete Weibull(1, 1).
inline CyclePattern example2_pattern(double tol = kDefaultTailTol) {
  return CyclePattern({geometric(0.55, tol), shifted_poisson(0.5, -3, tol), discrete_weibull_unit(tol)});
}

// P(X = -1) = p, P(X = 1) = 1 - p.
inline CyclePattern two_point_pm1(double p) {
  const std::array<double, 3> w{p, 0.0, 1.0 - p};
  return CyclePattern({DiscretePmf::from_weights(-1, w)});
}

// Independent high-precision references (mpmath), frozen.
inline constexpr double kEx1RootRe = -0.41964337760708056628;
inline constexpr double kEx1RootIm = 0.60629072920719936926;
inline constexpr std::array<double, 6> kEx1Cdf{0.22815549365396182, 0.35220112873895761, 0.41964337760708057,
                                               0.45631098730792364, 0.70440225747791523, 0.83928675521416113};
inline constexpr double kEx2Root = -0.36479557893876565623;
inline constexpr double kEx2MinMass = 0.21087027476031197707;  // 0.55 e^{-1/2} (1 - e^{-1})
inline constexpr double kEx2Drift = -0.099841474948855393797;
inline constexpr double kEx2F1 = 0.12655449746365937891;  // F(1), F(2) as produced by the root method
inline constexpr double kEx2F2 = 0.18013537481746819036;

}  // namespace limitwalk::testing
