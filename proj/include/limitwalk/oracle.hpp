#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "limitwalk/cycle.hpp"
#include "limitwalk/limit_distribution.hpp"

namespace limitwalk {

enum class OracleMethod { MonteCarlo, ExactDP };

std::string_view method_name(OracleMethod m) noexcept;

/// Finite-horizon estimate of P(S_1 <= x, ..., S_horizon <= x).
struct OracleReport {
  std::int64_t x = 0;
  std::int64_t horizon = 0;
  double estimate = 0.0;
  double std_error = 0.0;  // 0 for the DP
  OracleMethod method = OracleMethod::ExactDP;
  std::int64_t trials = 0;
};

struct MonteCarloConfig {
  std::int64_t trials = 1'000'000;
  std::int64_t horizon = 2000;
  std::uint64_t seed = 1;
  /// Independent RNG streams. Results depend on (seed, trials, horizon,
  /// streams) only, not on how many threads run them.
  int streams = 8;
  /// 0 picks std::thread::hardware_concurrency().
  int threads = 0;
};

/// Simulates the walk, stopping each trial at its first prefix sum above x.
OracleReport mc_estimate(const CyclePattern& pattern, std::int64_t x, const MonteCarloConfig& cfg);

inline constexpr std::int64_t kDefaultStateBudget = 100'000'000;

/// Exact forward DP over the current prefix sum with mass above x absorbed.
/// Throws StateBudgetExceeded when states * horizon exceeds state_budget.
OracleReport dp_bound(const CyclePattern& pattern, std::int64_t x, std::int64_t horizon,
                      std::int64_t state_budget = kDefaultStateBudget);

struct VerifyConfig {
  MonteCarloConfig mc;
  std::int64_t dp_horizon = 2000;
  double dp_convergence_tol = 5e-4;
  std::int64_t state_budget = kDefaultStateBudget;
};

struct VerifyRow {
  std::int64_t x = 0;
  double analytic = 0.0;
  OracleReport mc;
  OracleReport dp;
  bool pass = false;
};

/// PASS iff |analytic - dp| <= dp_convergence_tol and
/// |analytic - mc| <= 4 mc.stderr + dp_convergence_tol.
std::vector<VerifyRow> verify(const LimitDistribution& ld, std::span<const std::int64_t> xs, const VerifyConfig& cfg);

}  // namespace limitwalk
