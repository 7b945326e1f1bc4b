#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "limitwalk/cycle.hpp"
#include "limitwalk/limit_distribution.hpp"

namespace limitwalk {

/// Parsed pattern file. Example:
///
///   {
///     "laws": [
///       {"family": "geometric", "p": 0.55},
///       {"family": "shifted_poisson", "lambda": 0.5, "shift": -3},
///       {"family": "discrete_weibull_unit"},
///       {"family": "table", "min_support": -3, "weights": [0.5, 0, 0, 0, 0.5]}
///     ],
///     "tolerances": {"tail_tol": 1e-12, "disk_slack": 1e-7, "cluster_tol": 1e-6,
///                    "residual_tol": 1e-9, "dp_convergence_tol": 5e-4}
///   }
///
/// Every field outside this schema is rejected.
struct PatternConfig {
  CyclePattern pattern;
  BuildConfig build;
  double dp_convergence_tol = 5e-4;
};

/// Throws Error(ConfigError) naming the line (syntax errors) or the JSON
/// pointer of the offending field.
PatternConfig parse_pattern_config(std::string_view text);
PatternConfig load_pattern_config(const std::string& path);

}  // namespace limitwalk
