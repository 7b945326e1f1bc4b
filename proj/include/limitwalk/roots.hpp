#pragma once

#include <complex>
#include <vector>

#include "limitwalk/cycle.hpp"

namespace limitwalk {

struct RootConfig {
  /// Roots with |s| <= 1 + disk_slack count as inside the disk. If the count
  /// comes out wrong the slack is searched within [1e-12, 1e-4].
  double disk_slack = 1e-7;
  /// Refined roots closer than this are one root with multiplicity.
  double cluster_tol = 1e-6;
  /// Largest residual accepted after refinement: |G_N(alpha) - 1|, divided by
  /// sum_j P(S_N = j) |alpha|^j when that exceeds 1 (small roots, where the
  /// s^{-D} terms are large).
  double residual_tol = 1e-9;
  int max_newton_iterations = 100;
};

struct UnitRoot {
  std::complex<double> value;
  int multiplicity = 1;
};

/// Roots of G_N(s) = 1 in the closed unit disk other than s = 1, sorted by
/// (real, imaginary) part. Non-real roots come in exact conjugate pairs.
struct RootSet {
  std::vector<UnitRoot> roots;
  std::vector<double> residuals;  // scaled |G_N(alpha) - 1| per root
  int total_multiplicity = 0;

  bool all_simple() const noexcept;
};

/// Throws NotComputable unless the summary classifies as a computable case,
/// RootCountMismatch when the clustered count differs from lower_reach - 1,
/// and NewtonDivergence when refinement cannot meet residual_tol.
RootSet find_unit_roots(const CycleSummary& summary, const RootConfig& cfg = {});

/// Scaled |G_N(alpha) - 1| per root, followed for a root of multiplicity m > 1
/// by the scaled |G_N'(alpha)|, ..., |G_N^{(m-1)}(alpha)|.
std::vector<double> root_residual_report(const CycleSummary& summary, const RootSet& roots);

}  // namespace limitwalk
