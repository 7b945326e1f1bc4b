#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "limitwalk/boundary.hpp"
#include "limitwalk/cycle.hpp"
#include "limitwalk/roots.hpp"

namespace limitwalk {

/// How values beyond the seeded window are produced.
enum class RecurrenceMode {
  /// Series division by s^D (G_N(s) - 1) with the in-disk root factors
  /// divided out. Round-off does not grow with x.
  Deflated,
  /// The literal recurrence solved for its highest term. Round-off grows like
  /// |alpha_min|^{-x}; kept as a cross-check over short ranges.
  Forward,
};

struct BuildConfig {
  double tail_tol = kDefaultTailTol;
  RootConfig roots;
  RecurrenceMode mode = RecurrenceMode::Deflated;
  /// ClosedForm needs simple roots.
  BoundaryMethod boundary = BoundaryMethod::LinearSolve;
};

/// Limit law F(x) = lim_n P(S_1 <= x, ..., S_n <= x) for one cycle pattern.
///
/// cdf() extends an internal memo on demand; the memo is guarded by a mutex so
/// concurrent queries are safe (they serialize).
class LimitDistribution {
 public:
  /// summarize -> classify -> (computable cases) roots -> boundary solve.
  /// Propagates RootCountMismatch, NewtonDivergence, SingularSystem and
  /// NonMonotoneSolution.
  static LimitDistribution build(const CyclePattern& pattern, const BuildConfig& cfg = {});

  const CyclePattern& pattern() const noexcept { return pattern_; }
  const CycleSummary& summary() const noexcept { return summary_; }
  CaseLabel case_label() const noexcept { return case_; }
  /// Present for the computable cases only.
  const std::optional<RootSet>& roots() const noexcept { return roots_; }
  const std::optional<BoundaryValues>& boundary() const noexcept { return boundary_; }
  /// Left edge of the generating-function series: 0 or support_floor.
  std::int64_t series_base() const noexcept;

  /// F(x). Throws RecurrenceInstability if the recurrence leaves [0, 1] by
  /// more than 1e-7, decreases, or its unrearranged identity fails by more
  /// than 1e-6.
  double cdf(std::int64_t x) const;

  /// P(sup_n S_n = k) = cdf(k) - cdf(k-1), clamped at 0.
  double pmf_xi(std::int64_t k) const;

  /// sum_{j >= base} s^{j - base} F(j) for |s| < 1, from the closed identity
  /// (boundary polynomial over s^D (G_N(s) - 1)). Throws NearRootArgument
  /// when the denominator is within 1e-12 of zero.
  std::complex<double> xi_series(std::complex<double> s) const;

  /// sum_j F(base + j) p_j(s): the numerator of xi_series.
  std::complex<double> boundary_polynomial(std::complex<double> s) const;

  /// Largest violation of the unrearranged recurrence seen while filling.
  double max_recurrence_residual() const;

 private:
  struct Memo {
    std::mutex mutex;
    std::vector<double> values;    // F(support_floor + i) as the recurrence produced it
    std::vector<double> reported;  // running maximum of values, clamped to [0, 1]
    double max_residual = 0.0;
  };

  LimitDistribution(CyclePattern pattern, CycleSummary summary, CaseLabel label, RecurrenceMode mode)
      : pattern_(std::move(pattern)), summary_(std::move(summary)), case_(label), mode_(mode),
        memo_(std::make_unique<Memo>()) {}

  void seed_memo();
  void prepare_deflated();
  void extend_to(std::int64_t x) const;  // memo mutex held
  void sync_reported() const;            // memo mutex held

  CyclePattern pattern_;
  CycleSummary summary_;
  CaseLabel case_;
  RecurrenceMode mode_;
  std::optional<RootSet> roots_;
  std::optional<BoundaryValues> boundary_;
  std::vector<double> pmf_reversed_;       // P(S_N = max - t)
  std::vector<double> deflated_reversed_;  // deflated denominator, highest degree first
  std::unique_ptr<Memo> memo_;
};

}  // namespace limitwalk
