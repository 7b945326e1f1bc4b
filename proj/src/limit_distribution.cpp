#include "limitwalk/limit_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "limitwalk/error.hpp"
#include "limitwalk/kernels.hpp"
#include "limitwalk/polynomial.hpp"

namespace limitwalk {
namespace {

using cplx = std::complex<double>;

constexpr double kClampTol = 1e-7;
constexpr double kResidualLimit = 1e-6;
constexpr double kNearRoot = 1e-12;

// Quotient of c(s) / (s - r), dividing from the top coefficient down.
std::vector<cplx> deflate(const std::vector<cplx>& c, cplx r) {
  const std::size_t n = c.size() - 1;
  std::vector<cplx> q(n);
  q[n - 1] = c[n];
  for (std::size_t k = n - 1; k >= 1; --k) q[k - 1] = c[k] + r * q[k];
  return q;
}

}  // namespace

LimitDistribution LimitDistribution::build(const CyclePattern& pattern, const BuildConfig& cfg) {
  CycleSummary summary = summarize(pattern, cfg.tail_tol);
  const CaseLabel label = classify(summary);
  LimitDistribution ld(pattern, std::move(summary), label, cfg.mode);
  if (is_computable(label)) {
    ld.roots_ = find_unit_roots(ld.summary_, cfg.roots);
    ld.boundary_ = cfg.boundary == BoundaryMethod::ClosedForm ? closed_form_boundary(ld.summary_, *ld.roots_)
                                                              : solve_boundary(ld.summary_, *ld.roots_);
    const auto w = ld.summary_.period_sum.weights();
    ld.pmf_reversed_.assign(w.rbegin(), w.rend());
    if (cfg.mode == RecurrenceMode::Deflated) ld.prepare_deflated();
    ld.seed_memo();
  }
  return ld;
}

std::int64_t LimitDistribution::series_base() const noexcept {
  return summary_.support_floor <= 0 ? 0 : summary_.support_floor;
}

void LimitDistribution::prepare_deflated() {
  // H(s) = s^D (G_N(s) - 1); divide out every in-disk root (with multiplicity).
  const auto w = summary_.period_sum.weights();
  const auto reach = static_cast<std::size_t>(summary_.lower_reach);
  std::vector<cplx> h(std::max(w.size(), reach + 1), cplx{0.0, 0.0});
  for (std::size_t i = 0; i < w.size(); ++i) h[i] = w[i];
  h[reach] -= 1.0;
  for (const UnitRoot& r : roots_->roots) {
    for (int m = 0; m < r.multiplicity; ++m) h = deflate(h, r.value);
  }
  deflated_reversed_.resize(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) deflated_reversed_[h.size() - 1 - i] = h[i].real();
}

void LimitDistribution::seed_memo() {
  const std::int64_t floor = summary_.support_floor;
  const std::int64_t base = series_base();
  const std::int64_t reach = summary_.lower_reach;
  std::vector<double>& memo = memo_->values;
  memo.assign(static_cast<std::size_t>(base + reach - floor), 0.0);
  for (std::int64_t j = 0; j < reach; ++j) {
    memo[static_cast<std::size_t>(base + j - floor)] = boundary_->values[static_cast<std::size_t>(j)];
  }
  // floor <= x < base: F(x) = sum_{j=base}^{x+D} P(S_N = x-j) F(j), seeded values only.
  for (std::int64_t x = floor; x < base; ++x) {
    double acc = 0.0;
    for (std::int64_t j = base; j <= x + reach; ++j) {
      acc += summary_.pmf(x - j) * memo[static_cast<std::size_t>(j - floor)];
    }
    memo[static_cast<std::size_t>(x - floor)] = acc;
  }

  if (mode_ == RecurrenceMode::Deflated) {
    // The deflated recurrence must reproduce the seeded window from F(base).
    const auto& h = deflated_reversed_;
    const double lead = h.back();
    for (std::int64_t n = 1; n < reach; ++n) {
      double acc = 0.0;
      const auto deg = static_cast<std::int64_t>(h.size()) - 1;
      for (std::int64_t i = 1; i <= std::min(n, deg); ++i) {
        acc += h[static_cast<std::size_t>(deg - i)] * memo[static_cast<std::size_t>(base + n - i - floor)];
      }
      const double predicted = -acc / lead;
      const double seeded = memo[static_cast<std::size_t>(base + n - floor)];
      memo_->max_residual = std::max(memo_->max_residual, std::abs(predicted - seeded));
    }
    if (memo_->max_residual > kResidualLimit) {
      throw Error(ErrorCode::RecurrenceInstability,
                  "initial values disagree with the deflated recurrence by " + short_number(memo_->max_residual));
    }
  }
}

// Round-off near 1 can make consecutive raw values dip by ~1e-15; callers see
// a nondecreasing function. Larger dips were rejected during the fill.
void LimitDistribution::sync_reported() const {
  const std::vector<double>& raw = memo_->values;
  std::vector<double>& out = memo_->reported;
  for (std::size_t i = out.size(); i < raw.size(); ++i) {
    out.push_back(std::clamp(raw[i], i > 0 ? out[i - 1] : 0.0, 1.0));
  }
}

void LimitDistribution::extend_to(std::int64_t x) const {
  const std::int64_t floor = summary_.support_floor;
  const std::int64_t base = series_base();
  const std::int64_t reach = summary_.lower_reach;
  const std::int64_t top = summary_.period_sum.max_support();
  std::vector<double>& memo = memo_->values;
  auto at = [&](std::int64_t y) { return memo[static_cast<std::size_t>(y - floor)]; };

  memo.reserve(static_cast<std::size_t>(x - floor + 1));
  for (std::int64_t next = floor + static_cast<std::int64_t>(memo.size()); next <= x; ++next) {
    double value = 0.0;
    if (mode_ == RecurrenceMode::Forward) {
      // F(x) = (F(x-D) - sum_{j=base}^{x-1} P(S_N = x-D-j) F(j)) / P(S_N = -D)
      const std::int64_t j0 = std::max(base, next - reach - top);
      const std::int64_t count = next - j0;
      const std::int64_t t0 = top - next + reach + j0;
      const double sum = kernels::dot(std::span<const double>(pmf_reversed_).subspan(static_cast<std::size_t>(t0), static_cast<std::size_t>(count)),
                                      std::span<const double>(memo).subspan(static_cast<std::size_t>(j0 - floor), static_cast<std::size_t>(count)));
      value = (at(next - reach) - sum) / summary_.pmf(-reach);
    } else {
      // sum_i h_i xi_{n-i} = 0 for n >= 1, xi_n = F(base + n).
      const auto& h = deflated_reversed_;
      const auto deg = static_cast<std::int64_t>(h.size()) - 1;
      const std::int64_t n = next - base;
      const std::int64_t count = std::min(n, deg);
      const double sum = kernels::dot(
          std::span<const double>(h).subspan(static_cast<std::size_t>(deg - count), static_cast<std::size_t>(count)),
          std::span<const double>(memo).subspan(static_cast<std::size_t>(next - count - floor), static_cast<std::size_t>(count)));
      value = -sum / h.back();
    }

    const double prev = memo.empty() ? 0.0 : memo.back();
    if (!(value >= -kClampTol && value <= 1.0 + kClampTol) || value < prev - kClampTol) {
      throw Error(ErrorCode::RecurrenceInstability,
                  "F(" + std::to_string(next) + ") = " + short_number(value) + " after F(" + std::to_string(next - 1) +
                      ") = " + short_number(prev) + "; rebuild with higher precision");
    }
    memo.push_back(value);

    // Unrearranged identity at y = next - D: F(y) = sum_{j=base}^{next} P(S_N = y-j) F(j).
    const std::int64_t y = next - reach;
    const std::int64_t j0 = std::max(base, y - top);
    const std::int64_t count = next - j0 + 1;
    const std::int64_t t0 = top - y + j0;
    const double rhs = kernels::dot(std::span<const double>(pmf_reversed_).subspan(static_cast<std::size_t>(t0), static_cast<std::size_t>(count)),
                                    std::span<const double>(memo).subspan(static_cast<std::size_t>(j0 - floor), static_cast<std::size_t>(count)));
    const double resid = std::abs(at(y) - rhs);
    memo_->max_residual = std::max(memo_->max_residual, resid);
    if (resid > kResidualLimit) {
      throw Error(ErrorCode::RecurrenceInstability,
                  "recurrence residual " + short_number(resid) + " at x = " + std::to_string(next));
    }
  }
}

double LimitDistribution::cdf(std::int64_t x) const {
  const std::int64_t floor = summary_.support_floor;
  if (x < floor) return 0.0;
  switch (case_) {
    case CaseLabel::ZeroFunction: return 0.0;
    case CaseLabel::DegenerateStep: return 1.0;
    default: break;
  }
  std::lock_guard<std::mutex> lock(memo_->mutex);
  const auto idx = static_cast<std::size_t>(x - floor);
  if (idx >= memo_->values.size()) extend_to(x);
  if (idx >= memo_->reported.size()) sync_reported();
  return memo_->reported[idx];
}

double LimitDistribution::pmf_xi(std::int64_t k) const {
  const double d = cdf(k) - cdf(k - 1);
  if (d < -1e-9) {
    throw Error(ErrorCode::RecurrenceInstability, "negative mass " + short_number(d) + " at " + std::to_string(k));
  }
  return std::max(d, 0.0);
}

cplx LimitDistribution::boundary_polynomial(cplx s) const {
  if (!boundary_) return {0.0, 0.0};
  cplx acc{0.0, 0.0};
  for (std::size_t j = 0; j < boundary_->values.size(); ++j) {
    acc += boundary_->values[j] * row_coefficient(summary_, static_cast<std::int64_t>(j), s, 0);
  }
  return acc;
}

cplx LimitDistribution::xi_series(cplx s) const {
  if (!(std::abs(s) < 1.0)) throw Error(ErrorCode::InvalidParameter, "generating function needs |s| < 1");
  switch (case_) {
    case CaseLabel::ZeroFunction: return {0.0, 0.0};
    case CaseLabel::DegenerateStep: return 1.0 / (1.0 - s);
    default: break;
  }
  const auto w = summary_.period_sum.weights();
  const auto reach = static_cast<std::size_t>(summary_.lower_reach);
  std::vector<double> h(std::max(w.size(), reach + 1), 0.0);
  std::copy(w.begin(), w.end(), h.begin());
  h[reach] -= 1.0;
  cplx denom, unused;
  poly::horner(h, s, denom, unused);
  if (std::abs(denom) <= kNearRoot) {
    throw Error(ErrorCode::NearRootArgument, "s is within 1e-12 of a root of G_N(s) = 1");
  }
  return boundary_polynomial(s) / denom;
}

double LimitDistribution::max_recurrence_residual() const {
  std::lock_guard<std::mutex> lock(memo_->mutex);
  return memo_->max_residual;
}

}  // namespace limitwalk
