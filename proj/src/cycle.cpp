#include "limitwalk/cycle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "limitwalk/error.hpp"
#include "limitwalk/kernels.hpp"

namespace limitwalk {
namespace {

constexpr double kZeroDriftTol = 1e-10;
constexpr double kDegenerateTol = 1e-12;

std::vector<double> convolve(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    kernels::axpy(a[i], b, std::span<double>(out).subspan(i, b.size()));
  }
  return out;
}

std::complex<double> int_pow(std::complex<double> s, std::int64_t e) {
  const bool invert = e < 0;
  auto n = static_cast<std::uint64_t>(invert ? -e : e);
  std::complex<double> result{1.0, 0.0};
  std::complex<double> base = s;
  while (n != 0) {
    if (n & 1U) result *= base;
    base *= base;
    n >>= 1U;
  }
  return invert ? 1.0 / result : result;
}

}  // namespace

CyclePattern::CyclePattern(std::vector<DiscretePmf> laws) : laws_(std::move(laws)) {
  if (laws_.empty()) throw Error(ErrorCode::InvalidParameter, "a cycle pattern needs at least one law");
}

std::string_view case_name(CaseLabel label) noexcept {
  switch (label) {
    case CaseLabel::ZeroFunction: return "ZeroFunction";
    case CaseLabel::DegenerateStep: return "DegenerateStep";
    case CaseLabel::ComputableMleq0: return "ComputableMleq0";
    case CaseLabel::ComputableMgt0: return "ComputableMgt0";
  }
  return "Unknown";
}

CycleSummary summarize(const CyclePattern& pattern, double tail_tol) {
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "tail tolerance must lie in (0, 1)");
  }
  std::int64_t min_sum = 0;
  std::int64_t floor = std::numeric_limits<std::int64_t>::min();
  double drift = 0.0;
  double tail_error = 0.0;
  std::vector<std::int64_t> prefix;
  std::vector<double> table{1.0};

  for (const DiscretePmf& law : pattern.laws()) {
    min_sum += law.min_support();
    floor = std::max(floor, min_sum);
    prefix.push_back(min_sum);
    drift += law.mean();
    tail_error += law.tail_error();
    table = convolve(table, law.weights());
  }

  // Drop the convolved upper tail while its mass stays within tolerance.
  double dropped = 0.0;
  std::size_t len = table.size();
  while (len > 1 && dropped + table[len - 1] <= tail_tol) {
    dropped += table[len - 1];
    --len;
  }
  table.resize(len);

  CycleSummary out{
      .period = pattern.period(),
      .lower_reach = -min_sum,
      .support_floor = floor,
      .period_sum = DiscretePmf::from_truncated(min_sum, table, dropped),
      .drift = drift,
      .prefix_minima = std::move(prefix),
      .tail_error_total = tail_error + dropped,
  };
  return out;
}

std::complex<double> period_pgf(const CycleSummary& summary, std::complex<double> s, int order) {
  if (s == std::complex<double>(0.0, 0.0)) throw Error(ErrorCode::ZeroArgument, "G_N is a Laurent series; s must be nonzero");
  if (order < 0) throw Error(ErrorCode::InvalidParameter, "derivative order must be non-negative");

  // G^{(r)}(s) = s^{lo - r} * sum_i c_i w_i s^i with lo = min_support and
  // c_i the falling factorial of the exponent lo + i.
  const auto w = summary.period_sum.weights();
  const std::int64_t lo = summary.period_sum.min_support();
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t k = w.size(); k-- > 0;) {
    const double e = static_cast<double>(lo + static_cast<std::int64_t>(k));
    double c = 1.0;
    for (int r = 0; r < order; ++r) c *= (e - r);
    acc = acc * s + c * w[k];
  }
  return acc * int_pow(s, lo - order);
}

CaseLabel classify(const CycleSummary& summary) {
  const auto w = summary.period_sum.weights();
  const bool degenerate_zero = summary.period_sum.min_support() == 0 && w.size() == 1 &&
                               std::abs(w[0] - 1.0) <= kDegenerateTol;
  if (degenerate_zero) return CaseLabel::DegenerateStep;
  if (summary.drift >= -kZeroDriftTol) return CaseLabel::ZeroFunction;
  if (summary.lower_reach <= 0) {
    throw Error(ErrorCode::DNotPositive,
                "negative drift with non-negative minimum period sum (lower reach " +
                    std::to_string(summary.lower_reach) + ")");
  }
  return summary.support_floor <= 0 ? CaseLabel::ComputableMleq0 : CaseLabel::ComputableMgt0;
}

}  // namespace limitwalk
