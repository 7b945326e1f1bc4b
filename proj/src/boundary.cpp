#include "limitwalk/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "limitwalk/error.hpp"

namespace limitwalk {
namespace {

using cplx = std::complex<double>;

constexpr double kMonotoneSlack = 1e-9;
constexpr double kImagTol = 1e-9;

std::int64_t base_of(const CycleSummary& summary) {
  return summary.support_floor <= 0 ? 0 : summary.support_floor;
}

void require_computable(const CycleSummary& summary, const RootSet& roots) {
  if (!is_computable(classify(summary))) {
    throw Error(ErrorCode::NotComputable, "boundary values exist only for negative drift");
  }
  if (roots.total_multiplicity != summary.lower_reach - 1) {
    throw Error(ErrorCode::RootCountMismatch, "root set has total multiplicity " +
                                                  std::to_string(roots.total_multiplicity) + ", expected " +
                                                  std::to_string(summary.lower_reach - 1));
  }
}

// Forward error of a backward-stable solve is of order eps * condition; the
// observed constant stays below 20 on randomized patterns.
double value_slack(double condition) {
  return std::max(kMonotoneSlack, 100.0 * std::numeric_limits<double>::epsilon() * condition);
}

// Rejects values outside [0, 1] or decreasing by more than `slack`, then
// removes the remaining round-off: clamp into [0, 1], running maximum.
void validate_cdf_values(std::vector<double>& v, double slack) {
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] < -slack || v[j] > 1.0 + slack) {
      throw Error(ErrorCode::NonMonotoneSolution,
                  "initial value " + std::to_string(j) + " = " + short_number(v[j]) + " outside [0, 1]");
    }
    if (j > 0 && v[j] < v[j - 1] - slack) {
      throw Error(ErrorCode::NonMonotoneSolution, "initial values decrease at index " + std::to_string(j) + " by " +
                                                      short_number(v[j - 1] - v[j]));
    }
  }
  for (std::size_t j = 0; j < v.size(); ++j) {
    v[j] = std::clamp(v[j], j > 0 ? v[j - 1] : 0.0, 1.0);
  }
}

}  // namespace

cplx row_coefficient(const CycleSummary& summary, std::int64_t j, cplx alpha, int deriv_order) {
  const std::int64_t reach = summary.lower_reach;
  if (j < 0 || j >= reach) {
    throw Error(ErrorCode::IndexOutOfRange, "column " + std::to_string(j) + " outside [0, " + std::to_string(reach) + ")");
  }
  if (deriv_order < 0) throw Error(ErrorCode::IndexOutOfRange, "negative derivative order");
  cplx acc{0.0, 0.0};
  for (std::int64_t x = j; x < reach; ++x) {
    if (x < deriv_order) continue;
    const double f = summary.pmf(x - reach - j);
    if (f == 0.0) continue;
    double falling = 1.0;
    for (int r = 0; r < deriv_order; ++r) falling *= static_cast<double>(x - r);
    cplx power{1.0, 0.0};
    for (std::int64_t e = 0; e < x - deriv_order; ++e) power *= alpha;
    acc += f * falling * power;
  }
  return acc;
}

double balance_residual(const CycleSummary& summary, std::span<const double> values) {
  double acc = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    acc += values[j] * summary.cdf(-static_cast<std::int64_t>(j) - 1);
  }
  return std::abs(acc + summary.drift);
}

BoundarySystem build_system(const CycleSummary& summary, const RootSet& roots) {
  require_computable(summary, roots);
  const auto reach = static_cast<Eigen::Index>(summary.lower_reach);
  BoundarySystem sys{Eigen::MatrixXd::Zero(reach, reach), Eigen::VectorXd::Zero(reach), 0.0};

  Eigen::Index row = 0;
  for (const UnitRoot& root : roots.roots) {
    if (root.value.imag() < 0.0) continue;  // covered by its conjugate
    const bool real_root = root.value.imag() == 0.0;
    for (int k = 0; k < root.multiplicity; ++k) {
      for (Eigen::Index j = 0; j < reach; ++j) {
        const cplx c = row_coefficient(summary, j, root.value, k);
        sys.matrix(row, j) = c.real();
        if (!real_root) sys.matrix(row + 1, j) = c.imag();
      }
      row += real_root ? 1 : 2;
    }
  }
  if (row != reach - 1) {
    throw Error(ErrorCode::RootCountMismatch, "assembled " + std::to_string(row) + " root rows, expected " +
                                                  std::to_string(reach - 1));
  }
  for (Eigen::Index j = 0; j < reach; ++j) {
    sys.matrix(row, j) = summary.cdf(-j - 1);
  }
  sys.rhs(row) = -summary.drift;

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.matrix);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  sys.condition = smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
  if (!(sys.condition <= kSingularConditionLimit)) {
    throw Error(ErrorCode::SingularSystem, "condition number " + short_number(sys.condition) + " exceeds 1e12");
  }
  return sys;
}

BoundaryValues solve_boundary(const CycleSummary& summary, const RootSet& roots) {
  const BoundarySystem sys = build_system(summary, roots);
  const Eigen::VectorXd sol = sys.matrix.colPivHouseholderQr().solve(sys.rhs);

  BoundaryValues out;
  out.base = base_of(summary);
  out.values.assign(sol.data(), sol.data() + sol.size());
  validate_cdf_values(out.values, value_slack(sys.condition));
  out.balance_residual = balance_residual(summary, out.values);
  out.system_condition = sys.condition;
  out.method = BoundaryMethod::LinearSolve;
  return out;
}

BoundaryValues closed_form_boundary(const CycleSummary& summary, const RootSet& roots) {
  require_computable(summary, roots);
  if (!roots.all_simple()) {
    throw Error(ErrorCode::MultipleRootsPresent, "the closed form needs simple roots");
  }
  const std::int64_t reach = summary.lower_reach;
  std::vector<cplx> alphas;
  for (const UnitRoot& r : roots.roots) alphas.push_back(r.value);

  const double f_min = summary.pmf(-reach);
  cplx inv_prod{1.0, 0.0};
  for (cplx a : alphas) inv_prod /= (a - 1.0);
  const cplx scale = -summary.drift / f_min * inv_prod;

  std::vector<cplx> sym(static_cast<std::size_t>(reach));
  for (std::int64_t k = 0; k < reach; ++k) sym[static_cast<std::size_t>(k)] = elementary_symmetric(alphas, k);

  // F(k) = -(1/f) sum_{i=1}^{k} P(S_N <= -D+i) F(k-i)
  //        - (E S_N / f) prod 1/(a-1) * sum_{x=0}^{k} (-1)^x e_{D-1-x}
  std::vector<cplx> values(static_cast<std::size_t>(reach));
  cplx alternating{0.0, 0.0};
  for (std::int64_t k = 0; k < reach; ++k) {
    alternating += (k % 2 == 0 ? 1.0 : -1.0) * sym[static_cast<std::size_t>(reach - 1 - k)];
    cplx v = scale * alternating;
    for (std::int64_t i = 1; i <= k; ++i) {
      v -= summary.cdf(-reach + i) / f_min * values[static_cast<std::size_t>(k - i)];
    }
    values[static_cast<std::size_t>(k)] = v;
  }

  // Same conditioning as the linear system; it sets the accepted round-off.
  const double slack = value_slack(build_system(summary, roots).condition);
  BoundaryValues out;
  out.base = base_of(summary);
  out.method = BoundaryMethod::ClosedForm;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (std::abs(values[k].imag()) >= std::max(kImagTol, slack)) {
      throw Error(ErrorCode::InternalConsistency,
                  "closed form value " + std::to_string(k) + " has imaginary part " + short_number(values[k].imag()));
    }
    out.values.push_back(values[k].real());
  }
  validate_cdf_values(out.values, slack);
  out.balance_residual = balance_residual(summary, out.values);
  return out;
}

cplx elementary_symmetric(std::span<const cplx> values, std::int64_t k) {
  const auto n = static_cast<std::int64_t>(values.size());
  if (k < 0 || k > n) {
    throw Error(ErrorCode::IndexOutOfRange, "e_" + std::to_string(k) + " of " + std::to_string(n) + " values");
  }
  std::vector<cplx> e(static_cast<std::size_t>(k) + 1, cplx{0.0, 0.0});
  e[0] = 1.0;
  for (std::int64_t m = 0; m < n; ++m) {
    for (std::int64_t r = std::min(k, m + 1); r >= 1; --r) {
      e[static_cast<std::size_t>(r)] += values[static_cast<std::size_t>(m)] * e[static_cast<std::size_t>(r - 1)];
    }
  }
  return e[static_cast<std::size_t>(k)];
}

}  // namespace limitwalk
