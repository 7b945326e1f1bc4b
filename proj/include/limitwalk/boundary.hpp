#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "limitwalk/cycle.hpp"
#include "limitwalk/roots.hpp"

namespace limitwalk {

enum class BoundaryMethod { LinearSolve, ClosedForm };

/// The lower_reach initial values F(base), ..., F(base + D - 1) that seed the
/// recurrence. base is 0 when support_floor <= 0, else support_floor.
struct BoundaryValues {
  std::int64_t base = 0;
  std::vector<double> values;
  /// |sum_j values[j] P(S_N <= -j-1) + E S_N|
  double balance_residual = 0.0;
  /// 2-norm condition number of the assembled system (LinearSolve only).
  std::optional<double> system_condition;
  BoundaryMethod method = BoundaryMethod::LinearSolve;
};

struct BoundarySystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
  double condition = 0.0;
};

inline constexpr double kSingularConditionLimit = 1e12;

/// deriv_order-th derivative at alpha of p_j(s) = sum_{x=j}^{D-1} P(S_N = x-D-j) s^x.
std::complex<double> row_coefficient(const CycleSummary& summary, std::int64_t j, std::complex<double> alpha,
                                     int deriv_order = 0);

/// One row per root and derivative order (conjugate pairs split into real and
/// imaginary rows), then the balance row with right-hand side -E S_N.
/// Throws SingularSystem when the condition number exceeds 1e12.
BoundarySystem build_system(const CycleSummary& summary, const RootSet& roots);

/// Throws SingularSystem or NonMonotoneSolution.
BoundaryValues solve_boundary(const CycleSummary& summary, const RootSet& roots);

/// Explicit product/elementary-symmetric form; simple roots only
/// (MultipleRootsPresent otherwise).
BoundaryValues closed_form_boundary(const CycleSummary& summary, const RootSet& roots);

/// e_k(values) by the one-pass recurrence e_k <- e_k + v * e_{k-1}.
std::complex<double> elementary_symmetric(std::span<const std::complex<double>> values, std::int64_t k);

/// Residual of the balance identity for candidate initial values.
double balance_residual(const CycleSummary& summary, std::span<const double> values);

}  // namespace limitwalk
