#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace limitwalk {

enum class ErrorCode {
  // input validation
  EmptyWeights,
  NegativeWeight,
  ZeroMassAtMinimum,
  ZeroTotalMass,
  InvalidParameter,
  ZeroArgument,
  IndexOutOfRange,
  NotComputable,
  MultipleRootsPresent,
  NearRootArgument,
  ConfigError,
  // numerical failures
  DNotPositive,
  RootCountMismatch,
  NewtonDivergence,
  SingularSystem,
  NonMonotoneSolution,
  RecurrenceInstability,
  StateBudgetExceeded,
  InternalConsistency,
};

std::string_view error_name(ErrorCode code) noexcept;

/// True for failures of the numerical pipeline, as opposed to bad input.
bool is_numerical(ErrorCode code) noexcept;

/// "%.6g", for numbers quoted in error messages.
std::string short_number(double v);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace limitwalk
