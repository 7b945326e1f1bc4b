#include "limitwalk/error.hpp"

#include <cstdio>

namespace limitwalk {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyWeights: return "EmptyWeights";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::ZeroMassAtMinimum: return "ZeroMassAtMinimum";
    case ErrorCode::ZeroTotalMass: return "ZeroTotalMass";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::ZeroArgument: return "ZeroArgument";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotComputable: return "NotComputable";
    case ErrorCode::MultipleRootsPresent: return "MultipleRootsPresent";
    case ErrorCode::NearRootArgument: return "NearRootArgument";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::DNotPositive: return "DNotPositive";
    case ErrorCode::RootCountMismatch: return "RootCountMismatch";
    case ErrorCode::NewtonDivergence: return "NewtonDivergence";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::NonMonotoneSolution: return "NonMonotoneSolution";
    case ErrorCode::RecurrenceInstability: return "RecurrenceInstability";
    case ErrorCode::StateBudgetExceeded: return "StateBudgetExceeded";
    case ErrorCode::InternalConsistency: return "InternalConsistency";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DNotPositive:
    case ErrorCode::RootCountMismatch:
    case ErrorCode::NewtonDivergence:
    case ErrorCode::SingularSystem:
    case ErrorCode::NonMonotoneSolution:
    case ErrorCode::RecurrenceInstability:
    case ErrorCode::StateBudgetExceeded:
    case ErrorCode::InternalConsistency:
      return true;
    default:
      return false;
  }
}

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace limitwalk
