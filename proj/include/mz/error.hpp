#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mz {

enum class ErrorCode {
  Pole,
  Overflow,
  Domain,
  Unsupported,
  Accuracy,
  TailBudgetExceeded,
  NonConvergence,
  StripViolation,
  OracleNotRun,
  NoClosedForm,
  NonAnalytic,
  FitResidual,
  Config,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Pole: return "pole";
    case ErrorCode::Overflow: return "overflow";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::Accuracy: return "accuracy";
    case ErrorCode::TailBudgetExceeded: return "tail-budget-exceeded";
    case ErrorCode::NonConvergence: return "non-convergence";
    case ErrorCode::StripViolation: return "strip-violation";
    case ErrorCode::OracleNotRun: return "oracle-not-run";
    case ErrorCode::NoClosedForm: return "no-closed-form";
    case ErrorCode::NonAnalytic: return "non-analytic";
    case ErrorCode::FitResidual: return "fit-residual";
    case ErrorCode::Config: return "config";
  }
  return "unknown";
}

/// Every numerical failure in the library surfaces as this exception.  The
/// code lets callers (notably the verification harness) record the failure
/// per grid point instead of aborting a whole run.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mz
