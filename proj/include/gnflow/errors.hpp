#pragma once

#include <stdexcept>
#include <string>

namespace gnflow {

/// Failure categories surfaced by the numerical kernels. The CLI maps these
/// onto process exit codes, so additions here are interface changes.
enum class ErrorKind {
  config_error,       ///< malformed or out-of-range configuration/arguments
  ill_posed,          ///< ellipticity/positivity precondition violated
  solver_failure,     ///< direct solve produced an unacceptable residual
  monotonicity_loss,  ///< min phi_x fell below the diffeomorphism guard
  step_rejected,      ///< NaN/overflow in a step, or step budget exhausted
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

}  // namespace gnflow
