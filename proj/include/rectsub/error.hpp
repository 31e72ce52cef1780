#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rectsub {

enum class ErrorCode {
  Domain,              // sqrt/log of non-positive value, division by zero, ...
  SingularMetric,      // Cholesky pivot below spd_tol
  RankDeficient,       // immersion Jacobian loses rank
  DegeneratePlane,     // sectional curvature on a degenerate pair
  OrderInsufficient,   // jets requested below the order an operation needs
  ZeroField,           // |V| below the zero-field threshold
  SingularSystem,      // least-squares normal equations not positive definite
  InconsistentSample,  // field changes class across the sample
  Precondition,        // operation precondition violated
  DomainExit,          // integral curve left the parameter box
  VanishingTangent,    // V^T vanished along an integral curve
  TooFewSamples,
  ModelViolation,      // lambda >= 1 in the tanh model
  NonPositiveWarp,     // warping function not positive
  NonNormal,           // vector passed as normal has a tangential part
  Parse,
  Schema,
  DimensionMismatch,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries an ErrorCode; the message is
/// already human-readable.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Numeric domain error raised inside jet arithmetic. The expression
/// evaluator attaches the offending subexpression on the way out.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message, std::string subexpression = {})
      : Error(ErrorCode::Domain,
              subexpression.empty() ? message : message + " in '" + subexpression + "'"),
        reason_(message),
        subexpression_(std::move(subexpression)) {}

  const std::string& reason() const noexcept { return reason_; }
  const std::string& subexpression() const noexcept { return subexpression_; }

 private:
  std::string reason_;
  std::string subexpression_;
};

}  // namespace rectsub
