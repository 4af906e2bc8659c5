#pragma once

#include <stdexcept>
#include <string>

namespace qtopo {

/// Malformed problem data: bad JSON, asymmetric matrices, invalid cones.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical procedure could not reach a trustworthy answer at the
/// configured tolerances (eigen-solver failure, unstable regularization,
/// inconsistent arc samples).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two independent routes to the same integer disagreed.
class ConsistencyError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// A brute-force oracle disagreed with the analytic pipeline.
class OracleDisagreement : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qtopo
