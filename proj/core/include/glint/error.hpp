#pragma once

#include <stdexcept>
#include <string>

namespace glint {

/// Rejected input: bad parameters, malformed plans, contract violations.
/// The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// An integrand produced a non-finite value or an I/O step failed mid-run.
class EvaluationError : public std::runtime_error {
 public:
  explicit EvaluationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace glint
