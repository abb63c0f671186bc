#pragma once

#include <stdexcept>
#include <string>

namespace tmoments {

// Requested moment order is outside the finite range: a Student t variable
// with n degrees of freedom has finite moments of order 0..n-1 only.
class MomentExistenceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// No evaluation path converged; the message records each path that was tried.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Loss power outside the range supported by the closed-form machinery.
class UnsupportedPowerError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace tmoments
