#pragma once

#include <stdexcept>
#include <string>

namespace ucm {

// Failure categories. The numeric values are mirrored by ucm_status in ucm.h.
enum class ErrorKind {
  domain = 1,        // query outside [0, s_max] or similar range violation
  invalid_argument,  // malformed construction input
  constraint,        // combinatorial index outside its admissible set
  evaluation,        // non-finite integrand value
  envelope,          // moment order beyond the supported envelope
  consistency,       // internal numerical-consistency check failed
  cancellation,      // result destroyed by cancellation (e.g. negative variance)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorKind::invalid_argument, what) {}
};

class ConstraintError : public Error {
 public:
  explicit ConstraintError(const std::string& what) : Error(ErrorKind::constraint, what) {}
};

class EvaluationError : public Error {
 public:
  explicit EvaluationError(const std::string& what) : Error(ErrorKind::evaluation, what) {}
};

class EnvelopeError : public Error {
 public:
  explicit EnvelopeError(const std::string& what) : Error(ErrorKind::envelope, what) {}
};

class ConsistencyError : public Error {
 public:
  explicit ConsistencyError(const std::string& what) : Error(ErrorKind::consistency, what) {}
};

class CancellationError : public Error {
 public:
  explicit CancellationError(const std::string& what) : Error(ErrorKind::cancellation, what) {}
};

}  // namespace ucm
