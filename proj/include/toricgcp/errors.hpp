#pragma once

#include <stdexcept>
#include <string>

namespace toricgcp {

// Base of every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad JSON, wrong field names, inconsistent lengths.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// A mathematical precondition does not hold (M(E) = 0, degenerate polytope,
// incompatible rings, unsupported dimension, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Matrix-size guardrail.
class CapExceeded : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Randomized retries (liftings, shifts, lines) all failed.
class RetryExhausted : public Error {
 public:
  using Error::Error;
};

// Raised by exact division when the remainder is nonzero.
class NotDivisible : public Error {
 public:
  NotDivisible() : Error("not exactly divisible") {}
};

}  // namespace toricgcp
