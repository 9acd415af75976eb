#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cardmpc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid argument values: out-of-range encodings, bad permutations, ...
struct DomainError : Error {
  using Error::Error;
};

// A sequence that is not a valid encoding (zero or multiple Clubs).
struct MalformedSequenceError : DomainError {
  using DomainError::DomainError;
};

// Replay tape exhausted or mismatched against the requested decision.
struct TapeError : Error {
  using Error::Error;
};

// A protocol step applied to a matrix in the wrong facing state.
struct ProtocolStateError : Error {
  using Error::Error;
};

// A run broke one of the machine-checked protocol invariants.
struct InvariantViolation : Error {
  using Error::Error;
};

// An exact enumeration would exceed the configured run budget.
struct BudgetError : Error {
  BudgetError(const std::string& msg, std::uint64_t required, std::uint64_t budget)
      : Error(msg), required(required), budget(budget) {}
  std::uint64_t required;
  std::uint64_t budget;
};

}  // namespace cardmpc
