#pragma once

#include <stdexcept>
#include <string>

namespace fincat {

// Base class for all library errors. Subclasses distinguish the CLI exit
// paths: capacity/input problems exit 2, law failures exit 1.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Operands live over different arities / bounds / calculi.
struct DomainError : Error {
  using Error::Error;
};

// A size or arity exceeds what the kernel enumerates.
struct CapacityError : Error {
  using Error::Error;
};

// A stated precondition of an operation does not hold.
struct PreconditionError : Error {
  using Error::Error;
};

// Composition with an unbounded index set was requested without a cutoff.
struct UnboundedCompositionError : PreconditionError {
  using PreconditionError::PreconditionError;
};

// Malformed or out-of-range serialized input.
struct ParseError : Error {
  using Error::Error;
};

// Unknown corpus id.
struct UnknownIdError : Error {
  using Error::Error;
};

} // namespace fincat
