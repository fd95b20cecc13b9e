#pragma once

#include <stdexcept>
#include <string>

namespace cheeger2d {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed or invalid input documents (domain/field specs).
struct ParseError : Error {
  using Error::Error;
};

/// A solver could not produce a result (bad domain, non-convergence, ...).
struct SolverError : Error {
  using Error::Error;
};

/// A formula was evaluated outside its domain of validity
/// (e.g. the smooth boundary formula on a chain with corners).
struct PreconditionError : Error {
  using Error::Error;
};

}  // namespace cheeger2d
