#pragma once

#include <stdexcept>
#include <string>

namespace seba {

/// Base class for every error raised by the library. The CLI maps any
/// `seba::Error` escaping a computation to exit status 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Index or bound outside the range covered by a table.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Requested table exceeds the configured memory budget.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Evaluation exactly at a pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Iterative method failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Summation window too small for the requested tail tolerance, or an
/// averaging window that contains no data.
class WindowError : public Error {
 public:
  using Error::Error;
};

/// Malformed or incompatible file.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace seba
