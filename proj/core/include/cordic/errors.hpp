#pragma once

#include <stdexcept>
#include <string>

namespace cordic {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A fixed-point result does not fit its format. Never wrapped silently.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// An angle lies outside the convergence range of the configured stages.
class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

// Input outside the domain of an operation (e.g. vectoring in the left half-plane).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cordic
