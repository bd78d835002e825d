#pragma once

#include <stdexcept>
#include <string>

namespace boxfdc {

// Base for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two subsets (or families) were built over different carrier spaces.
class CarrierMismatch : public Error {
 public:
  CarrierMismatch() : Error("subsets live in different carrier spaces") {}
};

// A group computation needed elements beyond the configured search window.
class OutOfWindow : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A family was expected to cover a region but leaves points uncovered.
class NotACover : public Error {
 public:
  using Error::Error;
};

// A finite size cap (enumeration, search) was exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace boxfdc
