#pragma once

#include <stdexcept>
#include <string>

namespace recurshift {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exact integer no longer fits the 128-bit index type.
class CapacityExceeded : public Error {
 public:
  using Error::Error;
};

/// A request would materialize more symbols than the configured cap allows.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A search or sweep ran out of its configured horizon before concluding.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class NoOccurrence : public Error {
 public:
  using Error::Error;
};

/// x == y passed where distinct points are required.
class PairEqual : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace recurshift
