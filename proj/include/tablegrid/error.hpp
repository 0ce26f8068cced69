#pragma once

#include <stdexcept>
#include <string>

namespace tablegrid {

// Base of all library errors. The CLI maps InvalidArgument to a usage
// failure and every DataError to a data failure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

// Fewer than two dividers on an axis: the image holds no table.
class NoTableFound : public DataError {
 public:
  using DataError::DataError;
};

// A zero denominator in the overlap objective (all-white target or candidate).
class DegenerateInput : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace tablegrid
