#pragma once

#include <stdexcept>
#include <string>

namespace hibi {

/// Base of every error raised by the library. The CLI maps all of these to
/// exit status 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class CycleError : public Error {
 public:
  using Error::Error;
};

class DuplicateNameError : public Error {
 public:
  using Error::Error;
};

/// A cover (a, b) that is already implied by a longer chain a < c < ... < b.
class RedundantCoverError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Matrix or vector dimensions do not fit the poset / cone they are used with.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A splitting was requested for a residue matrix with no stored solution.
class MissingDeltaError : public Error {
 public:
  using Error::Error;
};

}  // namespace hibi
