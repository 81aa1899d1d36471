#pragma once

#include <stdexcept>
#include <string>

namespace cauchy {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Weyl denominator, Vandermonde factor, or eigenvalue gap below tolerance.
class DegenerateSpectrum : public Error {
public:
  using Error::Error;
};

class InvalidPartition : public Error {
public:
  using Error::Error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

class InvalidAxis : public Error {
public:
  using Error::Error;
};

/// A truncated series cannot certify the requested tolerance.
class TruncationTooSmall : public Error {
public:
  using Error::Error;
};

/// Finite-difference step refinement could not reach the requested accuracy.
class StepUnderflow : public Error {
public:
  using Error::Error;
};

class EmptySample : public Error {
public:
  using Error::Error;
};

class InvalidMethodParams : public Error {
public:
  using Error::Error;
};

} // namespace cauchy
