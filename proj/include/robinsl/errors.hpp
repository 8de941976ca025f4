#pragma once

#include <stdexcept>
#include <string>

namespace robinsl {

// Base of every error raised by the library. Each subclass corresponds to a
// documented failure mode of one operation.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ZeroMass : public Error {
 public:
  ZeroMass() : Error("potential has zero total integral") {}
};

class MixedSign : public Error {
 public:
  MixedSign() : Error("potential values have mixed signs") {}
};

class NonFiniteState : public Error {
 public:
  explicit NonFiniteState(double x)
      : Error("shooting state became non-finite at x=" + std::to_string(x)) {}
};

class ToleranceNotReached : public Error {
 public:
  explicit ToleranceNotReached(double width)
      : Error("bisection stalled with bracket width " + std::to_string(width)) {}
};

class GridTooCoarse : public Error {
 public:
  explicit GridTooCoarse(std::size_t n)
      : Error("quadratic form needs at least 11 grid points, got " + std::to_string(n)) {}
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class BranchUndefined : public Error {
 public:
  BranchUndefined() : Error("logarithmic phase offset undefined at sqrt|mu| == k^2") {}
};

class PolePoint : public Error {
 public:
  explicit PolePoint(double x) : Error("psi has a pole at x=" + std::to_string(x)) {}
};

class NoCrossing : public Error {
 public:
  NoCrossing() : Error("mu0 - mu1 has no sign change on the zeta bracket") {}
};

}  // namespace robinsl
