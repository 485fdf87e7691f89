#pragma once

#include <stdexcept>
#include <string>

namespace fv1d {

/// Base class for all recoverable failures reported by this library.
/// Misuse that indicates a programming error (out-of-band writes, bad
/// argument ranges) throws std::logic_error / std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Root finding did not reach the requested residual within the
/// iteration budget.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// An interval was empty, reversed, or breakpoints fell outside it.
class InvalidInterval : public Error {
 public:
  using Error::Error;
};

/// A point lies outside the mesh.
class OutOfDomain : public Error {
 public:
  using Error::Error;
};

/// A function supposed to vanish at the domain endpoints does not.
class BoundaryMismatch : public Error {
 public:
  using Error::Error;
};

/// Factorization hit a zero pivot, or the solve could not meet the
/// residual bound.
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// A coefficient vector does not match the expected dimension.
class LengthMismatch : public Error {
 public:
  using Error::Error;
};

/// A convergence order was requested from a nonpositive or vanishing
/// error pair.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// The operation needs more elements than the mesh provides.
class MeshTooCoarse : public Error {
 public:
  using Error::Error;
};

/// No builtin problem is registered under the requested name.
class UnknownProblem : public Error {
 public:
  using Error::Error;
};

/// A manufactured source was requested but the problem lacks one of the
/// closed-form derivatives it needs.
class MissingDerivative : public Error {
 public:
  using Error::Error;
};

/// A text input (expression, problem file, golden table) failed to parse.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A Gram matrix that must be positive definite is numerically singular.
class SingularGram : public Error {
 public:
  using Error::Error;
};

}  // namespace fv1d
