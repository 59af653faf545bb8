#pragma once

#include <stdexcept>
#include <string>

namespace riesz {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (n = 0, Re(s) <= 0, k <= 1, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Requested truncation exceeds the length of an input sequence, or an index is out of range.
class LengthError : public Error {
public:
  using Error::Error;
};

/// Evaluation inside the guard disc around the pole of zeta at s = 1.
class PoleError : public Error {
public:
  using Error::Error;
};

/// Dirichlet inverse requested for a sequence with a[1] = 0.
class NonInvertibleError : public Error {
public:
  using Error::Error;
};

/// Tail bound needed but no usable decay metadata.
class InsufficientDecayError : public Error {
public:
  using Error::Error;
};

/// Quadrature budget cannot resolve the requested number of modes.
class ResolutionError : public Error {
public:
  using Error::Error;
};

/// A numerical cross-check exceeded its tolerance.
class NumericalError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

} // namespace riesz
