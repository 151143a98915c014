#ifndef SHAPEINV_ERROR_HPP
#define SHAPEINV_ERROR_HPP

#include <stdexcept>
#include <string>

namespace shapeinv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class ZeroPolynomial : public Error {
 public:
  using Error::Error;
};

/// Couplings outside the admissible region of a family.
class InvalidParams : public Error {
 public:
  using Error::Error;
};

/// Couplings that are admissible but make a constructed polynomial drop degree.
class DegenerateParameter : public Error {
 public:
  using Error::Error;
};

/// Level index beyond the finite discrete spectrum (hyperbolic family).
class OutOfSpectrum : public Error {
 public:
  using Error::Error;
};

class UnsupportedFamily : public Error {
 public:
  using Error::Error;
};

class DenominatorVanishes : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace shapeinv

#endif  // SHAPEINV_ERROR_HPP
