#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace decaylab {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

/// Integral over the mass spectrum is non-finite, vanishing, or the tail
/// truncation bound cannot be met.
class DivergentIntegral : public Error {
 public:
  using Error::Error;
};

/// Adaptive integration exhausted its subdivision budget. Carries the best
/// available estimate and the error actually achieved.
class ToleranceNotMet : public Error {
 public:
  ToleranceNotMet(const std::string& what, std::complex<double> best,
                  double achieved)
      : Error(what), best_estimate(best), achieved_error(achieved) {}

  std::complex<double> best_estimate;
  double achieved_error;
};

class NonconvergentMoment : public Error {
 public:
  using Error::Error;
};

/// Fewer usable points than a fit requires.
class InsufficientPoints : public Error {
 public:
  using Error::Error;
};

/// Detrended series shows too few zero crossings to estimate a period
/// (power-law regime, or the window is too short).
class NoOscillationDetected : public Error {
 public:
  using Error::Error;
};

/// Denominator of a ratio series underflowed.
class DivisionGuard : public Error {
 public:
  using Error::Error;
};

/// A scaling-factor query that is only meaningful when the two endpoint
/// exponents differ was made in the equal-exponent oscillating regime.
class RegimeMismatch : public Error {
 public:
  using Error::Error;
};

/// Scenario / CSV parsing failure with line and field diagnostics.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, std::string field = {})
      : Error(what + " (line " + std::to_string(line) +
              (field.empty() ? "" : ", field '" + field + "'") + ")"),
        line(line),
        field(std::move(field)) {}

  int line;
  std::string field;
};

class UnknownColumn : public Error {
 public:
  using Error::Error;
};

}  // namespace decaylab
