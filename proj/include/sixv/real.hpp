#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/mpfr.hpp>

namespace sixv {

/// Variable-precision real backed by MPFR. Expression templates are off so
/// `auto` locals hold values, not lazy expressions.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

inline constexpr unsigned kDefaultDigits = 50;

/// Raised when parameters leave the regime an operation is defined on.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a request exceeds an operation's size limit.
class CapacityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Sets the MPFR default precision (decimal digits) for the lifetime of the
/// object. Values constructed inside the scope carry that precision.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits10);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

unsigned working_digits();

Real pi();

/// Parses `pi/4`, `-3pi/8`, `2*pi/5`, `pi`, `0.25`, `1e-3`. Multiples of pi
/// are formed at working precision, never through a decimal literal.
Real parse_angle(std::string_view text);

/// Scientific notation with an explicit exponent. digits == 0 prints every
/// digit the value carries.
std::string format_real(const Real& x, int digits = 0);

}  // namespace sixv
