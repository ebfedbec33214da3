#pragma once

#include <optional>
#include <string>

#include <boost/multiprecision/mpfr.hpp>

#include "affsing/core.hpp"

namespace affsing {

/// A matrix/parameter entry: an exact rational when one is known, always
/// accompanied by an extended-precision approximation.
class Number {
 public:
  Number() : exact_(Rational(0)), approx_(0) {}
  Number(int v) : exact_(Rational(v)), approx_(v) {}  // NOLINT
  Number(const Rational& q);                          // NOLINT
  /// Doubles are dyadic rationals and are kept exact.
  static Number from_double(double x) { return Number(rational_from_double(x)); }
  /// Inexact value (irrational parameter).
  static Number real(Real x) {
    Number r;
    r.exact_.reset();
    r.approx_ = x;
    return r;
  }

  bool is_exact() const { return exact_.has_value(); }
  const Rational& exact() const;
  Real approx() const { return approx_; }
  bool is_zero() const { return exact_ ? sgn(*exact_) == 0 : approx_ == 0; }

  friend Number operator+(const Number& a, const Number& b);
  friend Number operator-(const Number& a, const Number& b);
  friend Number operator*(const Number& a, const Number& b);
  Number operator-() const;
  /// Exact equality when both are exact; otherwise compares approximations.
  friend bool operator==(const Number& a, const Number& b);

  std::string to_string() const;

 private:
  std::optional<Rational> exact_;
  Real approx_;
};

using HighPrecision = boost::multiprecision::mpfr_float;

/// Result of parsing a scalar expression such as "355/113", "-0.25",
/// "sqrt(2)-1" or "cbrt(3)/2".
struct ParsedScalar {
  std::string source;
  std::optional<Rational> exact;  ///< set iff no irrational function was used
  HighPrecision value;            ///< evaluated at the requested precision
  Number number() const;
};

/// Grammar: expr := term (('+'|'-') term)*, term := unary (('*'|'/') unary)*,
/// unary := '-' unary | primary, primary := decimal | '(' expr ')' |
/// sqrt(expr) | cbrt(expr) | root(expr, integer).
/// Decimal literals are exact rationals. Throws ConfigError on bad input.
ParsedScalar parse_scalar(const std::string& text, unsigned precision_bits = 256);

Real to_real(const HighPrecision& x);

}  // namespace affsing
