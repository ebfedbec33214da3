#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace affsing {

using Rational = mpq_class;
using Integer = mpz_class;

/// Extended-precision real used for unipotent/matrix parts of lattice words.
/// 113-bit mantissa keeps q.x - p accurate when |q| reaches ~1e6 and the
/// diagonal part amplifies the remainder by e^{27}.
using Real = __float128;

// Error taxonomy. The CLI maps these to exit codes 2/3/4.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition violations (grade out of range, bad shapes, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ambient parameters: lattices live in R^{n+1}, affine subspaces have
/// dimension d, 1 <= d < n.
struct Dims {
  int n = 2;
  int d = 1;

  Dims() = default;
  Dims(int n_, int d_) : n(n_), d(d_) {
    if (d < 1 || d >= n) {
      throw DomainError("Dims: need 1 <= d < n, got n=" + std::to_string(n) +
                        " d=" + std::to_string(d));
    }
    if (n + 1 > 16) throw DomainError("Dims: n+1 must be <= 16");
  }

  int ambient() const { return n + 1; }
  /// dim V_0^perp = d+1 (coordinates 0..d); dim V_0 = n-d (coordinates d+1..n).
  int perp_dim() const { return d + 1; }
  int fixed_dim() const { return n - d; }
  /// Bitmask of the V_0^perp coordinates {0..d}.
  std::uint32_t perp_mask() const { return (1u << (d + 1)) - 1u; }

  /// Dirichlet exponent (n-d)/(d+1).
  double dirichlet_exponent() const {
    return static_cast<double>(n - d) / static_cast<double>(d + 1);
  }
  Rational dirichlet_exponent_exact() const {
    Rational r(n - d, d + 1);
    r.canonicalize();
    return r;
  }

  bool operator==(const Dims&) const = default;
};

/// delta_k = (n+1-k) k.
inline int delta_k(const Dims& dims, int k) { return (dims.n + 1 - k) * k; }

/// A value in [0, +inf], stored by its natural logarithm so that heights far
/// in the cusp do not overflow. Zero is log = -inf.
class ExtendedReal {
 public:
  ExtendedReal() = default;

  static ExtendedReal zero() { return ExtendedReal(false, -kInf); }
  static ExtendedReal infinity() { return ExtendedReal(true, kInf); }
  static ExtendedReal from_log(double log_value) {
    if (log_value == kInf) return infinity();
    return ExtendedReal(false, log_value);
  }
  static ExtendedReal from_value(double value) {
    if (value < 0) throw DomainError("ExtendedReal: negative value");
    if (std::isinf(value)) return infinity();
    return ExtendedReal(false, value == 0 ? -kInf : std::log(value));
  }

  bool is_infinite() const { return infinite_; }
  bool is_zero() const { return !infinite_ && log_ == -kInf; }
  double log() const { return log_; }
  /// Natural value; may overflow to +inf for finite but huge heights, check
  /// is_infinite() to tell the two apart.
  double value() const { return infinite_ ? kInf : std::exp(log_); }

  ExtendedReal pow(double exponent) const {
    if (exponent <= 0) throw DomainError("ExtendedReal::pow: exponent must be > 0");
    if (infinite_) return infinity();
    return from_log(log_ * exponent);
  }

  friend bool operator<(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.log_ < b.log_;
  }
  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.log_ == b.log_);
  }

  std::string to_string() const;

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();
  ExtendedReal(bool inf, double lg) : infinite_(inf), log_(lg) {}
  bool infinite_ = false;
  double log_ = -kInf;
};

inline long double to_ld(Real x) { return static_cast<long double>(x); }

/// Natural log of |x| for an extended-precision real; -inf for 0.
long double log_abs(Real x);
/// log|x| for an exact rational, robust to numerators beyond double range.
long double log_abs(const Rational& x);

/// Exact rational from a binary floating value (every finite double is a
/// dyadic rational).
Rational rational_from_double(double x);

std::string format_double(double x);

}  // namespace affsing
