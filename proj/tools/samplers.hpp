#pragma once

// Seeded random inputs shared by the CLI suites and the acceptance tests.

#include <random>
#include <string>
#include <vector>

#include "affsing/algebra.hpp"
#include "affsing/dioph.hpp"
#include "affsing/stats.hpp"

namespace affsing::tools {

inline long long uniform_int(std::mt19937_64& rng, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

/// p/q with 1 <= q <= max_den and 0 <= p < q.
inline Rational random_fraction(std::mt19937_64& rng, long long max_den) {
  long long q = uniform_int(rng, 1, max_den);
  Rational r(static_cast<signed long>(uniform_int(rng, 0, q - 1)), static_cast<signed long>(q));
  r.canonicalize();
  return r;
}

/// Rational in [-bound, bound] with denominator up to max_den.
inline Rational random_rational(std::mt19937_64& rng, long long bound, long long max_den) {
  long long q = uniform_int(rng, 1, max_den);
  Rational r(static_cast<signed long>(uniform_int(rng, -bound * q, bound * q)), static_cast<signed long>(q));
  r.canonicalize();
  return r;
}

inline dioph::AffineParam random_rational_A(std::mt19937_64& rng, const Dims& dims, long long max_den = 50) {
  std::vector<Rational> e;
  for (int j = 0; j < (dims.d + 1) * (dims.n - dims.d); ++j) e.push_back(random_fraction(rng, max_den));
  return dioph::AffineParam::from_rationals(dims, e);
}

/// Uniform doubles in [0, 1), kept as their exact decimal expansion.
inline dioph::AffineParam random_real_A(std::mt19937_64& rng, const Dims& dims, unsigned precision_bits = 256) {
  std::vector<std::string> e;
  for (int j = 0; j < (dims.d + 1) * (dims.n - dims.d); ++j) {
    e.push_back(format_double(stats::centered_uniform(rng) + 0.5));
  }
  return dioph::AffineParam::from_strings(dims, e, precision_bits);
}

/// Entries of the form (sqrt(a) + b) / c with a not a square: irrational
/// algebraic numbers of degree two.
inline dioph::AffineParam random_algebraic_A(std::mt19937_64& rng, const Dims& dims, unsigned precision_bits = 256) {
  std::vector<std::string> e;
  for (int j = 0; j < (dims.d + 1) * (dims.n - dims.d); ++j) {
    long long a;
    for (;;) {
      a = uniform_int(rng, 2, 97);
      long long r = static_cast<long long>(std::sqrt(static_cast<double>(a)));
      if (r * r != a && (r + 1) * (r + 1) != a) break;
    }
    long long c = uniform_int(rng, 2, 9);
    long long fl = static_cast<long long>(std::floor(std::sqrt(static_cast<double>(a))));
    long long b = -fl + uniform_int(rng, 0, c - 1);
    e.push_back("(sqrt(" + std::to_string(a) + ")" + (b < 0 ? "-" : "+") + std::to_string(b < 0 ? -b : b) + ")/" +
                std::to_string(c));
  }
  return dioph::AffineParam::from_strings(dims, e, precision_bits);
}

inline std::vector<Rational> random_int_vector(std::mt19937_64& rng, int dim, long long bound) {
  std::vector<Rational> v;
  for (int j = 0; j < dim; ++j) v.emplace_back(static_cast<signed long>(uniform_int(rng, -bound, bound)));
  return v;
}

/// Random w in Lambda^i(V_0^perp) inside Lambda^i R^{n+1}, integer entries.
inline algebra::ExtVector<Rational> random_perp_vector(std::mt19937_64& rng, const Dims& dims, int i, long long bound) {
  algebra::ExtVector<Rational> w(dims.ambient(), i);
  for (std::size_t p = 0; p < w.size(); ++p) {
    if ((w.mask(p) & ~dims.perp_mask()) == 0) w[p] = Rational(static_cast<signed long>(uniform_int(rng, -bound, bound)));
  }
  return w;
}

/// Random rational v in Lambda^k R^N.
inline algebra::ExtVector<Rational> random_ext_vector(std::mt19937_64& rng, int N, int k, long long bound,
                                                      long long max_den) {
  algebra::ExtVector<Rational> v(N, k);
  for (std::size_t p = 0; p < v.size(); ++p) v[p] = random_rational(rng, bound, max_den);
  return v;
}

}  // namespace affsing::tools
