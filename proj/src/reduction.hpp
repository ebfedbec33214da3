#pragma once

// Internal short-vector machinery shared by the lattice and height modules.
// A lattice is given by a basis matrix M (rows x cols, exact or extended
// precision) and per-row log scales L; its vectors are diag(e^L) M c for
// integer c. Enumeration is LLL preconditioning followed by Fincke-Pohst over
// the Euclidean ball that contains the requested sup-norm ball, with the
// final sup-norm membership evaluated exactly where the basis is exact.

#include <cstdint>
#include <optional>
#include <vector>

#include "affsing/lattice.hpp"

namespace affsing::lattice::detail {

using algebra::LogReal;

struct ScaledBasis {
  int rows = 0;
  int cols = 0;
  std::vector<long double> log_scale;           // rows
  std::vector<Real> real;                       // rows * cols, row-major
  std::optional<std::vector<Rational>> exact;   // rows * cols, row-major
};

struct Found {
  std::vector<long long> coeffs;  // in the original basis
  std::vector<LogReal> value;     // diag(e^L) M c
  double log_norm = 0;
};

class Enumerator {
 public:
  Enumerator(ScaledBasis basis, std::uint64_t node_budget);

  /// Log sup-norm of the shortest reduced basis vector: an upper bound for
  /// the first minimum.
  double reduced_bound_log() const { return reduced_bound_log_; }

  /// All c != 0 up to sign with log ||diag(e^L) M c||_inf <= log_radius;
  /// only those with gcd(c) = 1 when primitive_only is set.
  std::vector<Found> enumerate(double log_radius, bool primitive_only = false);

  std::vector<LogReal> evaluate(const std::vector<long long>& c) const;

  std::uint64_t nodes_used() const { return nodes_; }

 private:
  void reduce();
  /// LLL on the basis with the diagonal scales raised to the power `share`.
  void reduce_at(long double share);
  void gram_schmidt();

  ScaledBasis b_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<long long> gamma_;          // cols x cols, column j = reduced vector j in original coords
  std::vector<long double> reduced_;      // rows x cols scaled reduced basis
  std::vector<long double> mu_;           // cols x cols
  std::vector<long double> bstar_;        // cols
  double reduced_bound_log_ = 0;
};

/// Lambda^k of a word: rows/cols indexed by the lexicographic basis of grade k.
ScaledBasis exterior_basis(const FlowWord& word, int k);

/// Log of the Euclidean covolume sqrt(det(B^T B)) of the scaled basis.
long double log_covolume(const ScaledBasis& b);

/// Determinant of a k x k matrix given row-major.
Rational det_exact(std::vector<Rational> m, int k);
Real det_real(std::vector<Real> m, int k);

}  // namespace affsing::lattice::detail
