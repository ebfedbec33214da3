#pragma once

// Diophantine exponent of a matrix A (sup-norm record enumeration), the
// projective formulation via rational hyperplanes, and the closed-form
// exponent/dimension relations.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "affsing/core.hpp"
#include "affsing/number.hpp"

namespace affsing::dioph {

using IntVector = std::vector<long long>;

/// A (d+1) x (n-d) matrix parameterizing the affine subspace
/// {(s, s~A)}, s~ = (1, s).
struct AffineParam {
  Dims dims;
  std::vector<ParsedScalar> entries;  ///< row-major

  AffineParam(const Dims& dims_, std::vector<ParsedScalar> entries_);
  static AffineParam from_strings(const Dims& dims, const std::vector<std::string>& entries,
                                  unsigned precision_bits = 256);
  static AffineParam from_rationals(const Dims& dims, const std::vector<Rational>& entries);

  int rows() const { return dims.d + 1; }
  int cols() const { return dims.n - dims.d; }
  bool is_exact() const;
  std::vector<Number> numbers() const;
  const ParsedScalar& at(int r, int c) const { return entries[static_cast<std::size_t>(r * cols() + c)]; }
};

struct BestApproxRecord {
  IntVector q;
  IntVector p;
  double err = 0;       ///< ||A q - p||_inf
  double log_err = 0;
  double height = 0;    ///< ||q||_inf
  double exponent = 0;  ///< -log(err)/log(height); NaN at height 1
};

struct OmegaResult {
  ExtendedReal omega;
  std::vector<BestApproxRecord> records;
  std::optional<std::pair<IntVector, IntVector>> exact_relation;  ///< (q, p) with A q = p
  long long Q_max = 0;
  /// Least-squares slope of -log(err) against log(height) over the records
  /// with height > 1. Converges faster than the upper-range maximum.
  double record_slope = 0;
};

struct OmegaOptions {
  unsigned precision_bits = 256;
  std::uint64_t budget = 50'000'000;  ///< maximum number of q examined
  /// Lower end of the height range read by omega_geometric; 0 means sqrt(H_max).
  double lower_height = 0;
};

/// Scans 0 < ||q||_inf <= Q_max. The estimate is the largest exponent
/// -log||Aq - p|| / log||q|| among q with ||q|| in [sqrt(Q_max), Q_max].
OmegaResult omega_estimate(const AffineParam& A, long long Q_max, const OmegaOptions& opt = {});

/// ||P_W v_Q||_2 / ||v_Q||_2 with W spanned by the rows of [I_{d+1} | A].
double proj_distance(const AffineParam& A, const IntVector& vQ);

struct HyperplaneRecord {
  IntVector vQ;
  double height = 0;  ///< Euclidean
  double distance = 0;
  double exponent = 0;  ///< -log(distance)/log(height) - 1
};

struct GeometricResult {
  double omega = 0;
  bool infinite = false;  ///< some hyperplane contains W_A
  std::vector<HyperplaneRecord> records;
  double H_max = 0;
};

/// Scans primitive v_Q with H(Q) <= H_max whose sup-distance ||p + A q|| is
/// below 3/2 (every other hyperplane has exponent <= 0 up to a bounded
/// factor). The estimate is the largest exponent with H in [sqrt(H_max), H_max].
GeometricResult omega_geometric(const AffineParam& A, double H_max, const OmegaOptions& opt = {});

/// Height in the projective formulation matched to a sup-norm height Q:
/// Q * sqrt(1 + sum of squared entries) for n - d = 1.
double matched_height(const AffineParam& A, double Q);

/// Upper bound for the Hausdorff dimension as a function of omega.
double dim_bound(const ExtendedReal& omega, const Dims& dims);
Rational dim_bound_exact(const Rational& omega, const Dims& dims);

/// Upper bound on rho(y_A) in terms of omega(A) < n.
double rho_bound(double omega, double theta, const Dims& dims);

struct OmegaLowerCases {
  std::optional<double> case11;  ///< only when its denominator is positive
  double case12 = 0;
  std::optional<double> case2;   ///< only when its denominator is positive
  double minimum = 0;
};

OmegaLowerCases omega_lower_cases(double rho0, double theta, const Dims& dims);
double omega_lower_from_rho(double rho0, double theta, const Dims& dims);

/// rho0 = (dn - 1) theta / (d (n+1)), where the second and third cases meet.
double crossover_rho(double theta, const Dims& dims);

}  // namespace affsing::dioph
