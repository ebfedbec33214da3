#pragma once

// Margulis height functions on the space of lattices: the vector function
// phi_eps, its lattice maximum alpha = alpha_eps^theta, the b_t-smoothed
// alpha_tilde, and the growth exponent rho along b_t.

#include <optional>
#include <vector>

#include "affsing/lattice.hpp"

namespace affsing::height {

using algebra::ExtVector;
using algebra::LogReal;
using lattice::IntegralDecomposable;
using lattice::LatticePoint;

struct HeightParams {
  double epsilon = 1.0;
  double theta = 0.49;
  double delta = 0.02;
  /// Initial enumeration radius per grade; grown adaptively.
  double cutoff_R = 1.0;
  /// Largest radius the adaptive search may reach.
  double cutoff_R_max = 64.0;
  double T_max = 40.0;
  double h = 0.05;

  /// theta = d/(d+1) - 0.01, delta = 0.02, epsilon = 1.
  static HeightParams defaults(const Dims& dims);
  /// Throws ConfigError unless 0 < delta < theta < d/(d+1) and 0 < epsilon <= 1.
  void validate(const Dims& dims) const;
};

/// The exponent (d+1)/(d+1-i) attached to the block pi_i.
double block_exponent(const Dims& dims, int i);

/// phi_eps(v) for v in Lambda^k R^{n+1}, k = v.grade().
ExtendedReal phi_eps(const ExtVector<LogReal>& v, const Dims& dims, double epsilon);
ExtendedReal phi_eps(const ExtVector<Rational>& v, const Dims& dims, double epsilon);
ExtendedReal phi_eps(const ExtVector<double>& v, const Dims& dims, double epsilon);

struct AlphaResult {
  ExtendedReal value;
  std::optional<IntegralDecomposable> witness;
  /// Upper bound on phi^theta over every decomposable outside the searched radii.
  double excluded_bound = 0;
  /// True when excluded_bound <= value, i.e. the maximum is certified.
  bool complete = false;
  std::vector<double> radius;  ///< final radius per grade k = 1..n
};

AlphaResult alpha(const LatticePoint& y, const HeightParams& params, const lattice::EnumOptions& opt = {});

struct DampedIntegral {
  double value = 0;
  double step_error = 0;  ///< |I_h - I_{2h}| / 3, zero for an odd step count
};

/// Trapezoid rule for the integral over [0, (m-1) h] of e^{-delta t} f(t),
/// from samples f(j h), j = 0..m-1.
DampedIntegral damped_trapezoid(const std::vector<double>& samples, double h, double delta);

struct AlphaTildeResult {
  ExtendedReal value;
  double step_error = 0;      ///< |I_h - I_{2h}| / 3
  double tail_bound = 0;      ///< e^{-delta T_max} max(alpha) / delta
  double quadrature_error = 0;
  int evaluations = 0;
};

/// Values only: no witness generators are recovered along the orbit.
AlphaTildeResult alpha_tilde(const LatticePoint& y, const HeightParams& params, lattice::EnumOptions opt = {});

struct RhoResult {
  double rho = 0;        ///< max of log alpha(b_t y)/t over the upper half grid; +inf if alpha is infinite
  double slope_fit = 0;  ///< least-squares slope of log alpha against t
  double rho_upper = 0;  ///< same statistic using max(alpha, excluded_bound)
  bool infinite = false;
  double first_infinite_t = 0;
  std::vector<double> t;
  std::vector<double> log_alpha;
  std::vector<double> log_excluded;
};

/// The statistics of rho_estimate from finite samples of log alpha(b_t y).
RhoResult rho_from_samples(std::vector<double> t, std::vector<double> log_alpha, std::vector<double> log_excluded,
                           double T);
RhoResult rho_estimate(const LatticePoint& y, const HeightParams& params, double T, int grid,
                       lattice::EnumOptions opt = {});

/// Smallest nonzero norm of a y-integral decomposable of grade k.
double min_decomposable_log_norm(const LatticePoint& y, int k, const lattice::EnumOptions& opt = {});

/// epsilon = min over the sample and k = 1..n of (min decomposable norm)^{1/delta_k},
/// clamped to at most 1.
double default_epsilon(const std::vector<LatticePoint>& sample, const lattice::EnumOptions& opt = {});

}  // namespace affsing::height
