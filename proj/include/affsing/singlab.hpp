#pragma once

// Singularity and divergence-on-average experiments: Dirichlet improvement
// profiles, systole curves along g_t, finite-horizon sampling of the
// divergent-on-average fibre set, excursion statistics of the smoothed
// height, and Monte Carlo checks of the contraction inequalities.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "affsing/dioph.hpp"
#include "affsing/height.hpp"
#include "affsing/lattice.hpp"

namespace affsing::singlab {

using algebra::ExtVector;
using lattice::EnumOptions;
using lattice::LatticePoint;
using IntVector = std::vector<long long>;

enum class Verdict { SingularWitnessed, NonsingularSuggested, Undetermined };
std::string to_string(Verdict v);

struct SingularityProfile {
  std::vector<long long> N_grid;
  /// N^n * min over 0 < ||q||_inf <= N of dist(q.x, Z).
  std::vector<double> eps_values;
  Verdict verdict = Verdict::Undetermined;
  std::optional<IntVector> relation;  ///< q with q.x in Z
  double floor = 0;                   ///< min eps over the upper half of the grid
  double slope = 0;                   ///< log-log slope of eps against N
};

/// Exhaustive minimization over the box ||q||_inf <= max(N_grid).
SingularityProfile dirichlet_profile(const std::vector<ParsedScalar>& x, const std::vector<long long>& N_grid,
                                     std::uint64_t budget = 4'000'000'000ULL);

struct DivergenceOptions {
  double sigma = 0.1;
  int horizon = 0;    ///< number of integer-step times l*step, l = 1..horizon
  double step = 1.0;
  EnumOptions enumeration;
};

struct DivergenceProfile {
  std::vector<double> t;
  std::vector<double> log_systole;
  std::vector<double> times;              ///< l * step
  std::vector<double> log_systole_times;
  /// fraction[N-1] = #{l <= N : systole >= sigma} / N.
  std::vector<double> fraction;
  double sigma = 0.1;
  double decay_slope = 0;  ///< slope of log systole over the upper half of t
};

/// Systole of g_t y along t_grid and at the integer times.
DivergenceProfile divergence_profile(const LatticePoint& y, const std::vector<double>& t_grid,
                                     const DivergenceOptions& opt = {});
/// Same for y = u(x) Z^{n+1}, n = x.size() >= 2.
DivergenceProfile divergence_profile(const std::vector<Number>& x, const std::vector<double>& t_grid,
                                     const DivergenceOptions& opt = {});

struct DaniSample {
  double dirichlet_floor = 0;
  double systole_floor = 0;
};

struct DaniReport {
  std::vector<DaniSample> samples;
  double spearman = 0;
};

/// Floors of the Dirichlet profile over every N in [N_lo, N_max] and of the
/// systole over t in [(n+1) log N_lo, (n+1) log N_max] + t_lag with the given
/// step. A denominator q with ||q|| = N and N^n dist(q.x, Z) = E is shortest
/// at the scale N E^{-1/(n+1)}, i.e. log(1/E) later in t, hence the lag.
DaniReport dani_consistency(const std::vector<std::vector<ParsedScalar>>& xs, long long N_lo, long long N_max,
                            double t_step, double t_lag = 4.0, const EnumOptions& opt = {});

enum class FibrePath { Factored, Direct };

struct EAOptions {
  int grid_resolution = 64;  ///< cells per axis, a power of two
  double t = 1.0;
  std::vector<int> horizons{10, 20, 40};
  double sigma = 0.1;
  /// A cell is flagged when the fraction of times with systole >= sigma is <= eta.
  double eta = 0.5;
  FibrePath path = FibrePath::Factored;
  EnumOptions enumeration;
};

struct EASample {
  std::vector<std::vector<double>> points;  ///< sample point s of each cell
  std::vector<int> horizons;
  /// flagged[h][cell]: the fraction test at horizons[h] alone. Generic A
  /// give sets shrinking in h; rational A do not, since their fibres only
  /// start to diverge after a delay set by the denominators.
  std::vector<std::vector<bool>> flagged;
  std::vector<double> flagged_fraction;
  std::vector<int> scales;                  ///< boxes per axis, 1, 2, 4, ...
  std::vector<long long> box_counts;        ///< at the largest horizon
  double dim_raw = 0;
  double dim_estimate = 0;                  ///< dim_raw clamped to [0, d]
  std::string caveat = "finite-horizon upper-set";
};

/// Classifies the fibre points x = (s, s~A), s in I^d, by the systole
/// fraction test of g_{lt} u(x) Z^{n+1}.
EASample sample_EA(const dioph::AffineParam& A, const EAOptions& opt = {});

struct ExcursionOptions {
  double t = 2.0;
  int N = 20;
  std::optional<double> M;   ///< threshold; from the pilot run when unset
  int samples = 200;
  int pilot = 200;
  double pilot_quantile = 0.9;
  double pilot_factor = 4.0;
  std::vector<double> eta_grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<double> M_factors{0.5, 1.0, 2.0, 4.0};
  std::uint64_t seed = 1;
  height::HeightParams params;
  /// Quadrature step for alpha_tilde; replaces params.h.
  double alpha_tilde_step = 0.5;
  EnumOptions enumeration;
};

struct ExcursionStats {
  double t = 0;
  int N = 0;
  double M = 0;
  bool M_from_pilot = false;
  std::vector<std::vector<double>> s;
  /// sequences[j][l-1] = alpha_tilde(g_{lt} u(s_j) y_A); +inf allowed.
  std::vector<std::vector<double>> sequences;
  std::vector<double> eta_grid;
  std::vector<double> z_measure;  ///< at M, per eta
  std::vector<double> M_grid;
  std::vector<std::vector<double>> z_measure_by_M;  ///< [M index][eta index]
  /// run_counts[L-1] = #{(j, m) : below M at m, at or above M for m+1..m+L}.
  std::vector<long long> run_counts;
  double log_z_slope = 0;          ///< slope of log z_measure against eta
  double predicted_exponent = 0;   ///< -(theta - delta) N t, per unit eta
  int infinite_samples = 0;
};

ExcursionStats excursion_stats(const dioph::AffineParam& A, const ExcursionOptions& opt);

struct DplusResult {
  double estimate = 0;
  double ci_lo = 0;
  double ci_hi = 0;
  long long hits = 0;
  long long samples = 0;
};

/// Measure of {s in I^d : ||pi_+(u(s) v)||_inf <= r} for v in Lambda^i R^{d+1},
/// normalized to unit sup-norm first.
DplusResult dplus_measure(const ExtVector<double>& v, double r, long long samples, std::uint64_t seed);

struct DplusSweep {
  std::vector<double> r;
  std::vector<DplusResult> results;
  double slope = 0;       ///< log-log slope over the r with a positive estimate
  double fitted_C = 0;    ///< max estimate / r^i
};

/// One shared sample of s for all r, so the estimates are monotone in r.
DplusSweep dplus_sweep(const ExtVector<double>& v, const std::vector<double>& r_grid, long long samples,
                       std::uint64_t seed);

/// Random v in Lambda^i R^{d+1} whose affine map s -> pi_+(u(s) v) vanishes
/// at a random interior point of I^d, so that small r are informative.
ExtVector<double> random_dplus_vector(int d, int i, std::mt19937_64& rng);

struct ContractionSpec {
  long long samples = 100'000;
  std::vector<double> t_grid{1, 2, 3, 4, 5};
  double tolerance = 0.10;
  int vector_grade = 0;        ///< 0 means d
  double theta_prime = 0;      ///< 0 means d/(d+1) - 0.01
  double cusp_depth_lo = 10;   ///< tau range of the cusp sample
  double cusp_depth_hi = 12;
  double shift_depth = 6;      ///< b-flow time applied to the drifting sample
  double fix_scale = 1e-4;     ///< first row of A shrunk by this in the drifting sample
  int drift_points = 16;
  std::vector<ParsedScalar> A;  ///< empty means fractional parts of square roots
  EnumOptions enumeration;
};

struct ContractionCheck {
  std::string name;
  double target_slope = 0;
  double median_slope = 0;     ///< median over samples of per-sample log slopes
  double pooled_slope = 0;     ///< slope of the log of the sample mean
  double fitted_C = 0;         ///< smallest C with mean(t) <= C e^{target t}
  double delta = 0;            ///< smoothing rate used (alpha_tilde check only)
  double rel_error = 0;
  bool pass = false;
  long long samples = 0;
  long long discarded = 0;     ///< samples with a zero or infinite value
  std::vector<double> t;
  std::vector<double> log_mean;
};

struct ContractionReport {
  std::vector<ContractionCheck> checks;
  bool all_pass = false;
};

ContractionReport contraction_report(const Dims& dims, const height::HeightParams& params,
                                     const ContractionSpec& spec, std::uint64_t seed);

/// Default irrational parameter: fractional parts of sqrt of successive primes.
dioph::AffineParam default_affine_param(const Dims& dims, unsigned precision_bits = 256);

}  // namespace affsing::singlab
