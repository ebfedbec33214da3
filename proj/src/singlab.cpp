#include "affsing/singlab.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "affsing/stats.hpp"
#include "shell.hpp"

namespace affsing::singlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGoldenFraction = 0.6180339887498949;

using algebra::FlowKind;
using algebra::Mask;
using lattice::FlowWord;

std::vector<Number> numbers_of(const std::vector<ParsedScalar>& xs) {
  std::vector<Number> out;
  for (const auto& x : xs) out.push_back(x.number());
  return out;
}

/// Index of the first element of the upper half of a grid of size m.
std::size_t upper_half_start(std::size_t m) { return m / 2; }

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::SingularWitnessed:
      return "singular-witnessed";
    case Verdict::NonsingularSuggested:
      return "nonsingular-suggested";
    case Verdict::Undetermined:
      return "undetermined";
  }
  return "undetermined";
}

// ---------------------------------------------------------------------------
// Dirichlet profile

SingularityProfile dirichlet_profile(const std::vector<ParsedScalar>& x, const std::vector<long long>& N_grid_in,
                                     std::uint64_t budget) {
  const int n = static_cast<int>(x.size());
  if (n < 1) throw DomainError("dirichlet_profile: x must be nonempty");
  if (N_grid_in.empty()) throw DomainError("dirichlet_profile: empty N grid");
  std::vector<long long> grid = N_grid_in;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.front() < 1) throw DomainError("dirichlet_profile: N must be positive");
  const long long N_max = grid.back();

  SingularityProfile out;
  out.N_grid = grid;
  out.eps_values.assign(grid.size(), 0.0);

  const bool exact = std::all_of(x.begin(), x.end(), [](const ParsedScalar& s) { return s.exact.has_value(); });
  // Exact path: q.x = (sum num_i q_i) / L.
  Integer L = 1;
  std::vector<Integer> num(static_cast<std::size_t>(n));
  bool small = false;
  std::vector<long long> num64(static_cast<std::size_t>(n));
  long long L64 = 1;
  if (exact) {
    for (const auto& s : x) L = lcm(L, s.exact->get_den());
    Integer bound = Integer(1) << 60;
    small = L < bound;
    for (int i = 0; i < n; ++i) {
      Rational v = *x[static_cast<std::size_t>(i)].exact * L;
      num[static_cast<std::size_t>(i)] = v.get_num();
      Integer r = num[static_cast<std::size_t>(i)] % L;
      num[static_cast<std::size_t>(i)] = r;  // only the residue matters
      if (abs(r) >= bound) small = false;
    }
    if (small) {
      L64 = L.get_si();
      for (int i = 0; i < n; ++i) num64[static_cast<std::size_t>(i)] = num[static_cast<std::size_t>(i)].get_si();
    }
  }
  std::vector<long double> xl(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    HighPrecision frac = x[static_cast<std::size_t>(i)].value - floor(x[static_cast<std::size_t>(i)].value);
    xl[static_cast<std::size_t>(i)] = frac.convert_to<long double>();
  }

  long double best = 1.0L;  // dist(q.x, Z) <= 1/2 always
  std::uint64_t examined = 0;
  std::optional<IntVector> relation;
  std::size_t gi = 0;

  auto high_precision_dist = [&](const IntVector& q) {
    HighPrecision acc = 0;
    for (int i = 0; i < n; ++i) acc += x[static_cast<std::size_t>(i)].value * q[static_cast<std::size_t>(i)];
    HighPrecision frac = acc - round(acc);
    return HighPrecision(abs(frac));
  };

  for (long long H = 1; H <= N_max && !relation; ++H) {
    detail::for_each_in_shell(n, H, [&](const IntVector& q) {
      if (relation) return;
      if (++examined > budget) throw BudgetExceeded("dirichlet_profile: more than " + std::to_string(budget) + " q examined");
      long double dist;
      if (exact && small) {
        __int128 acc = 0;
        for (int i = 0; i < n; ++i) acc += static_cast<__int128>(num64[static_cast<std::size_t>(i)]) * q[static_cast<std::size_t>(i)];
        __int128 r = acc % L64;
        if (r < 0) r += L64;
        __int128 dn = std::min<__int128>(r, L64 - r);
        if (dn == 0) {
          relation = q;
          return;
        }
        dist = static_cast<long double>(static_cast<long long>(dn)) / static_cast<long double>(L64);
      } else if (exact) {
        Integer acc = 0;
        for (int i = 0; i < n; ++i) acc += num[static_cast<std::size_t>(i)] * Integer(static_cast<signed long>(q[static_cast<std::size_t>(i)]));
        Integer r;
        mpz_fdiv_r(r.get_mpz_t(), acc.get_mpz_t(), L.get_mpz_t());
        Integer dn = std::min(r, Integer(L - r));
        if (sgn(dn) == 0) {
          relation = q;
          return;
        }
        dist = static_cast<long double>(Rational(dn, L).get_d());
      } else {
        long double acc = 0;
        for (int i = 0; i < n; ++i) acc += xl[static_cast<std::size_t>(i)] * static_cast<long double>(q[static_cast<std::size_t>(i)]);
        dist = std::fabs(acc - std::nearbyint(acc));
        if (dist < best * 1.000001L) {
          // Candidate record: confirm at the working precision.
          HighPrecision hp = high_precision_dist(q);
          if (hp == 0) {
            throw PrecisionError("dirichlet_profile: q.x is integral to working precision; give exact entries");
          }
          dist = hp.convert_to<long double>();
        }
      }
      if (dist < best) best = dist;
    });
    if (relation) break;
    while (gi < grid.size() && grid[gi] == H) {
      out.eps_values[gi] = std::pow(static_cast<double>(H), n) * static_cast<double>(best);
      ++gi;
    }
  }
  if (relation) {
    // Profile values below the relation's height are still exact minima.
    for (; gi < grid.size(); ++gi) out.eps_values[gi] = 0.0;
    out.relation = relation;
    out.verdict = Verdict::SingularWitnessed;
    out.floor = 0.0;
    out.slope = -kInf;
    return out;
  }
  const std::size_t mid = upper_half_start(grid.size());
  double lower = kInf, upper = kInf;
  std::vector<double> lx, ly;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    (j < mid ? lower : upper) = std::min(j < mid ? lower : upper, out.eps_values[j]);
    lx.push_back(std::log(static_cast<double>(grid[j])));
    ly.push_back(std::log(out.eps_values[j]));
  }
  out.floor = upper;
  out.slope = grid.size() >= 2 ? stats::ls_slope(lx, ly) : 0.0;
  if (grid.size() >= 2 && upper > 0 && upper >= 0.25 * lower) {
    out.verdict = Verdict::NonsingularSuggested;
  } else {
    out.verdict = Verdict::Undetermined;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Systole curves

DivergenceProfile divergence_profile(const LatticePoint& y, const std::vector<double>& t_grid,
                                     const DivergenceOptions& opt) {
  if (!(opt.sigma > 0 && opt.sigma <= 1)) throw DomainError("divergence_profile: sigma must lie in (0, 1]");
  if (opt.horizon < 0 || !(opt.step > 0)) throw DomainError("divergence_profile: need horizon >= 0 and step > 0");
  DivergenceProfile out;
  out.sigma = opt.sigma;
  for (double t : t_grid) {
    out.t.push_back(t);
    out.log_systole.push_back(lattice::systole(y.flowed(FlowKind::G, t), opt.enumeration).log_value);
  }
  const double log_sigma = std::log(opt.sigma);
  int inside = 0;
  for (int l = 1; l <= opt.horizon; ++l) {
    double t = l * opt.step;
    double ls = lattice::systole(y.flowed(FlowKind::G, t), opt.enumeration).log_value;
    out.times.push_back(t);
    out.log_systole_times.push_back(ls);
    if (ls >= log_sigma) ++inside;
    out.fraction.push_back(static_cast<double>(inside) / l);
  }
  if (out.t.size() >= 2) {
    const std::size_t mid = upper_half_start(out.t.size());
    std::vector<double> tx(out.t.begin() + static_cast<long>(mid), out.t.end());
    std::vector<double> ty(out.log_systole.begin() + static_cast<long>(mid), out.log_systole.end());
    out.decay_slope = tx.size() >= 2 ? stats::ls_slope(tx, ty) : 0.0;
  }
  return out;
}

DivergenceProfile divergence_profile(const std::vector<Number>& x, const std::vector<double>& t_grid,
                                     const DivergenceOptions& opt) {
  const int n = static_cast<int>(x.size());
  if (n < 2) throw DomainError("divergence_profile: x must have at least two entries");
  return divergence_profile(LatticePoint::from_x(x, Dims(n, 1)), t_grid, opt);
}

DaniReport dani_consistency(const std::vector<std::vector<ParsedScalar>>& xs, long long N_lo, long long N_max,
                            double t_step, double t_lag, const EnumOptions& opt) {
  if (N_lo < 1 || N_max <= N_lo) throw DomainError("dani_consistency: need 1 <= N_lo < N_max");
  if (!(t_step > 0)) throw DomainError("dani_consistency: t_step must be > 0");
  if (!(t_lag >= 0)) throw DomainError("dani_consistency: t_lag must be >= 0");
  DaniReport out;
  std::vector<long long> grid;
  for (long long N = N_lo; N <= N_max; ++N) grid.push_back(N);
  for (const auto& x : xs) {
    const int n = static_cast<int>(x.size());
    SingularityProfile p = dirichlet_profile(x, grid);
    DaniSample s;
    s.dirichlet_floor = *std::min_element(p.eps_values.begin(), p.eps_values.end());
    const double t_lo = (n + 1) * std::log(static_cast<double>(N_lo)) + t_lag;
    const double t_hi = (n + 1) * std::log(static_cast<double>(N_max)) + t_lag;
    const int steps = static_cast<int>(std::ceil((t_hi - t_lo) / t_step));
    std::vector<double> ts;
    for (int j = 0; j <= steps; ++j) ts.push_back(std::min(t_hi, t_lo + j * t_step));
    DivergenceOptions dopt;
    dopt.enumeration = opt;
    DivergenceProfile dp = divergence_profile(numbers_of(x), ts, dopt);
    s.systole_floor = std::exp(*std::min_element(dp.log_systole.begin(), dp.log_systole.end()));
    out.samples.push_back(s);
  }
  std::vector<double> a, b;
  for (const auto& s : out.samples) {
    a.push_back(s.dirichlet_floor);
    b.push_back(s.systole_floor);
  }
  out.spearman = out.samples.size() >= 2 ? stats::spearman(a, b) : 0.0;
  return out;
}

// ---------------------------------------------------------------------------
// Fibre sampling

namespace {

LatticePoint fibre_point(const dioph::AffineParam& A, const std::vector<Number>& An, const std::vector<double>& s,
                         FibrePath path) {
  const Dims& dims = A.dims;
  std::vector<Number> sn;
  for (double v : s) sn.push_back(Number::from_double(v));
  if (path == FibrePath::Direct) {
    return LatticePoint::from_x(algebra::affine_point(sn, An, dims), dims);
  }
  FlowWord w(dims);
  w.centralizer(An).unipotent_s(sn).unipotent_A(An);
  return LatticePoint(std::move(w));
}

}  // namespace

EASample sample_EA(const dioph::AffineParam& A, const EAOptions& opt) {
  const Dims& dims = A.dims;
  const int R = opt.grid_resolution;
  if (R < 1 || (R & (R - 1)) != 0) throw DomainError("sample_EA: grid_resolution must be a power of two");
  if (opt.horizons.empty()) throw DomainError("sample_EA: no horizons");
  if (!(opt.t > 0)) throw DomainError("sample_EA: t must be > 0");
  if (!(opt.sigma > 0 && opt.sigma <= 1)) throw DomainError("sample_EA: sigma must lie in (0, 1]");
  const int d = dims.d;
  double cells_d = std::pow(static_cast<double>(R), d);
  if (cells_d > 4e6) throw BudgetExceeded("sample_EA: grid has more than 4e6 cells");
  const auto cells = static_cast<std::size_t>(cells_d);
  std::vector<int> horizons = opt.horizons;
  std::sort(horizons.begin(), horizons.end());
  if (horizons.front() < 1) throw DomainError("sample_EA: horizons must be positive");
  const int N_max = horizons.back();
  const auto An = A.numbers();
  const double log_sigma = std::log(opt.sigma);

  EASample out;
  out.horizons = horizons;
  out.flagged.assign(horizons.size(), std::vector<bool>(cells, false));
  std::vector<std::vector<int>> index(cells, std::vector<int>(static_cast<std::size_t>(d)));
  for (std::size_t c = 0; c < cells; ++c) {
    std::size_t rest = c;
    std::vector<double> s(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
      int ik = static_cast<int>(rest % static_cast<std::size_t>(R));
      rest /= static_cast<std::size_t>(R);
      index[c][static_cast<std::size_t>(k)] = ik;
      // A fixed irrational offset inside the cell: cell centres are dyadic,
      // and dyadic s carry an integer relation that makes x singular.
      s[static_cast<std::size_t>(k)] = -0.5 + (ik + kGoldenFraction) / R;
    }
    out.points.push_back(s);
    LatticePoint y = fibre_point(A, An, s, opt.path);
    std::vector<bool> inside(static_cast<std::size_t>(N_max));
    for (int l = 1; l <= N_max; ++l) {
      double ls = lattice::systole(y.flowed(FlowKind::G, l * opt.t), opt.enumeration).log_value;
      inside[static_cast<std::size_t>(l - 1)] = ls >= log_sigma;
    }
    int count = 0, upto = 0;
    for (std::size_t h = 0; h < horizons.size(); ++h) {
      for (; upto < horizons[h]; ++upto) count += inside[static_cast<std::size_t>(upto)] ? 1 : 0;
      out.flagged[h][c] = static_cast<double>(count) / horizons[h] <= opt.eta;
    }
  }
  for (const auto& f : out.flagged) {
    out.flagged_fraction.push_back(static_cast<double>(std::count(f.begin(), f.end(), true)) / static_cast<double>(cells));
  }
  int levels = 0;
  while ((1 << levels) < R) ++levels;
  std::vector<double> lx, ly;
  const auto& last = out.flagged.back();
  for (int j = 0; j <= levels; ++j) {
    std::set<std::vector<int>> boxes;
    for (std::size_t c = 0; c < cells; ++c) {
      if (!last[c]) continue;
      std::vector<int> b(static_cast<std::size_t>(d));
      for (int k = 0; k < d; ++k) b[static_cast<std::size_t>(k)] = index[c][static_cast<std::size_t>(k)] >> (levels - j);
      boxes.insert(b);
    }
    out.scales.push_back(1 << j);
    out.box_counts.push_back(static_cast<long long>(boxes.size()));
    if (j >= 1 && !boxes.empty()) {
      lx.push_back(j * std::log(2.0));
      ly.push_back(std::log(static_cast<double>(boxes.size())));
    }
  }
  out.dim_raw = lx.size() >= 2 ? stats::ls_slope(lx, ly) : 0.0;
  out.dim_estimate = std::clamp(out.dim_raw, 0.0, static_cast<double>(d));
  return out;
}

// ---------------------------------------------------------------------------
// Excursions

ExcursionStats excursion_stats(const dioph::AffineParam& A, const ExcursionOptions& opt) {
  const Dims& dims = A.dims;
  opt.params.validate(dims);
  if (!(opt.t > 0) || opt.N < 1) throw DomainError("excursion_stats: need t > 0 and N >= 1");
  if (opt.samples < 1) throw DomainError("excursion_stats: samples must be >= 1");
  const auto An = A.numbers();
  const LatticePoint yA = LatticePoint::from_A(An, dims);
  auto shifted = [&](const std::vector<double>& s, double time) {
    std::vector<Number> sn;
    for (double v : s) sn.push_back(Number::real(static_cast<Real>(v)));
    FlowWord w(dims);
    w.flow(FlowKind::G, time).unipotent_s(sn);
    return yA.acted(w);
  };
  auto draw_s = [&](std::uint64_t stream) {
    auto rng = stats::make_rng(opt.seed, stream);
    std::vector<double> s(static_cast<std::size_t>(dims.d));
    for (auto& v : s) v = stats::centered_uniform(rng);
    return s;
  };
  if (!(opt.alpha_tilde_step > 0)) throw DomainError("excursion_stats: alpha_tilde_step must be > 0");
  height::HeightParams params = opt.params;
  params.h = opt.alpha_tilde_step;
  auto tilde = [&](const LatticePoint& y) {
    height::AlphaTildeResult r = height::alpha_tilde(y, params, opt.enumeration);
    return r.value.is_infinite() ? kInf : r.value.value();
  };

  ExcursionStats out;
  out.t = opt.t;
  out.N = opt.N;
  if (opt.M) {
    if (!(*opt.M > 0)) throw DomainError("excursion_stats: M must be > 0");
    out.M = *opt.M;
  } else {
    if (opt.pilot < 1) throw DomainError("excursion_stats: pilot must be >= 1 when M is unset");
    std::vector<double> pilot;
    for (int j = 0; j < opt.pilot; ++j) {
      double v = tilde(shifted(draw_s(1'000'000'000ULL + static_cast<std::uint64_t>(j)), 0.0));
      if (std::isfinite(v)) pilot.push_back(v);
    }
    if (pilot.empty()) throw DomainError("excursion_stats: every pilot sample is infinite");
    out.M = opt.pilot_factor * stats::quantile(pilot, opt.pilot_quantile);
    out.M_from_pilot = true;
  }

  for (int j = 0; j < opt.samples; ++j) {
    std::vector<double> s = draw_s(static_cast<std::uint64_t>(j));
    std::vector<double> seq;
    bool inf = false;
    for (int l = 1; l <= opt.N; ++l) {
      double v = inf ? kInf : tilde(shifted(s, l * opt.t));
      if (!std::isfinite(v)) inf = true;
      seq.push_back(v);
    }
    if (inf) ++out.infinite_samples;
    out.s.push_back(std::move(s));
    out.sequences.push_back(std::move(seq));
  }

  auto z_measure = [&](double M, double eta) {
    long long hits = 0;
    for (const auto& seq : out.sequences) {
      int above = 0;
      for (double v : seq) above += v > M ? 1 : 0;
      if (above > eta * opt.N) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(out.sequences.size());
  };
  out.eta_grid = opt.eta_grid;
  std::sort(out.eta_grid.begin(), out.eta_grid.end());
  for (double eta : out.eta_grid) out.z_measure.push_back(z_measure(out.M, eta));
  for (double f : opt.M_factors) {
    out.M_grid.push_back(f * out.M);
  }
  std::sort(out.M_grid.begin(), out.M_grid.end());
  for (double M : out.M_grid) {
    std::vector<double> row;
    for (double eta : out.eta_grid) row.push_back(z_measure(M, eta));
    out.z_measure_by_M.push_back(std::move(row));
  }
  out.run_counts.assign(static_cast<std::size_t>(opt.N), 0);
  for (const auto& seq : out.sequences) {
    for (int m = 1; m < opt.N; ++m) {
      if (!(seq[static_cast<std::size_t>(m - 1)] < out.M)) continue;
      int L = 0;
      while (m + L < opt.N && seq[static_cast<std::size_t>(m + L)] >= out.M) ++L;
      for (int l = 1; l <= L; ++l) ++out.run_counts[static_cast<std::size_t>(l - 1)];
    }
  }
  std::vector<double> ex, ey;
  for (std::size_t i = 0; i < out.eta_grid.size(); ++i) {
    if (out.z_measure[i] > 0) {
      ex.push_back(out.eta_grid[i]);
      ey.push_back(std::log(out.z_measure[i]));
    }
  }
  out.log_z_slope = ex.size() >= 2 ? stats::ls_slope(ex, ey) : 0.0;
  out.predicted_exponent = -(opt.params.theta - opt.params.delta) * opt.N * opt.t;
  return out;
}

// ---------------------------------------------------------------------------
// D^+ measure

namespace {

struct ShearTerm {
  std::size_t from;  ///< position of e_J, 0 not in J
  std::size_t to;    ///< position of e_{J - j + 0}
  int j;             ///< 1..d
  int sign;
};

/// Terms of u(s) e_J = e_J + sum_j sign s_j e_{(J - j) + 0}, for the shear
/// acting on the first d+1 coordinates of R^N.
std::vector<ShearTerm> shear_terms(int N, int k, int d) {
  const auto& b = algebra::basis(N, k);
  std::vector<ShearTerm> out;
  for (std::size_t p = 0; p < b.size(); ++p) {
    Mask J = b.mask(p);
    if (J & 1u) continue;
    for (int j = 1; j <= d; ++j) {
      if (!(J & (1u << j))) continue;
      int below = std::popcount(J & ((1u << j) - 1u));
      Mask target = (J & ~(1u << j)) | 1u;
      out.push_back({p, static_cast<std::size_t>(b.position(target)), j, below % 2 == 0 ? 1 : -1});
    }
  }
  return out;
}

void apply_shear(const std::vector<ShearTerm>& terms, const std::vector<double>& s, const std::vector<double>& in,
                 std::vector<double>& out) {
  out = in;
  for (const auto& t : terms) out[t.to] += t.sign * s[static_cast<std::size_t>(t.j - 1)] * in[t.from];
}

double plus_norm_after_shear(const ExtVector<double>& v, const std::vector<ShearTerm>& terms,
                             const std::vector<double>& s, std::vector<double>& scratch) {
  apply_shear(terms, s, v.coeffs(), scratch);
  double m = 0;
  for (std::size_t p = 0; p < v.size(); ++p) {
    if (v.mask(p) & 1u) m = std::max(m, std::fabs(scratch[p]));
  }
  return m;
}

ExtVector<double> unit_sup(const ExtVector<double>& v) {
  double m = v.sup_norm();
  if (!(m > 0)) throw DomainError("dplus_measure: v must be nonzero");
  ExtVector<double> u = v;
  for (auto& c : u.coeffs()) c /= m;
  return u;
}

}  // namespace

DplusResult dplus_measure(const ExtVector<double>& v, double r, long long samples, std::uint64_t seed) {
  DplusSweep sw = dplus_sweep(v, {r}, samples, seed);
  return sw.results.front();
}

DplusSweep dplus_sweep(const ExtVector<double>& v_in, const std::vector<double>& r_grid, long long samples,
                       std::uint64_t seed) {
  if (samples < 1) throw DomainError("dplus_measure: samples must be >= 1");
  if (r_grid.empty()) throw DomainError("dplus_measure: empty r grid");
  for (double r : r_grid) {
    if (!(r > 0)) throw DomainError("dplus_measure: r must be > 0");
  }
  const int N = v_in.dim();
  const int d = N - 1;
  const int i = v_in.grade();
  if (d < 1 || i < 1 || i > N) throw DomainError("dplus_measure: v must lie in Lambda^i R^{d+1}");
  ExtVector<double> v = unit_sup(v_in);
  const auto terms = shear_terms(N, i, d);
  std::vector<long long> hits(r_grid.size(), 0);
  auto rng = stats::make_rng(seed, 0);
  std::vector<double> s(static_cast<std::size_t>(d)), scratch;
  for (long long j = 0; j < samples; ++j) {
    for (auto& x : s) x = stats::centered_uniform(rng);
    double m = plus_norm_after_shear(v, terms, s, scratch);
    for (std::size_t q = 0; q < r_grid.size(); ++q) hits[q] += m <= r_grid[q] ? 1 : 0;
  }
  DplusSweep out;
  out.r = r_grid;
  std::vector<double> lx, ly;
  for (std::size_t q = 0; q < r_grid.size(); ++q) {
    DplusResult res;
    res.hits = hits[q];
    res.samples = samples;
    res.estimate = static_cast<double>(hits[q]) / static_cast<double>(samples);
    auto [lo, hi] = stats::wilson_interval(hits[q], samples);
    res.ci_lo = lo;
    res.ci_hi = hi;
    out.results.push_back(res);
    if (res.estimate > 0) {
      lx.push_back(std::log(r_grid[q]));
      ly.push_back(std::log(res.estimate));
      out.fitted_C = std::max(out.fitted_C, res.estimate / std::pow(r_grid[q], i));
    }
  }
  out.slope = lx.size() >= 2 ? stats::ls_slope(lx, ly) : std::numeric_limits<double>::quiet_NaN();
  return out;
}

ExtVector<double> random_dplus_vector(int d, int i, std::mt19937_64& rng) {
  if (i < 1 || i > d) throw DomainError("random_dplus_vector: need 1 <= i <= d");
  const int N = d + 1;
  std::normal_distribution<double> gauss(0.0, 1.0);
  ExtVector<double> v(N, i);
  for (std::size_t p = 0; p < v.size(); ++p) {
    if (!(v.mask(p) & 1u)) v[p] = gauss(rng);
  }
  std::vector<double> s0(static_cast<std::size_t>(d));
  for (auto& x : s0) x = 0.8 * stats::centered_uniform(rng);
  std::vector<double> image;
  apply_shear(shear_terms(N, i, d), s0, v.coeffs(), image);
  for (std::size_t p = 0; p < v.size(); ++p) {
    if (v.mask(p) & 1u) v[p] = -image[p];
  }
  return unit_sup(v);
}

// ---------------------------------------------------------------------------
// Contraction checks

namespace {

/// Collects per-sample log values on a common t grid.
class SlopeCollector {
 public:
  explicit SlopeCollector(std::vector<double> t) : t_(std::move(t)), logs_(t_.size()) {}

  /// Returns false (and counts a discard) when some value is not finite.
  bool add(const std::vector<double>& log_values) {
    for (double v : log_values) {
      if (!std::isfinite(v)) {
        ++discarded_;
        return false;
      }
    }
    slopes_.push_back(stats::ls_slope(t_, log_values));
    for (std::size_t j = 0; j < t_.size(); ++j) logs_[j].push_back(log_values[j]);
    return true;
  }

  ContractionCheck finish(const std::string& name, double target, double tolerance, double log_scale = 0.0) const {
    ContractionCheck c;
    c.name = name;
    c.target_slope = target;
    c.samples = static_cast<long long>(slopes_.size());
    c.discarded = discarded_;
    c.t = t_;
    if (slopes_.empty()) {
      c.median_slope = std::numeric_limits<double>::quiet_NaN();
      c.pooled_slope = std::numeric_limits<double>::quiet_NaN();
      c.rel_error = kInf;
      return c;
    }
    c.median_slope = stats::median(slopes_);
    for (std::size_t j = 0; j < t_.size(); ++j) {
      double mx = *std::max_element(logs_[j].begin(), logs_[j].end());
      long double acc = 0;
      for (double v : logs_[j]) acc += std::exp(static_cast<long double>(v - mx));
      c.log_mean.push_back(mx + static_cast<double>(std::log(acc / static_cast<long double>(logs_[j].size()))) + log_scale);
    }
    c.pooled_slope = stats::ls_slope(t_, c.log_mean);
    double logC = -kInf;
    for (std::size_t j = 0; j < t_.size(); ++j) logC = std::max(logC, c.log_mean[j] - target * t_[j]);
    c.fitted_C = std::exp(logC);
    c.rel_error = std::fabs(c.median_slope - target) / std::fabs(target);
    c.pass = c.rel_error <= tolerance;
    return c;
  }

 private:
  std::vector<double> t_;
  std::vector<std::vector<double>> logs_;
  std::vector<double> slopes_;
  long long discarded_ = 0;
};

double sup_log_norm(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m > 0 ? std::log(m) : -kInf;
}

/// Per-mask c_t rate on Lambda^k R^N: d/(d+1) per index 0, -1/(d+1) per index in 1..d.
std::vector<double> c_rates(int N, int k, int d) {
  const auto& b = algebra::basis(N, k);
  std::vector<double> r(b.size());
  for (std::size_t p = 0; p < b.size(); ++p) {
    Mask J = b.mask(p);
    double rate = 0;
    for (int j = 0; j <= d; ++j) {
      if (!(J & (1u << j))) continue;
      rate += j == 0 ? static_cast<double>(d) / (d + 1) : -1.0 / (d + 1);
    }
    r[p] = rate;
  }
  return r;
}

LatticePoint word_point(const LatticePoint& base, const Dims& dims, const std::vector<double>& s,
                        std::initializer_list<std::pair<FlowKind, double>> flows_before,
                        std::initializer_list<std::pair<FlowKind, double>> flows_after) {
  FlowWord w(dims);
  for (const auto& [k, t] : flows_before) w.flow(k, t);
  std::vector<Number> sn;
  for (double v : s) sn.push_back(Number::real(static_cast<Real>(v)));
  w.unipotent_s(sn);
  for (const auto& [k, t] : flows_after) w.flow(k, t);
  return base.acted(w);
}

std::vector<double> draw_centered(std::mt19937_64& rng, int d) {
  std::vector<double> s(static_cast<std::size_t>(d));
  for (auto& v : s) v = stats::centered_uniform(rng);
  return s;
}

}  // namespace

dioph::AffineParam default_affine_param(const Dims& dims, unsigned precision_bits) {
  std::vector<std::string> entries;
  int p = 2;
  auto is_prime = [](int q) {
    for (int f = 2; f * f <= q; ++f) {
      if (q % f == 0) return false;
    }
    return true;
  };
  const int count = (dims.d + 1) * (dims.n - dims.d);
  while (static_cast<int>(entries.size()) < count) {
    if (is_prime(p)) {
      int fl = static_cast<int>(std::floor(std::sqrt(static_cast<double>(p))));
      entries.push_back("sqrt(" + std::to_string(p) + ")-" + std::to_string(fl));
    }
    ++p;
  }
  return dioph::AffineParam::from_strings(dims, entries, precision_bits);
}

ContractionReport contraction_report(const Dims& dims, const height::HeightParams& params,
                                     const ContractionSpec& spec, std::uint64_t seed) {
  params.validate(dims);
  EnumOptions values_only = spec.enumeration;
  values_only.with_generators = false;
  if (spec.samples < 1) throw DomainError("contraction_report: samples must be >= 1");
  if (spec.t_grid.size() < 2) throw DomainError("contraction_report: need at least two t values");
  const int d = dims.d;
  const int n = dims.n;
  const auto& T = spec.t_grid;
  ContractionReport report;

  // Expansion of vectors in Lambda^i R^{d+1} under c_t u(s).
  {
    const int i = spec.vector_grade > 0 ? spec.vector_grade : d;
    const double tp = spec.theta_prime > 0 ? spec.theta_prime : static_cast<double>(d) / (d + 1) - 0.01;
    if (i > d) throw DomainError("contraction_report: vector grade must be <= d");
    if (!(tp > 0 && tp < i)) throw DomainError("contraction_report: need 0 < theta' < i");
    const int N = d + 1;
    const auto terms = shear_terms(N, i, d);
    const auto rates = c_rates(N, i, d);
    SlopeCollector col(T);
    std::vector<double> shifted, scaled;
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (long long j = 0; j < spec.samples; ++j) {
      auto rng = stats::make_rng(seed, (1ULL << 40) + static_cast<std::uint64_t>(j));
      std::vector<double> v(algebra::basis(N, i).size());
      for (auto& x : v) x = gauss(rng);
      std::vector<double> s = draw_centered(rng, d);
      const double base = sup_log_norm(v);
      apply_shear(terms, s, v, shifted);
      std::vector<double> logs;
      for (double t : T) {
        scaled = shifted;
        for (std::size_t p = 0; p < scaled.size(); ++p) scaled[p] *= std::exp(rates[p] * t);
        logs.push_back(-tp * (sup_log_norm(scaled) - base));
      }
      col.add(logs);
    }
    report.checks.push_back(col.finish("vector-expansion", -tp * (d + 1 - i) / (d + 1), spec.tolerance));
  }

  // phi_eps^theta along c_t u(s) on Lambda^k R^{n+1}.
  {
    const int N = n + 1;
    SlopeCollector col(T);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> shifted;
    for (long long j = 0; j < spec.samples; ++j) {
      auto rng = stats::make_rng(seed, (2ULL << 40) + static_cast<std::uint64_t>(j));
      const int k = 1 + static_cast<int>(j % n);
      const double thresh = std::pow(params.epsilon, delta_k(dims, k));
      ExtVector<double> v(N, k);
      for (std::size_t p = 0; p < v.size(); ++p) {
        int pc = algebra::perp_count(v.mask(p), dims);
        v[p] = (pc == 0 || pc == d + 1) ? thresh * stats::centered_uniform(rng) : gauss(rng);
      }
      std::vector<double> s = draw_centered(rng, d);
      const auto terms = shear_terms(N, k, d);
      const auto rates = c_rates(N, k, d);
      ExtendedReal phi0 = height::phi_eps(v, dims, params.epsilon);
      if (phi0.is_zero() || phi0.is_infinite()) {
        col.add({kInf});
        continue;
      }
      apply_shear(terms, s, v.coeffs(), shifted);
      std::vector<double> logs;
      ExtVector<double> w(N, k);
      for (double t : T) {
        for (std::size_t p = 0; p < w.size(); ++p) w[p] = shifted[p] * std::exp(rates[p] * t);
        ExtendedReal phi = height::phi_eps(w, dims, params.epsilon);
        logs.push_back(phi.is_zero() ? -kInf : (phi.is_infinite() ? kInf : params.theta * (phi.log() - phi0.log())));
      }
      col.add(logs);
    }
    report.checks.push_back(col.finish("phi-contraction", -params.theta, spec.tolerance));
  }

  const dioph::AffineParam A = spec.A.empty() ? default_affine_param(dims) : dioph::AffineParam(dims, spec.A);
  const auto An = A.numbers();
  const LatticePoint yA = LatticePoint::from_A(An, dims);

  // alpha along c_t u(s) from cusp points u(s1) c_tau y_A.
  {
    SlopeCollector col(T);
    for (long long j = 0; j < spec.samples; ++j) {
      auto rng = stats::make_rng(seed, (3ULL << 40) + static_cast<std::uint64_t>(j));
      std::vector<double> s1 = draw_centered(rng, d);
      const double tau = spec.cusp_depth_lo + (spec.cusp_depth_hi - spec.cusp_depth_lo) * (stats::centered_uniform(rng) + 0.5);
      std::vector<double> s = draw_centered(rng, d);
      FlowWord pre(dims);
      std::vector<Number> s1n;
      for (double v : s1) s1n.push_back(Number::real(static_cast<Real>(v)));
      pre.unipotent_s(s1n).flow(FlowKind::C, tau);
      LatticePoint y = yA.acted(pre);
      height::AlphaResult a0 = height::alpha(y, params, values_only);
      std::vector<double> logs;
      for (double t : T) {
        height::AlphaResult a = height::alpha(word_point(y, dims, s, {{FlowKind::C, t}}, {}), params, values_only);
        logs.push_back(a.value.log() - a0.value.log());
      }
      col.add(logs);
    }
    report.checks.push_back(col.finish("alpha-contraction", -params.theta, spec.tolerance));
  }

  // alpha_tilde along g_t u(w), by joint sampling of (w, tau) with tau from
  // the exponential weight truncated at T_max. The base points drift into
  // the cusp along b_t, and delta is set from their measured growth rate.
  {
    std::vector<ParsedScalar> shrunk = A.entries;
    for (int c = 0; c < A.cols(); ++c) {
      auto& e = shrunk[static_cast<std::size_t>(c)];
      e = parse_scalar("(" + e.source + ")*" + format_double(spec.fix_scale), static_cast<unsigned>(e.value.precision() * 3.33) + 8);
    }
    const dioph::AffineParam A2(dims, shrunk);
    const LatticePoint yA2 = LatticePoint::from_A(A2.numbers(), dims);
    std::vector<LatticePoint> base;
    std::vector<double> growth;
    for (int m = 0; m < spec.drift_points; ++m) {
      auto rng = stats::make_rng(seed, (4ULL << 40) + static_cast<std::uint64_t>(m));
      std::vector<double> s1 = draw_centered(rng, d);
      const double tau = spec.cusp_depth_lo + (spec.cusp_depth_hi - spec.cusp_depth_lo) * (stats::centered_uniform(rng) + 0.5);
      std::vector<Number> s1n;
      for (double v : s1) s1n.push_back(Number::real(static_cast<Real>(v)));
      FlowWord pre(dims);
      pre.unipotent_s(s1n).flow(FlowKind::C, tau).flow(FlowKind::B, spec.shift_depth);
      base.push_back(yA2.acted(pre));
      height::RhoResult rr = height::rho_estimate(base.back(), params, 20.0, 16, values_only);
      growth.push_back(rr.infinite ? kInf : rr.slope_fit);
    }
    double rho_hat = std::accumulate(growth.begin(), growth.end(), 0.0) / static_cast<double>(growth.size());
    height::HeightParams p2 = params;
    p2.delta = std::clamp(rho_hat + 0.02, 0.02, params.theta - 0.01);
    std::vector<double> tilde0;
    for (const auto& y : base) {
      height::AlphaTildeResult r = height::alpha_tilde(y, p2, values_only);
      tilde0.push_back(r.value.is_infinite() ? kInf : r.value.value());
    }
    double mean_tilde0 = std::accumulate(tilde0.begin(), tilde0.end(), 0.0) / static_cast<double>(tilde0.size());
    const double mass = (1.0 - std::exp(-p2.delta * p2.T_max)) / p2.delta;
    SlopeCollector col(T);
    for (long long j = 0; j < spec.samples; ++j) {
      auto rng = stats::make_rng(seed, (5ULL << 40) + static_cast<std::uint64_t>(j));
      const auto& y = base[static_cast<std::size_t>(j % spec.drift_points)];
      std::vector<double> w = draw_centered(rng, d);
      const double u = stats::centered_uniform(rng) + 0.5;
      const double tau = -std::log1p(-u * (1.0 - std::exp(-p2.delta * p2.T_max))) / p2.delta;
      std::vector<double> logs;
      for (double t : T) {
        height::AlphaResult a =
            height::alpha(word_point(y, dims, w, {{FlowKind::C, t}}, {{FlowKind::B, t + tau}}), p2, values_only);
        logs.push_back(a.value.log());
      }
      col.add(logs);
    }
    ContractionCheck c = col.finish("alpha-tilde-contraction", -(params.theta - p2.delta), spec.tolerance,
                                    std::log(mass) - std::log(mean_tilde0));
    c.delta = p2.delta;
    report.checks.push_back(c);
  }

  report.all_pass = std::all_of(report.checks.begin(), report.checks.end(), [](const ContractionCheck& c) { return c.pass; });
  return report;
}

}  // namespace affsing::singlab
