#include "affsing/dioph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <mpfr.h>

#include "shell.hpp"

namespace affsing::dioph {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class MpfrVar {
 public:
  explicit MpfrVar(unsigned bits) { mpfr_init2(v_, bits); }
  ~MpfrVar() { mpfr_clear(v_); }
  MpfrVar(const MpfrVar&) = delete;
  MpfrVar& operator=(const MpfrVar&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

double mpfr_log_abs(mpfr_srcptr x) {
  if (mpfr_zero_p(x)) return -kInf;
  long e = 0;
  double m = mpfr_get_d_2exp(&e, x, MPFR_RNDN);
  return std::log(std::fabs(m)) + static_cast<double>(e) * std::log(2.0);
}

}  // namespace

AffineParam::AffineParam(const Dims& dims_, std::vector<ParsedScalar> entries_)
    : dims(dims_), entries(std::move(entries_)) {
  if (static_cast<int>(entries.size()) != rows() * cols()) {
    throw DomainError("AffineParam: expected " + std::to_string(rows() * cols()) + " entries, got " +
                      std::to_string(entries.size()));
  }
}

AffineParam AffineParam::from_strings(const Dims& dims, const std::vector<std::string>& entries,
                                      unsigned precision_bits) {
  std::vector<ParsedScalar> parsed;
  for (const auto& s : entries) parsed.push_back(parse_scalar(s, precision_bits));
  return AffineParam(dims, std::move(parsed));
}

AffineParam AffineParam::from_rationals(const Dims& dims, const std::vector<Rational>& entries) {
  std::vector<ParsedScalar> parsed;
  for (const auto& q : entries) parsed.push_back(parse_scalar(q.get_str(), 256));
  return AffineParam(dims, std::move(parsed));
}

bool AffineParam::is_exact() const {
  return std::all_of(entries.begin(), entries.end(), [](const ParsedScalar& s) { return s.exact.has_value(); });
}

std::vector<Number> AffineParam::numbers() const {
  std::vector<Number> out;
  for (const auto& e : entries) out.push_back(e.number());
  return out;
}

OmegaResult omega_estimate(const AffineParam& A, long long Q_max, const OmegaOptions& opt) {
  if (Q_max < 2) throw DomainError("omega_estimate: Q_max must be >= 2");
  const int R = A.rows();
  const int C = A.cols();
  const unsigned bits = opt.precision_bits;
  OmegaResult out;
  out.Q_max = Q_max;

  // Exact rows: integer numerators over a common row denominator.
  std::vector<bool> row_exact(static_cast<std::size_t>(R), true);
  std::vector<Integer> row_den(static_cast<std::size_t>(R), 1);
  std::vector<std::vector<Integer>> row_num(static_cast<std::size_t>(R), std::vector<Integer>(static_cast<std::size_t>(C)));
  for (int r = 0; r < R; ++r) {
    for (int c = 0; c < C; ++c) {
      if (!A.at(r, c).exact) row_exact[static_cast<std::size_t>(r)] = false;
    }
    if (!row_exact[static_cast<std::size_t>(r)]) continue;
    Integer L = 1;
    for (int c = 0; c < C; ++c) L = lcm(L, A.at(r, c).exact->get_den());
    row_den[static_cast<std::size_t>(r)] = L;
    for (int c = 0; c < C; ++c) {
      Rational v = *A.at(r, c).exact * L;
      row_num[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = v.get_num();
    }
  }
  std::vector<std::unique_ptr<MpfrVar>> entries;
  for (const auto& e : A.entries) {
    auto v = std::make_unique<MpfrVar>(bits);
    mpfr_set(v->get(), e.value.backend().data(), MPFR_RNDN);
    entries.push_back(std::move(v));
  }
  MpfrVar acc(bits), term(bits), rounded(bits), diff(bits);

  const double lo_height = std::sqrt(static_cast<double>(Q_max));
  double best_log = kInf;       // running minimum of log err
  double best_exponent = -kInf; // over the upper height range
  std::uint64_t examined = 0;
  bool done = false;
  Integer acc_z, rem, qz;

  auto visit = [&](const IntVector& q, long long H) {
    if (done) return;
    if (++examined > opt.budget) throw BudgetExceeded("omega_estimate: more than " + std::to_string(opt.budget) + " q examined");
    IntVector p(static_cast<std::size_t>(R));
    double log_err = -kInf;
    bool max_inexact = false;
    bool inexact_zero = false;
    for (int r = 0; r < R; ++r) {
      double lr;
      bool exact_row = row_exact[static_cast<std::size_t>(r)];
      if (exact_row) {
        acc_z = 0;
        for (int c = 0; c < C; ++c) {
          qz = static_cast<signed long>(q[static_cast<std::size_t>(c)]);
          acc_z += row_num[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] * qz;
        }
        const Integer& L = row_den[static_cast<std::size_t>(r)];
        mpz_fdiv_r(rem.get_mpz_t(), acc_z.get_mpz_t(), L.get_mpz_t());
        Integer pr;
        mpz_fdiv_q(pr.get_mpz_t(), acc_z.get_mpz_t(), L.get_mpz_t());
        Integer dist = rem;
        if (2 * rem > L) {
          dist = L - rem;
          pr += 1;
        }
        p[static_cast<std::size_t>(r)] = pr.get_si();
        lr = sgn(dist) == 0 ? -kInf : static_cast<double>(log_abs(Rational(dist, L)));
      } else {
        mpfr_set_zero(acc.get(), 1);
        for (int c = 0; c < C; ++c) {
          mpfr_mul_si(term.get(), entries[static_cast<std::size_t>(r * C + c)]->get(), q[static_cast<std::size_t>(c)], MPFR_RNDN);
          mpfr_add(acc.get(), acc.get(), term.get(), MPFR_RNDN);
        }
        mpfr_rint(rounded.get(), acc.get(), MPFR_RNDN);
        mpfr_sub(diff.get(), acc.get(), rounded.get(), MPFR_RNDN);
        // Nearest integer ambiguous: |frac| within 2 ulp of 1/2.
        double tie_gap = std::fabs(std::fabs(mpfr_get_d(diff.get(), MPFR_RNDN)) - 0.5);
        double ulp = std::ldexp(std::max(1.0, std::fabs(mpfr_get_d(acc.get(), MPFR_RNDN))), 1 - static_cast<int>(bits));
        if (tie_gap <= 2 * ulp) throw PrecisionError("omega_estimate: rounding of A q is ambiguous at the working precision");
        p[static_cast<std::size_t>(r)] = mpfr_get_si(rounded.get(), MPFR_RNDN);
        lr = mpfr_log_abs(diff.get());
        if (lr == -kInf) inexact_zero = true;
        if (lr > log_err) max_inexact = true;
      }
      if (lr > log_err) {
        log_err = lr;
        max_inexact = !exact_row;
      }
    }
    if (log_err == -kInf) {
      if (inexact_zero && !A.is_exact()) {
        throw PrecisionError("omega_estimate: A q is integral to working precision; raise --precision or give exact entries");
      }
      out.exact_relation = std::make_pair(q, p);
      done = true;
      return;
    }
    double height = static_cast<double>(H);
    if (max_inexact && std::isfinite(best_log)) {
      double gap = std::fabs(std::exp(log_err) - std::exp(best_log));
      double ulp = std::ldexp(std::max(1.0, height), 1 - static_cast<int>(bits)) * 4;
      if (gap <= 2 * ulp && log_err != best_log) {
        throw PrecisionError("omega_estimate: two approximation errors tie within 2 ulp");
      }
    }
    double exponent = H > 1 ? -log_err / std::log(height) : std::numeric_limits<double>::quiet_NaN();
    if (log_err < best_log) {
      best_log = log_err;
      out.records.push_back(BestApproxRecord{q, p, std::exp(log_err), log_err, height, exponent});
    }
    if (height >= lo_height && H > 1) best_exponent = std::max(best_exponent, exponent);
  };

  if (C == 1) {
    IntVector q(1);
    for (long long H = 1; H <= Q_max && !done; ++H) {
      q[0] = H;
      visit(q, H);
    }
  } else {
    for (long long H = 1; H <= Q_max && !done; ++H) {
      detail::for_each_in_shell(C, H, [&](const IntVector& q) { visit(q, H); });
    }
  }
  if (out.exact_relation) {
    out.omega = ExtendedReal::infinity();
  } else {
    out.omega = ExtendedReal::from_value(std::max(0.0, best_exponent));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (const auto& rec : out.records) {
      if (rec.height <= 1) continue;
      double x = std::log(rec.height);
      sx += x;
      sy -= rec.log_err;
      sxx += x * x;
      sxy -= x * rec.log_err;
      ++cnt;
    }
    double den = cnt * sxx - sx * sx;
    out.record_slope = cnt >= 2 && den > 0 ? (cnt * sxy - sx * sy) / den : 0.0;
  }
  return out;
}

namespace {

/// Cholesky factor of G = I + A A^T in extended precision.
struct RowSpace {
  int R = 0;
  int C = 0;
  std::vector<Real> a;      // R x C
  std::vector<Real> chol;   // R x R lower
};

Real sqrt_real(Real x) {
  // Newton refinement from a long double start.
  if (x <= 0) return 0;
  Real y = std::sqrt(static_cast<long double>(x));
  y = 0.5Q * (y + x / y);
  return y;
}

RowSpace make_row_space(const AffineParam& A) {
  RowSpace rs;
  rs.R = A.rows();
  rs.C = A.cols();
  for (const auto& e : A.entries) rs.a.push_back(to_real(e.value));
  std::vector<Real> G(static_cast<std::size_t>(rs.R * rs.R), 0);
  for (int i = 0; i < rs.R; ++i) {
    for (int j = 0; j < rs.R; ++j) {
      Real s = i == j ? 1 : 0;
      for (int c = 0; c < rs.C; ++c) s += rs.a[static_cast<std::size_t>(i * rs.C + c)] * rs.a[static_cast<std::size_t>(j * rs.C + c)];
      G[static_cast<std::size_t>(i * rs.R + j)] = s;
    }
  }
  rs.chol.assign(static_cast<std::size_t>(rs.R * rs.R), 0);
  for (int i = 0; i < rs.R; ++i) {
    for (int j = 0; j <= i; ++j) {
      Real s = G[static_cast<std::size_t>(i * rs.R + j)];
      for (int l = 0; l < j; ++l) s -= rs.chol[static_cast<std::size_t>(i * rs.R + l)] * rs.chol[static_cast<std::size_t>(j * rs.R + l)];
      if (i == j) {
        rs.chol[static_cast<std::size_t>(i * rs.R + i)] = sqrt_real(s);
      } else {
        rs.chol[static_cast<std::size_t>(i * rs.R + j)] = s / rs.chol[static_cast<std::size_t>(j * rs.R + j)];
      }
    }
  }
  return rs;
}

/// u^T G^{-1} u via forward substitution.
Real quad_form_inv(const RowSpace& rs, const std::vector<Real>& u) {
  std::vector<Real> z(u.size());
  Real s2 = 0;
  for (int i = 0; i < rs.R; ++i) {
    Real s = u[static_cast<std::size_t>(i)];
    for (int l = 0; l < i; ++l) s -= rs.chol[static_cast<std::size_t>(i * rs.R + l)] * z[static_cast<std::size_t>(l)];
    z[static_cast<std::size_t>(i)] = s / rs.chol[static_cast<std::size_t>(i * rs.R + i)];
    s2 += z[static_cast<std::size_t>(i)] * z[static_cast<std::size_t>(i)];
  }
  return s2;
}

}  // namespace

double proj_distance(const AffineParam& A, const IntVector& vQ) {
  const int N = A.dims.ambient();
  if (static_cast<int>(vQ.size()) != N) throw DomainError("proj_distance: v_Q must have n+1 entries");
  RowSpace rs = make_row_space(A);
  std::vector<Real> u(static_cast<std::size_t>(rs.R));
  Real norm2 = 0;
  for (long long x : vQ) norm2 += static_cast<Real>(x) * static_cast<Real>(x);
  if (norm2 == 0) throw DomainError("proj_distance: v_Q must be nonzero");
  for (int i = 0; i < rs.R; ++i) {
    Real s = static_cast<Real>(vQ[static_cast<std::size_t>(i)]);
    for (int c = 0; c < rs.C; ++c) s += rs.a[static_cast<std::size_t>(i * rs.C + c)] * static_cast<Real>(vQ[static_cast<std::size_t>(rs.R + c)]);
    u[static_cast<std::size_t>(i)] = s;
  }
  Real ratio = quad_form_inv(rs, u) / norm2;
  double d = std::sqrt(static_cast<double>(ratio));
  return std::min(1.0, d);
}

double matched_height(const AffineParam& A, double Q) {
  if (A.cols() != 1) throw DomainError("matched_height: defined for n - d = 1");
  double s = 1;
  for (const auto& e : A.entries) {
    double v = e.value.convert_to<double>();
    s += v * v;
  }
  return Q * std::sqrt(s);
}

GeometricResult omega_geometric(const AffineParam& A, double H_max, const OmegaOptions& opt) {
  if (!(H_max >= 2)) throw DomainError("omega_geometric: H_max must be >= 2");
  const int R = A.rows();
  const int C = A.cols();
  RowSpace rs = make_row_space(A);
  GeometricResult out;
  out.H_max = H_max;
  const double lo = opt.lower_height > 0 ? opt.lower_height : std::sqrt(H_max);
  const long long qlim = static_cast<long long>(std::floor(H_max));
  struct Cand {
    double H;
    double dist;
    IntVector v;
  };
  std::vector<Cand> cands;
  double best_exp = -kInf;
  std::uint64_t examined = 0;
  const bool exact = A.is_exact();

  auto visit = [&](const IntVector& q) {
    if (++examined > opt.budget) throw BudgetExceeded("omega_geometric: budget exceeded");
    std::vector<Real> base(static_cast<std::size_t>(R));
    IntVector p0(static_cast<std::size_t>(R));
    for (int i = 0; i < R; ++i) {
      Real s = 0;
      for (int c = 0; c < C; ++c) s += rs.a[static_cast<std::size_t>(i * C + c)] * static_cast<Real>(q[static_cast<std::size_t>(c)]);
      base[static_cast<std::size_t>(i)] = s;
      p0[static_cast<std::size_t>(i)] = -std::llround(static_cast<long double>(s));
    }
    Real qn2 = 0;
    for (long long x : q) qn2 += static_cast<Real>(x) * static_cast<Real>(x);
    int total = 1;
    for (int i = 0; i < R; ++i) total *= 3;
    for (int code = 0; code < total; ++code) {
      IntVector v(static_cast<std::size_t>(R + C));
      int cc = code;
      std::vector<Real> u(static_cast<std::size_t>(R));
      Real n2 = qn2;
      long long g = 0;
      for (int i = 0; i < R; ++i) {
        long long p = p0[static_cast<std::size_t>(i)] + (cc % 3) - 1;
        cc /= 3;
        v[static_cast<std::size_t>(i)] = p;
        u[static_cast<std::size_t>(i)] = base[static_cast<std::size_t>(i)] + static_cast<Real>(p);
        n2 += static_cast<Real>(p) * static_cast<Real>(p);
        g = std::gcd(g, p < 0 ? -p : p);
      }
      for (int c = 0; c < C; ++c) {
        v[static_cast<std::size_t>(R + c)] = q[static_cast<std::size_t>(c)];
        g = std::gcd(g, q[static_cast<std::size_t>(c)] < 0 ? -q[static_cast<std::size_t>(c)] : q[static_cast<std::size_t>(c)]);
      }
      if (g != 1) continue;
      double H = std::sqrt(static_cast<double>(n2));
      if (H > H_max) continue;
      Real qf = quad_form_inv(rs, u);
      bool zero = qf == 0;
      if (!zero && exact && qf < 1e-40Q) {
        zero = true;
        for (int i = 0; i < R && zero; ++i) {
          Rational s = Rational(static_cast<signed long>(v[static_cast<std::size_t>(i)]));
          for (int c = 0; c < C; ++c) s += *A.at(i, c).exact * Rational(static_cast<signed long>(q[static_cast<std::size_t>(c)]));
          zero = sgn(s) == 0;
        }
      }
      if (zero) {
        out.infinite = true;
        cands.push_back(Cand{H, 0.0, v});
        continue;
      }
      double dist = std::min(1.0, std::sqrt(static_cast<double>(qf / n2)));
      cands.push_back(Cand{H, dist, v});
      if (H >= lo && H > 1) best_exp = std::max(best_exp, -std::log(dist) / std::log(H) - 1);
    }
  };

  if (C == 1) {
    IntVector q(1);
    for (long long H = 1; H <= qlim; ++H) {
      q[0] = H;
      visit(q);
    }
  } else {
    for (long long H = 1; H <= qlim; ++H) detail::for_each_in_shell(C, H, visit);
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (a.H != b.H) return a.H < b.H;
    return a.v < b.v;
  });
  double run = kInf;
  for (const auto& c : cands) {
    if (c.dist < run) {
      run = c.dist;
      double e = c.dist == 0 ? kInf : (c.H > 1 ? -std::log(c.dist) / std::log(c.H) - 1 : std::numeric_limits<double>::quiet_NaN());
      out.records.push_back(HyperplaneRecord{c.v, c.H, c.dist, e});
    }
  }
  out.omega = out.infinite ? kInf : std::max(0.0, best_exp);
  return out;
}

// ---------------------------------------------------------------------------
// Closed-form relations

namespace {

void check_omega(double omega, const Dims& dims) {
  if (std::isnan(omega) || omega < dims.dirichlet_exponent() - 1e-12) {
    throw DomainError("omega must be at least the Dirichlet exponent (n-d)/(d+1)");
  }
}

}  // namespace

double dim_bound(const ExtendedReal& omega_er, const Dims& dims) {
  if (omega_er.is_infinite()) return dims.d;
  const double omega = omega_er.value();
  check_omega(omega, dims);
  const double n = dims.n, d = dims.d;
  const double D = dims.dirichlet_exponent();
  const double base = d * d / (d + 1);
  if (omega >= n) return d;
  if (omega >= n - 1) return base + (omega - D) / (n + 1);
  return base + n * d * (omega - D) / ((1 + (d + 1) * omega - (n - d)) * (n + 1));
}

Rational dim_bound_exact(const Rational& omega, const Dims& dims) {
  const Rational D = dims.dirichlet_exponent_exact();
  if (omega < D) throw DomainError("omega must be at least the Dirichlet exponent (n-d)/(d+1)");
  const int n = dims.n, d = dims.d;
  Rational base(d * d, d + 1);
  base.canonicalize();
  Rational out;
  if (omega >= n) {
    out = d;
  } else if (omega >= n - 1) {
    out = base + (omega - D) / (n + 1);
  } else {
    out = base + Rational(n * d) * (omega - D) / ((1 + (d + 1) * omega - (n - d)) * (n + 1));
  }
  out.canonicalize();
  return out;
}

double rho_bound(double omega, double theta, const Dims& dims) {
  check_omega(omega, dims);
  const double n = dims.n, d = dims.d;
  if (!(omega < n)) throw DomainError("rho_bound: requires omega < n");
  if (!(theta > 0)) throw DomainError("rho_bound: theta must be > 0");
  const double D = dims.dirichlet_exponent();
  if (omega < n - 1) return theta * n * (d + 1) * (omega - D) / ((1 + (d + 1) * omega - (n - d)) * (n + 1));
  return theta * (omega - D) * (d + 1) / (d * (n + 1));
}

OmegaLowerCases omega_lower_cases(double rho0, double theta, const Dims& dims) {
  if (!(theta > 0)) throw DomainError("omega_lower_from_rho: theta must be > 0");
  if (!(rho0 >= 0 && rho0 < theta)) throw DomainError("omega_lower_from_rho: rho0 must lie in [0, theta)");
  const double n = dims.n, d = dims.d;
  const double D = dims.dirichlet_exponent();
  const double r = rho0 / theta;
  OmegaLowerCases out;
  double den11 = (n - d) - (n + 1) * r;
  if (den11 > 0) out.case11 = D + r * (n + 1) / den11;
  out.case12 = D + d * r * (n + 1) / (d + 1);
  double den2 = n - (n + 1) * r;
  if (den2 > 0) out.case2 = D + r * (n + 1) / ((d + 1) * den2);
  out.minimum = out.case12;
  if (out.case11) out.minimum = std::min(out.minimum, *out.case11);
  if (out.case2) out.minimum = std::min(out.minimum, *out.case2);
  return out;
}

double omega_lower_from_rho(double rho0, double theta, const Dims& dims) {
  return omega_lower_cases(rho0, theta, dims).minimum;
}

double crossover_rho(double theta, const Dims& dims) {
  const double n = dims.n, d = dims.d;
  return (d * n - 1) * theta / (d * (n + 1));
}

}  // namespace affsing::dioph
