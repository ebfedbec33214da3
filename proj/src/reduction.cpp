#include "reduction.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace affsing::lattice::detail {

namespace {

constexpr long double kLllDelta = 0.99L;
constexpr double kLogTolerance = 1e-12;
constexpr double kStageSpread = 16.0;

long long checked(__int128 v) {
  constexpr __int128 lim = static_cast<__int128>(1) << 62;
  if (v > lim || v < -lim) throw PrecisionError("lattice reduction: integer coefficients overflow 64 bits");
  return static_cast<long long>(v);
}

}  // namespace

Enumerator::Enumerator(ScaledBasis basis, std::uint64_t node_budget) : b_(std::move(basis)), budget_(node_budget) {
  if (b_.rows <= 0 || b_.cols <= 0 || b_.cols > b_.rows) throw DomainError("Enumerator: bad basis shape");
  if (static_cast<int>(b_.log_scale.size()) != b_.rows ||
      static_cast<int>(b_.real.size()) != b_.rows * b_.cols) {
    throw DomainError("Enumerator: basis size mismatch");
  }
  const int r = b_.cols;
  gamma_.assign(static_cast<std::size_t>(r * r), 0);
  for (int j = 0; j < r; ++j) gamma_[static_cast<std::size_t>(j * r + j)] = 1;
  reduce();
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < r; ++j) {
    std::vector<long long> c(static_cast<std::size_t>(r));
    for (int l = 0; l < r; ++l) c[static_cast<std::size_t>(l)] = gamma_[static_cast<std::size_t>(l * r + j)];
    double lg = -std::numeric_limits<double>::infinity();
    for (const LogReal& x : evaluate(c)) lg = std::max(lg, x.log_abs);
    best = std::min(best, lg);
  }
  reduced_bound_log_ = best;
}

std::vector<LogReal> Enumerator::evaluate(const std::vector<long long>& c) const {
  const int R = b_.rows;
  const int C = b_.cols;
  std::vector<LogReal> out(static_cast<std::size_t>(R));
  if (b_.exact) {
    const auto& M = *b_.exact;
    for (int i = 0; i < R; ++i) {
      Rational s = 0;
      for (int j = 0; j < C; ++j) {
        long long cj = c[static_cast<std::size_t>(j)];
        if (cj == 0) continue;
        const Rational& m = M[static_cast<std::size_t>(i * C + j)];
        if (sgn(m) == 0) continue;
        s += m * Rational(static_cast<signed long>(cj));
      }
      out[static_cast<std::size_t>(i)] =
          LogReal::from_rational(s).scaled_by_exp(static_cast<double>(b_.log_scale[static_cast<std::size_t>(i)]));
    }
  } else {
    for (int i = 0; i < R; ++i) {
      Real s = 0;
      for (int j = 0; j < C; ++j) {
        long long cj = c[static_cast<std::size_t>(j)];
        if (cj == 0) continue;
        s += b_.real[static_cast<std::size_t>(i * C + j)] * static_cast<Real>(cj);
      }
      out[static_cast<std::size_t>(i)] =
          LogReal::from_real(s).scaled_by_exp(static_cast<double>(b_.log_scale[static_cast<std::size_t>(i)]));
    }
  }
  return out;
}

void Enumerator::gram_schmidt() {
  const int R = b_.rows;
  const int C = b_.cols;
  mu_.assign(static_cast<std::size_t>(C * C), 0.0L);
  bstar_.assign(static_cast<std::size_t>(C), 0.0L);
  std::vector<long double> star(static_cast<std::size_t>(R * C));
  for (int j = 0; j < C; ++j) {
    for (int i = 0; i < R; ++i) star[static_cast<std::size_t>(i * C + j)] = reduced_[static_cast<std::size_t>(i * C + j)];
    for (int l = 0; l < j; ++l) {
      long double dot = 0;
      for (int i = 0; i < R; ++i) {
        dot += reduced_[static_cast<std::size_t>(i * C + j)] * star[static_cast<std::size_t>(i * C + l)];
      }
      long double m = dot / bstar_[static_cast<std::size_t>(l)];
      mu_[static_cast<std::size_t>(j * C + l)] = m;
      for (int i = 0; i < R; ++i) star[static_cast<std::size_t>(i * C + j)] -= m * star[static_cast<std::size_t>(i * C + l)];
    }
    long double nrm = 0;
    for (int i = 0; i < R; ++i) nrm += star[static_cast<std::size_t>(i * C + j)] * star[static_cast<std::size_t>(i * C + j)];
    if (!(nrm > 0) || !std::isfinite(nrm)) throw PrecisionError("lattice reduction: degenerate or overflowing basis");
    bstar_[static_cast<std::size_t>(j)] = nrm;
    mu_[static_cast<std::size_t>(j * C + j)] = 1;
  }
}

void Enumerator::reduce() {
  // Long double Gram-Schmidt loses everything once the row scales differ by
  // more than ~e^20, so strongly skewed bases are reduced in stages: each
  // stage applies a larger share of the diagonal to a basis already reduced
  // for the previous share.
  const auto [lo, hi] = std::minmax_element(b_.log_scale.begin(), b_.log_scale.end());
  const int stages = std::max(1, static_cast<int>(std::ceil(static_cast<double>(*hi - *lo) / kStageSpread)));
  for (int s = 1; s <= stages; ++s) reduce_at(static_cast<long double>(s) / stages);
}

void Enumerator::reduce_at(long double share) {
  const int R = b_.rows;
  const int C = b_.cols;
  auto rebuild = [&] {
    reduced_.assign(static_cast<std::size_t>(R * C), 0.0L);
    for (int i = 0; i < R; ++i) {
      long double scale = std::exp(share * b_.log_scale[static_cast<std::size_t>(i)]);
      for (int j = 0; j < C; ++j) {
        Real s = 0;
        for (int l = 0; l < C; ++l) {
          long long g = gamma_[static_cast<std::size_t>(l * C + j)];
          if (g != 0) s += b_.real[static_cast<std::size_t>(i * C + l)] * static_cast<Real>(g);
        }
        reduced_[static_cast<std::size_t>(i * C + j)] = static_cast<long double>(s) * scale;
      }
    }
  };
  for (int pass = 0; pass < 4; ++pass) {
    rebuild();
    gram_schmidt();
    bool changed = false;
    int k = 1;
    std::uint64_t steps = 0;
    while (k < C) {
      if (++steps > 100000) throw PrecisionError("lattice reduction: LLL did not converge");
      for (int j = k - 1; j >= 0; --j) {
        long double m = mu_[static_cast<std::size_t>(k * C + j)];
        if (std::fabs(m) <= 0.5L) continue;
        long double qf = std::nearbyint(m);
        if (std::fabs(qf) > 4e18L) throw PrecisionError("lattice reduction: size-reduction coefficient overflow");
        long long q = static_cast<long long>(qf);
        for (int i = 0; i < R; ++i) {
          reduced_[static_cast<std::size_t>(i * C + k)] -= qf * reduced_[static_cast<std::size_t>(i * C + j)];
        }
        for (int l = 0; l < C; ++l) {
          auto& gk = gamma_[static_cast<std::size_t>(l * C + k)];
          gk = checked(static_cast<__int128>(gk) - static_cast<__int128>(q) * gamma_[static_cast<std::size_t>(l * C + j)]);
        }
        for (int l = 0; l <= j; ++l) {
          mu_[static_cast<std::size_t>(k * C + l)] -= qf * mu_[static_cast<std::size_t>(j * C + l)];
        }
        changed = true;
      }
      long double mk = mu_[static_cast<std::size_t>(k * C + k - 1)];
      if (bstar_[static_cast<std::size_t>(k)] >= (kLllDelta - mk * mk) * bstar_[static_cast<std::size_t>(k - 1)]) {
        ++k;
      } else {
        for (int i = 0; i < R; ++i) {
          std::swap(reduced_[static_cast<std::size_t>(i * C + k)], reduced_[static_cast<std::size_t>(i * C + k - 1)]);
        }
        for (int l = 0; l < C; ++l) {
          std::swap(gamma_[static_cast<std::size_t>(l * C + k)], gamma_[static_cast<std::size_t>(l * C + k - 1)]);
        }
        gram_schmidt();
        k = std::max(1, k - 1);
        changed = true;
      }
    }
    if (!changed) break;
  }
  rebuild();
  gram_schmidt();
}

std::vector<Found> Enumerator::enumerate(double log_radius, bool primitive_only) {
  const int R = b_.rows;
  const int C = b_.cols;
  std::vector<Found> out;
  if (!std::isfinite(log_radius)) throw DomainError("enumerate: radius must be finite and positive");
  const long double radius = std::exp(static_cast<long double>(log_radius));
  const long double r2 = static_cast<long double>(R) * radius * radius * (1.0L + 1e-9L);
  std::vector<long long> x(static_cast<std::size_t>(C), 0);
  std::vector<long double> center(static_cast<std::size_t>(C), 0);

  std::function<void(int, long double, bool)> rec = [&](int level, long double partial, bool higher_zero) {
    long double c = 0;
    for (int j = level + 1; j < C; ++j) c -= mu_[static_cast<std::size_t>(j * C + level)] * static_cast<long double>(x[static_cast<std::size_t>(j)]);
    long double room = (r2 - partial) / bstar_[static_cast<std::size_t>(level)];
    if (room < 0) return;
    long double w = std::sqrt(room);
    long double lo_f = std::ceil(c - w);
    long double hi_f = std::floor(c + w);
    if (higher_zero) lo_f = std::max(lo_f, 0.0L);
    if (hi_f < lo_f) return;
    if (hi_f - lo_f > 1e12L) throw BudgetExceeded("enumeration: search range exceeds the node budget");
    for (long double xf = lo_f; xf <= hi_f; xf += 1) {
      if (++nodes_ > budget_) {
        throw BudgetExceeded("enumeration exceeded node budget of " + std::to_string(budget_));
      }
      x[static_cast<std::size_t>(level)] = static_cast<long long>(xf);
      long double diff = xf - c;
      long double next = partial + diff * diff * bstar_[static_cast<std::size_t>(level)];
      bool zero_here = higher_zero && x[static_cast<std::size_t>(level)] == 0;
      if (level > 0) {
        rec(level - 1, next, zero_here);
      } else if (!zero_here) {
        if (primitive_only) {
          // gamma is unimodular, so gcd(x) = gcd of the original coefficients.
          long long g = 0;
          for (long long v : x) g = std::gcd(g, v < 0 ? -v : v);
          if (g != 1) continue;
        }
        // Cheap rejection in long double with a rounding margin; survivors
        // are evaluated from the unreduced basis.
        bool outside = false;
        for (int i = 0; i < R && !outside; ++i) {
          long double s = 0, mag = 0;
          for (int j = 0; j < C; ++j) {
            long double term = reduced_[static_cast<std::size_t>(i * C + j)] * static_cast<long double>(x[static_cast<std::size_t>(j)]);
            s += term;
            mag += std::fabs(term);
          }
          outside = std::fabs(s) - 1e-12L * mag > radius * (1.0L + 1e-9L);
        }
        if (outside) continue;
        std::vector<long long> coeffs(static_cast<std::size_t>(C));
        for (int l = 0; l < C; ++l) {
          __int128 s = 0;
          for (int j = 0; j < C; ++j) {
            s += static_cast<__int128>(gamma_[static_cast<std::size_t>(l * C + j)]) * x[static_cast<std::size_t>(j)];
          }
          coeffs[static_cast<std::size_t>(l)] = checked(s);
        }
        std::vector<LogReal> val = evaluate(coeffs);
        double lg = -std::numeric_limits<double>::infinity();
        for (const LogReal& v : val) lg = std::max(lg, v.log_abs);
        if (lg <= log_radius + kLogTolerance) out.push_back(Found{std::move(coeffs), std::move(val), lg});
      }
    }
    x[static_cast<std::size_t>(level)] = 0;
  };
  rec(C - 1, 0.0L, true);

  // Canonical sign: first nonzero coefficient positive.
  for (Found& f : out) {
    auto it = std::find_if(f.coeffs.begin(), f.coeffs.end(), [](long long v) { return v != 0; });
    if (it != f.coeffs.end() && *it < 0) {
      for (auto& v : f.coeffs) v = -v;
      for (auto& v : f.value) v.sign = -v.sign;
    }
  }
  std::sort(out.begin(), out.end(), [](const Found& a, const Found& b) {
    if (a.log_norm != b.log_norm) return a.log_norm < b.log_norm;
    return a.coeffs < b.coeffs;
  });
  return out;
}

long double log_covolume(const ScaledBasis& b) {
  const int R = b.rows;
  const int C = b.cols;
  std::vector<long double> cols(static_cast<std::size_t>(R * C));
  for (int i = 0; i < R; ++i) {
    long double scale = std::exp(b.log_scale[static_cast<std::size_t>(i)]);
    for (int j = 0; j < C; ++j) cols[static_cast<std::size_t>(i * C + j)] = static_cast<long double>(b.real[static_cast<std::size_t>(i * C + j)]) * scale;
  }
  // Modified Gram-Schmidt: covolume is the product of the orthogonal parts.
  long double lg = 0;
  for (int j = 0; j < C; ++j) {
    for (int l = 0; l < j; ++l) {
      long double dot = 0, nn = 0;
      for (int i = 0; i < R; ++i) {
        dot += cols[static_cast<std::size_t>(i * C + j)] * cols[static_cast<std::size_t>(i * C + l)];
        nn += cols[static_cast<std::size_t>(i * C + l)] * cols[static_cast<std::size_t>(i * C + l)];
      }
      long double m = dot / nn;
      for (int i = 0; i < R; ++i) cols[static_cast<std::size_t>(i * C + j)] -= m * cols[static_cast<std::size_t>(i * C + l)];
    }
    long double nn = 0;
    for (int i = 0; i < R; ++i) nn += cols[static_cast<std::size_t>(i * C + j)] * cols[static_cast<std::size_t>(i * C + j)];
    if (!(nn > 0)) throw DomainError("covolume: generators are linearly dependent");
    lg += 0.5L * std::log(nn);
  }
  return lg;
}

Rational det_exact(std::vector<Rational> m, int k) {
  Rational det = 1;
  for (int c = 0; c < k; ++c) {
    int piv = -1;
    for (int r = c; r < k; ++r) {
      if (sgn(m[static_cast<std::size_t>(r * k + c)]) != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) return 0;
    if (piv != c) {
      for (int j = 0; j < k; ++j) std::swap(m[static_cast<std::size_t>(piv * k + j)], m[static_cast<std::size_t>(c * k + j)]);
      det = -det;
    }
    Rational p = m[static_cast<std::size_t>(c * k + c)];
    det *= p;
    for (int r = c + 1; r < k; ++r) {
      if (sgn(m[static_cast<std::size_t>(r * k + c)]) == 0) continue;
      Rational f = m[static_cast<std::size_t>(r * k + c)] / p;
      for (int j = c; j < k; ++j) m[static_cast<std::size_t>(r * k + j)] -= f * m[static_cast<std::size_t>(c * k + j)];
    }
  }
  det.canonicalize();
  return det;
}

Real det_real(std::vector<Real> m, int k) {
  auto absq = [](Real x) { return x < 0 ? -x : x; };
  Real det = 1;
  for (int c = 0; c < k; ++c) {
    int piv = c;
    for (int r = c + 1; r < k; ++r) {
      if (absq(m[static_cast<std::size_t>(r * k + c)]) > absq(m[static_cast<std::size_t>(piv * k + c)])) piv = r;
    }
    if (m[static_cast<std::size_t>(piv * k + c)] == 0) return 0;
    if (piv != c) {
      for (int j = 0; j < k; ++j) std::swap(m[static_cast<std::size_t>(piv * k + j)], m[static_cast<std::size_t>(c * k + j)]);
      det = -det;
    }
    Real p = m[static_cast<std::size_t>(c * k + c)];
    det *= p;
    for (int r = c + 1; r < k; ++r) {
      Real f = m[static_cast<std::size_t>(r * k + c)] / p;
      for (int j = c; j < k; ++j) m[static_cast<std::size_t>(r * k + j)] -= f * m[static_cast<std::size_t>(c * k + j)];
    }
  }
  return det;
}

}  // namespace affsing::lattice::detail
