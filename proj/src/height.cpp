#include "affsing/height.hpp"

#include <algorithm>
#include <numeric>

#include "reduction.hpp"

namespace affsing::height {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

HeightParams HeightParams::defaults(const Dims& dims) {
  HeightParams p;
  p.theta = static_cast<double>(dims.d) / (dims.d + 1) - 0.01;
  p.delta = 0.02;
  return p;
}

void HeightParams::validate(const Dims& dims) const {
  const double top = static_cast<double>(dims.d) / (dims.d + 1);
  if (!(epsilon > 0 && epsilon <= 1)) throw ConfigError("epsilon must lie in (0, 1]");
  if (!(theta > 0 && theta < top)) throw ConfigError("theta must lie in (0, d/(d+1))");
  if (!(delta > 0 && delta < theta)) throw ConfigError("delta must lie in (0, theta)");
  if (!(cutoff_R > 0) || !(cutoff_R_max >= cutoff_R)) throw ConfigError("need 0 < cutoff_R <= cutoff_R_max");
  if (!(T_max > 0) || !(h > 0) || h > T_max) throw ConfigError("need 0 < h <= T_max");
}

double block_exponent(const Dims& dims, int i) {
  return static_cast<double>(dims.d + 1) / static_cast<double>(dims.d + 1 - i);
}

ExtendedReal phi_eps(const ExtVector<LogReal>& v, const Dims& dims, double epsilon) {
  const int k = v.grade();
  if (v.dim() != dims.ambient()) throw DomainError("phi_eps: dimension mismatch");
  if (k < 1 || k > dims.n) throw DomainError("phi_eps: need 0 < k < n+1");
  if (v.is_zero()) throw DomainError("phi_eps: v must be nonzero");
  const double log_thresh = delta_k(dims, k) * std::log(epsilon);
  std::vector<double> block_log(static_cast<std::size_t>(dims.d + 2), -kInf);
  for (std::size_t p = 0; p < v.size(); ++p) {
    if (v[p].is_zero()) continue;
    int i = algebra::perp_count(v.mask(p), dims);
    block_log[static_cast<std::size_t>(i)] = std::max(block_log[static_cast<std::size_t>(i)], v[p].log_abs);
  }
  double fix = std::max(block_log[0], block_log[static_cast<std::size_t>(dims.d + 1)]);
  if (fix >= log_thresh) return ExtendedReal::zero();
  double best = kInf;
  for (int i = 1; i <= dims.d; ++i) {
    double nb = block_log[static_cast<std::size_t>(i)];
    if (nb == -kInf) continue;  // vanishing block contributes +infinity
    best = std::min(best, block_exponent(dims, i) * (log_thresh - nb));
  }
  return ExtendedReal::from_log(best);
}

ExtendedReal phi_eps(const ExtVector<Rational>& v, const Dims& dims, double epsilon) {
  return phi_eps(algebra::to_log(v), dims, epsilon);
}

ExtendedReal phi_eps(const ExtVector<double>& v, const Dims& dims, double epsilon) {
  ExtVector<LogReal> lv(v.dim(), v.grade());
  for (std::size_t p = 0; p < v.size(); ++p) lv[p] = LogReal::from_double(v[p]);
  return phi_eps(lv, dims, epsilon);
}

AlphaResult alpha(const LatticePoint& y, const HeightParams& params, const lattice::EnumOptions& opt) {
  const Dims& dims = y.dims();
  params.validate(dims);
  const int N = dims.ambient();
  const double log_eps = std::log(params.epsilon);
  const double c1 = block_exponent(dims, 1);
  AlphaResult out;
  out.value = ExtendedReal::zero();
  double best_log = -kInf;
  std::optional<std::pair<int, std::vector<long long>>> best_coords;
  std::optional<ExtVector<LogReal>> best_image;
  double excluded_log = -kInf;

  for (int k = 1; k <= dims.n; ++k) {
    const double log_thresh = delta_k(dims, k) * log_eps;
    double log_R = std::max(std::log(params.cutoff_R), log_thresh);
    const double log_R_max = std::max(std::log(params.cutoff_R_max), log_thresh);
    lattice::detail::Enumerator e(lattice::detail::exterior_basis(y.word, k), opt.node_budget);
    double searched = -kInf;
    for (;;) {
      for (auto& f : e.enumerate(log_R, true)) {
        if (f.log_norm <= searched) continue;  // already seen at a smaller radius
        long long g = 0;
        for (long long c : f.coeffs) g = std::gcd(g, c < 0 ? -c : c);
        if (g != 1) continue;
        ExtVector<LogReal> img(N, k);
        for (std::size_t p = 0; p < f.value.size(); ++p) img[p] = f.value[p];
        ExtendedReal phi = phi_eps(img, dims, params.epsilon);
        if (phi.is_zero()) continue;
        double lg = phi.is_infinite() ? kInf : params.theta * phi.log();
        if (lg <= best_log) continue;
        if (k >= 2 && k <= N - 2) {
          std::vector<Integer> coords;
          for (long long c : f.coeffs) coords.emplace_back(static_cast<signed long>(c));
          if (!algebra::plucker_check(coords, N, k)) continue;
        }
        best_log = lg;
        best_coords = std::make_pair(k, f.coeffs);
        best_image = img;
        if (std::isinf(lg)) break;
      }
      searched = log_R;
      if (best_log == kInf) break;
      double excl = params.theta * c1 * (log_thresh - log_R);
      if (excl <= best_log || log_R >= log_R_max) break;
      log_R = std::min(log_R + std::log(2.0), log_R_max);
    }
    out.radius.push_back(std::exp(log_R));
    excluded_log = std::max(excluded_log, params.theta * c1 * (log_thresh - log_R));
    if (best_log == kInf) break;
  }

  out.value = best_log == kInf ? ExtendedReal::infinity() : ExtendedReal::from_log(best_log);
  out.excluded_bound = std::exp(excluded_log);
  out.complete = out.value.is_infinite() || excluded_log <= best_log;
  if (best_coords) {
    IntegralDecomposable w;
    w.k = best_coords->first;
    for (long long c : best_coords->second) w.coords.emplace_back(static_cast<signed long>(c));
    w.image = *best_image;
    if (opt.with_generators) w.generators = lattice::generators_of(w.coords, N, w.k);
    out.witness = std::move(w);
  }
  return out;
}

DampedIntegral damped_trapezoid(const std::vector<double>& samples, double h, double delta) {
  if (samples.size() < 2 || !(h > 0)) throw DomainError("damped_trapezoid: need two samples and h > 0");
  const int steps = static_cast<int>(samples.size()) - 1;
  auto at = [&](int j) { return std::exp(-delta * j * h) * samples[static_cast<std::size_t>(j)]; };
  auto rule = [&](int stride) {
    double s = 0;
    for (int j = 0; j + stride <= steps; j += stride) s += 0.5 * (at(j) + at(j + stride));
    return s * h * stride;
  };
  DampedIntegral out;
  out.value = rule(1);
  out.step_error = steps % 2 == 0 ? std::fabs(out.value - rule(2)) / 3.0 : 0.0;
  return out;
}

AlphaTildeResult alpha_tilde(const LatticePoint& y, const HeightParams& params, lattice::EnumOptions opt) {
  params.validate(y.dims());
  opt.with_generators = false;
  const int steps = static_cast<int>(std::ceil(params.T_max / params.h - 1e-9));
  const double h = params.T_max / steps;
  std::vector<double> vals(static_cast<std::size_t>(steps + 1));
  AlphaTildeResult out;
  double max_alpha = 0;
  for (int j = 0; j <= steps; ++j) {
    double t = j * h;
    AlphaResult a = alpha(y.flowed(algebra::FlowKind::B, t), params, opt);
    ++out.evaluations;
    if (a.value.is_infinite()) {
      out.value = ExtendedReal::infinity();
      out.step_error = kInf;
      out.tail_bound = kInf;
      out.quadrature_error = kInf;
      return out;
    }
    double av = a.value.value();
    max_alpha = std::max(max_alpha, av);
    vals[static_cast<std::size_t>(j)] = av;
  }
  DampedIntegral q = damped_trapezoid(vals, h, params.delta);
  out.value = ExtendedReal::from_value(q.value);
  out.step_error = q.step_error;
  out.tail_bound = std::exp(-params.delta * params.T_max) * max_alpha / params.delta;
  out.quadrature_error = out.step_error + out.tail_bound;
  return out;
}

RhoResult rho_from_samples(std::vector<double> times, std::vector<double> log_alpha, std::vector<double> log_excluded,
                           double T) {
  if (times.size() != log_alpha.size() || times.size() != log_excluded.size()) {
    throw DomainError("rho_from_samples: series lengths differ");
  }
  RhoResult out;
  out.rho = -kInf;
  out.rho_upper = -kInf;
  out.t = std::move(times);
  out.log_alpha = std::move(log_alpha);
  out.log_excluded = std::move(log_excluded);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (std::size_t j = 0; j < out.t.size(); ++j) {
    double t = out.t[j];
    double la = out.log_alpha[j];
    if (la == kInf) {
      // alpha stays infinite further along the orbit; the series ends here.
      out.infinite = true;
      out.first_infinite_t = t;
      out.rho = out.rho_upper = out.slope_fit = kInf;
      out.t.resize(j + 1);
      out.log_alpha.resize(j + 1);
      out.log_excluded.resize(j + 1);
      return out;
    }
    double lu = std::max(la, out.log_excluded[j]);
    if (t >= T / 2) {
      out.rho = std::max(out.rho, la / t);
      out.rho_upper = std::max(out.rho_upper, lu / t);
    }
    if (std::isfinite(la)) {
      sx += t;
      sy += la;
      sxx += t * t;
      sxy += t * la;
      ++cnt;
    }
  }
  double den = cnt * sxx - sx * sx;
  out.slope_fit = cnt >= 2 && den > 0 ? (cnt * sxy - sx * sy) / den : 0.0;
  return out;
}

RhoResult rho_estimate(const LatticePoint& y, const HeightParams& params, double T, int grid,
                       lattice::EnumOptions opt) {
  if (!(T > 0)) throw DomainError("rho_estimate: T must be > 0");
  if (grid < 8) throw DomainError("rho_estimate: grid must be >= 8");
  params.validate(y.dims());
  opt.with_generators = false;
  RhoResult out;
  for (int j = 1; j <= grid; ++j) {
    double t = T * j / grid;
    AlphaResult a = alpha(y.flowed(algebra::FlowKind::B, t), params, opt);
    out.t.push_back(t);
    out.log_alpha.push_back(a.value.is_infinite() ? kInf : a.value.log());
    out.log_excluded.push_back(std::log(a.excluded_bound));
    if (a.value.is_infinite()) break;
  }
  return rho_from_samples(std::move(out.t), std::move(out.log_alpha), std::move(out.log_excluded), T);
}

double min_decomposable_log_norm(const LatticePoint& y, int k, const lattice::EnumOptions& opt) {
  const int N = y.dims().ambient();
  lattice::detail::Enumerator e(lattice::detail::exterior_basis(y.word, k), opt.node_budget);
  double log_R = e.reduced_bound_log();
  for (int iter = 0; iter < 64; ++iter) {
    for (auto& f : e.enumerate(log_R, true)) {
      if (k >= 2 && k <= N - 2) {
        std::vector<Integer> coords;
        for (long long c : f.coeffs) coords.emplace_back(static_cast<signed long>(c));
        if (!algebra::plucker_check(coords, N, k)) continue;
      }
      return f.log_norm;  // sorted by norm
    }
    log_R += std::log(2.0);
  }
  throw BudgetExceeded("min_decomposable_log_norm: no decomposable vector found");
}

double default_epsilon(const std::vector<LatticePoint>& sample, const lattice::EnumOptions& opt) {
  double log_eps = 0;  // clamp at 1
  for (const auto& y : sample) {
    for (int k = 1; k <= y.dims().n; ++k) {
      log_eps = std::min(log_eps, min_decomposable_log_norm(y, k, opt) / delta_k(y.dims(), k));
    }
  }
  return std::exp(log_eps);
}

}  // namespace affsing::height
