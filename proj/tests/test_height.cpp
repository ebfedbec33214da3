#include <doctest.h>

#include "affsing/height.hpp"
#include "oracles.hpp"

using namespace affsing;
using algebra::ExtVector;
using algebra::mask_of;
using lattice::LatticePoint;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// log phi_eps(v) evaluated from the definition, block by block.
double phi_log_oracle(const ExtVector<double>& v, const Dims& dims, double eps) {
  const int k = v.grade(), d = dims.d;
  const double dk = (dims.n + 1 - k) * k;
  std::vector<double> block(static_cast<std::size_t>(d + 2), 0.0);
  for (std::size_t p = 0; p < v.size(); ++p) {
    int i = algebra::perp_count(v.mask(p), dims);
    block[static_cast<std::size_t>(i)] = std::max(block[static_cast<std::size_t>(i)], std::fabs(v[p]));
  }
  double fix = std::max(block[0], block[static_cast<std::size_t>(d + 1)]);
  if (fix >= std::pow(eps, dk)) return -kInf;
  double best = kInf;
  for (int i = 1; i <= d; ++i) {
    double norm = block[static_cast<std::size_t>(i)];
    if (norm == 0) continue;
    double e = (d + 1.0) / (d + 1.0 - i);
    best = std::min(best, e * dk * std::log(eps) - e * std::log(norm));
  }
  return best;
}

std::vector<Number> numbers(const std::vector<std::string>& s) {
  std::vector<Number> out;
  for (const auto& x : s) out.push_back(parse_scalar(x).number());
  return out;
}

}  // namespace

TEST_CASE("phi on basis vectors") {
  Dims d(2, 1);
  auto e0 = algebra::to_double(algebra::basis_vector<Rational>(3, mask_of({0})));
  CHECK(height::phi_eps(e0, d, 0.1).value() == doctest::Approx(1e-4).epsilon(1e-12));
  auto e2 = algebra::to_double(algebra::basis_vector<Rational>(3, mask_of({2})));
  CHECK(height::phi_eps(e2, d, 0.1).is_zero());
  ExtVector<double> tiny(3, 1);
  tiny.at(mask_of({2})) = 1e-3;
  CHECK(height::phi_eps(tiny, d, 0.1).is_infinite());
}

TEST_CASE("phi matches its definition on random vectors") {
  auto rng = affsing::stats::make_rng(41, 0);
  for (int n = 2; n <= 4; ++n) {
    for (int d = 1; d < n; ++d) {
      Dims dims(n, d);
      for (int k = 1; k <= n; ++k) {
        for (int rep = 0; rep < 20; ++rep) {
          ExtVector<double> v(n + 1, k);
          double scale = std::exp(-6.0 * (affsing::stats::centered_uniform(rng) + 0.5));
          for (std::size_t p = 0; p < v.size(); ++p) v[p] = scale * affsing::stats::centered_uniform(rng);
          double eps = 0.2 + 0.8 * (affsing::stats::centered_uniform(rng) + 0.5);
          double expected = phi_log_oracle(v, dims, eps);
          auto got = height::phi_eps(v, dims, eps);
          if (expected == -kInf) {
            REQUIRE(got.is_zero());
          } else if (expected == kInf) {
            REQUIRE(got.is_infinite());
          } else {
            REQUIRE(got.log() == doctest::Approx(expected).epsilon(1e-12));
          }
        }
      }
    }
  }
}

TEST_CASE("phi rejects the zero vector") {
  CHECK_THROWS_AS(height::phi_eps(ExtVector<double>(3, 1), Dims(2, 1), 0.5), DomainError);
}

TEST_CASE("phi is homogeneous on a single block") {
  auto rng = affsing::stats::make_rng(42, 0);
  Dims dims(3, 2);
  for (int i = 1; i <= 2; ++i) {
    for (int rep = 0; rep < 20; ++rep) {
      ExtVector<double> v(4, i);
      for (std::size_t p = 0; p < v.size(); ++p) {
        if (algebra::perp_count(v.mask(p), dims) == i) v[p] = affsing::stats::centered_uniform(rng);
      }
      double c = std::exp(3 * affsing::stats::centered_uniform(rng));
      ExtVector<double> cv = v;
      for (auto& x : cv.coeffs()) x *= c;
      double e = height::block_exponent(dims, i);
      CHECK(e == doctest::Approx(3.0 / (3.0 - i)));
      CHECK(height::phi_eps(cv, dims, 0.5).log() ==
            doctest::Approx(height::phi_eps(v, dims, 0.5).log() - e * std::log(c)).epsilon(1e-12));
    }
  }
}

TEST_CASE("alpha of the standard lattice") {
  Dims d(2, 1);
  height::HeightParams p = height::HeightParams::defaults(d);
  p.epsilon = 0.1;
  p.theta = 0.4;
  auto a = height::alpha(LatticePoint::standard(d), p);
  CHECK(a.complete);
  CHECK(a.value.value() == doctest::Approx(std::pow(1e-4, 0.4)).epsilon(1e-12));
  REQUIRE(a.witness.has_value());
  CHECK(a.witness->k == 1);
}

TEST_CASE("alpha is infinite on a lattice with a short fixed vector") {
  Dims d(2, 1);
  height::HeightParams p = height::HeightParams::defaults(d);
  p.epsilon = 0.5;
  auto y = LatticePoint::standard(d).flowed(algebra::FlowKind::B, 6.0);
  CHECK(height::alpha(y, p).value.is_infinite());
}

TEST_CASE("height parameters are validated") {
  Dims d(2, 1);
  auto p = height::HeightParams::defaults(d);
  CHECK(p.theta == doctest::Approx(0.49));
  CHECK_NOTHROW(p.validate(d));
  p.delta = 0.6;
  CHECK_THROWS_AS(p.validate(d), ConfigError);
  p = height::HeightParams::defaults(d);
  p.epsilon = 1.5;
  CHECK_THROWS_AS(p.validate(d), ConfigError);
  p = height::HeightParams::defaults(d);
  p.theta = 0.5;
  CHECK_THROWS_AS(p.validate(d), ConfigError);
}

TEST_CASE("damped trapezoid rule") {
  const double delta = 0.1, h = 0.05;
  std::vector<double> undamped, ones;
  for (int j = 0; j <= 800; ++j) {
    undamped.push_back(std::exp(delta * j * h));
    ones.push_back(1.0);
  }
  CHECK(height::damped_trapezoid(undamped, h, delta).value == doctest::Approx(40.0).epsilon(1e-12));
  auto r = height::damped_trapezoid(ones, h, delta);
  double exact = (1 - std::exp(-4.0)) / delta;
  double err = std::fabs(r.value - exact);
  CHECK(err < 1e-4);
  CHECK(r.step_error > 0);
  CHECK(err == doctest::Approx(r.step_error).epsilon(0.05));
}

TEST_CASE("rho from synthetic samples") {
  std::vector<double> t, linear, plateau, none;
  for (int j = 0; j <= 40; ++j) {
    t.push_back(j);
    linear.push_back(0.25 * j);
    plateau.push_back(std::min(3.0, 3.0 * j));
    none.push_back(-kInf);
  }
  auto lin = height::rho_from_samples(t, linear, none, 40);
  CHECK(lin.rho == doctest::Approx(0.25));
  CHECK(lin.slope_fit == doctest::Approx(0.25));
  CHECK_FALSE(lin.infinite);
  // log alpha constant = 3 on the upper half: max of 3/t over [T/2, T].
  for (double T : {10.0, 20.0, 40.0}) {
    std::vector<double> tt, la, lx;
    for (std::size_t j = 0; j < t.size() && t[j] <= T; ++j) {
      tt.push_back(t[j]);
      la.push_back(plateau[j]);
      lx.push_back(-kInf);
    }
    CHECK(height::rho_from_samples(tt, la, lx, T).rho == doctest::Approx(6.0 / T));
  }
  auto blown = linear;
  blown[30] = kInf;
  auto inf = height::rho_from_samples(t, blown, none, 40);
  CHECK(inf.infinite);
  CHECK(inf.first_infinite_t == 30);
}

TEST_CASE("smoothed height: finite for irrational, infinite for rational parameters") {
  Dims d(2, 1);
  auto p = height::HeightParams::defaults(d);
  p.T_max = 12;
  p.h = 0.25;
  auto irrational = LatticePoint::from_A(numbers({"sqrt(2)-1", "sqrt(3)-1"}), d);
  auto r = height::alpha_tilde(irrational, p);
  CHECK_FALSE(r.value.is_infinite());
  CHECK(r.value.value() > 0);
  CHECK(r.quadrature_error >= r.step_error);
  auto rational = LatticePoint::from_A(numbers({"1/2", "1/3"}), d);
  p.T_max = 40;
  CHECK(height::alpha_tilde(rational, p).value.is_infinite());
}

TEST_CASE("default epsilon is at most one") {
  Dims d(2, 1);
  std::vector<LatticePoint> sample{LatticePoint::standard(d),
                                   LatticePoint::from_A(numbers({"sqrt(2)-1", "sqrt(3)-1"}), d).flowed(algebra::FlowKind::B, 4)};
  double eps = height::default_epsilon(sample);
  CHECK(eps > 0);
  CHECK(eps <= 1);
}
