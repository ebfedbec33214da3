#include <doctest.h>

#include "affsing/dioph.hpp"
#include "oracles.hpp"

using namespace affsing;
using dioph::AffineParam;

namespace {

std::vector<long double> values(const AffineParam& A) {
  std::vector<long double> out;
  for (const auto& e : A.entries) out.push_back(e.value.convert_to<long double>());
  return out;
}

struct ScanResult {
  double every_q = -std::numeric_limits<double>::infinity();
  double records_only = -std::numeric_limits<double>::infinity();
};

/// Largest exponent over q in [sqrt(Q), Q] by direct scan, n - d = 1; also
/// the same maximum restricted to the running-minimum records.
ScanResult omega_oracle(const AffineParam& A, long long Q) {
  auto a = values(A);
  long double running = std::numeric_limits<long double>::infinity();
  ScanResult out;
  for (long long q = 1; q <= Q; ++q) {
    long double err = 0;
    for (long double x : a) {
      long double v = x * static_cast<long double>(q);
      err = std::max(err, std::fabs(v - std::nearbyint(v)));
    }
    double e = q > 1 ? static_cast<double>(-std::log(err) / std::log(static_cast<long double>(q))) : 0.0;
    bool upper = q * q >= Q;
    if (upper) out.every_q = std::max(out.every_q, e);
    if (err < running) {
      running = err;
      if (upper) out.records_only = std::max(out.records_only, e);
    }
  }
  return out;
}

/// ||P_W v|| / ||v|| through the normal equations of the rows of [I | A].
double proj_distance_oracle(const AffineParam& A, const dioph::IntVector& v) {
  const int r = A.rows(), c = A.cols(), N = r + c;
  auto a = values(A);
  std::vector<std::vector<long double>> W(static_cast<std::size_t>(r), std::vector<long double>(static_cast<std::size_t>(N), 0));
  for (int i = 0; i < r; ++i) {
    W[i][i] = 1;
    for (int j = 0; j < c; ++j) W[i][r + j] = a[static_cast<std::size_t>(i * c + j)];
  }
  // Solve (W W^T) y = W v, then P v = W^T y.
  std::vector<std::vector<long double>> G(r, std::vector<long double>(r + 1, 0));
  for (int i = 0; i < r; ++i) {
    for (int k = 0; k < r; ++k) {
      for (int j = 0; j < N; ++j) G[i][k] += W[i][j] * W[k][j];
    }
    for (int j = 0; j < N; ++j) G[i][r] += W[i][j] * v[static_cast<std::size_t>(j)];
  }
  for (int col = 0; col < r; ++col) {
    for (int row = col + 1; row < r; ++row) {
      long double f = G[row][col] / G[col][col];
      for (int j = col; j <= r; ++j) G[row][j] -= f * G[col][j];
    }
  }
  std::vector<long double> y(r);
  for (int i = r - 1; i >= 0; --i) {
    long double acc = G[i][r];
    for (int k = i + 1; k < r; ++k) acc -= G[i][k] * y[k];
    y[i] = acc / G[i][i];
  }
  long double pn = 0, vn = 0;
  for (int j = 0; j < N; ++j) {
    long double pj = 0;
    for (int i = 0; i < r; ++i) pj += W[i][j] * y[i];
    pn += pj * pj;
    vn += static_cast<long double>(v[j]) * v[j];
  }
  return static_cast<double>(std::sqrt(pn / vn));
}

}  // namespace

TEST_CASE("scalar parsing keeps rationals exact") {
  auto q = parse_scalar("355/113");
  REQUIRE(q.exact.has_value());
  CHECK(*q.exact == Rational(355, 113));
  auto d = parse_scalar("-0.25");
  CHECK(*d.exact == Rational(-1, 4));
  auto r = parse_scalar("(sqrt(2) + 1) / 2");
  CHECK_FALSE(r.exact.has_value());
  CHECK(r.value.convert_to<double>() == doctest::Approx((std::sqrt(2.0) + 1) / 2).epsilon(1e-15));
  CHECK(parse_scalar("root(8, 3)").value.convert_to<double>() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(parse_scalar("sqrt(2"), ConfigError);
  CHECK_THROWS_AS(parse_scalar("1/0"), ConfigError);
  CHECK_THROWS_AS(parse_scalar("abc"), ConfigError);
}

TEST_CASE("omega of the zero matrix and of rational matrices") {
  Dims d(2, 1);
  auto zero = AffineParam::from_rationals(d, {0, 0});
  auto r = dioph::omega_estimate(zero, 100);
  CHECK(r.omega.is_infinite());
  REQUIRE(r.exact_relation.has_value());
  CHECK(r.exact_relation->first == dioph::IntVector{1});
  CHECK(r.exact_relation->second == dioph::IntVector{0, 0});

  auto rng = affsing::stats::make_rng(51, 0);
  for (int rep = 0; rep < 30; ++rep) {
    Dims dims = rep % 2 ? Dims(2, 1) : Dims(3, 1);
    auto A = tools::random_rational_A(rng, dims, 20);
    auto res = dioph::omega_estimate(A, 400);
    REQUIRE(res.omega.is_infinite());
    REQUIRE(res.exact_relation.has_value());
    const auto& [qv, pv] = *res.exact_relation;
    for (int i = 0; i < A.rows(); ++i) {
      Rational acc = 0;
      for (int j = 0; j < A.cols(); ++j) acc += *A.at(i, j).exact * Rational(static_cast<signed long>(qv[static_cast<std::size_t>(j)]));
      REQUIRE(acc == Rational(static_cast<signed long>(pv[static_cast<std::size_t>(i)])));
    }
  }
}

TEST_CASE("omega against a direct scan of the upper height range") {
  auto rng = affsing::stats::make_rng(52, 0);
  for (int rep = 0; rep < 15; ++rep) {
    auto A = tools::random_algebraic_A(rng, Dims(2, 1));
    auto res = dioph::omega_estimate(A, 3000);
    REQUIRE_FALSE(res.omega.is_infinite());
    auto scan = omega_oracle(A, 3000);
    REQUIRE(std::exp(res.omega.log()) == doctest::Approx(scan.every_q).epsilon(1e-9));
    REQUIRE(scan.every_q >= scan.records_only);
    for (const auto& rec : res.records) {
      auto a = values(A);
      for (std::size_t i = 0; i < a.size(); ++i) {
        long double v = a[i] * static_cast<long double>(rec.q[0]);
        REQUIRE(rec.p[i] == static_cast<long long>(std::nearbyint(v)));
      }
    }
  }
}

TEST_CASE("omega respects the Dirichlet floor on random real matrices") {
  auto rng = affsing::stats::make_rng(53, 0);
  for (int rep = 0; rep < 10; ++rep) {
    Dims dims = rep % 2 ? Dims(2, 1) : Dims(3, 2);
    auto A = tools::random_real_A(rng, dims);
    auto res = dioph::omega_estimate(A, 20000);
    CHECK(std::exp(res.omega.log()) >= dims.dirichlet_exponent() - 0.05);
  }
}

TEST_CASE("projective distance against the normal equations") {
  auto rng = affsing::stats::make_rng(54, 0);
  for (int rep = 0; rep < 200; ++rep) {
    Dims dims = rep % 3 == 0 ? Dims(3, 1) : rep % 3 == 1 ? Dims(3, 2) : Dims(2, 1);
    auto A = tools::random_algebraic_A(rng, dims);
    dioph::IntVector v(static_cast<std::size_t>(dims.ambient()));
    for (auto& c : v) c = tools::uniform_int(rng, -20, 20);
    if (std::all_of(v.begin(), v.end(), [](long long c) { return c == 0; })) continue;
    double got = dioph::proj_distance(A, v);
    REQUIRE(got >= 0);
    REQUIRE(got <= 1 + 1e-15);
    REQUIRE(got == doctest::Approx(proj_distance_oracle(A, v)).epsilon(1e-12).scale(1e-3));
  }
  auto half = AffineParam::from_rationals(Dims(2, 1), {Rational(1, 2), Rational(1, 3)});
  CHECK(dioph::proj_distance(half, {3, 2, -6}) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(dioph::proj_distance(half, {2, 0, 1}) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("geometric exponent") {
  auto zero = AffineParam::from_rationals(Dims(2, 1), {0, 0});
  CHECK(dioph::omega_geometric(zero, 100).infinite);
  auto A = AffineParam::from_strings(Dims(2, 1), {"sqrt(2)-1", "sqrt(3)-1"});
  dioph::OmegaOptions opt;
  opt.lower_height = dioph::matched_height(A, 100);
  auto g = dioph::omega_geometric(A, dioph::matched_height(A, 10000), opt);
  CHECK_FALSE(g.infinite);
  CHECK(g.omega >= 0.4);
  CHECK(dioph::matched_height(A, 10) ==
        doctest::Approx(10 * std::sqrt(1 + std::pow(std::sqrt(2.0) - 1, 2) + std::pow(std::sqrt(3.0) - 1, 2))));
}

TEST_CASE("dimension bound: frozen values") {
  CHECK(dioph::dim_bound_exact(Rational(1, 2), Dims(2, 1)) == Rational(1, 2));
  CHECK(dioph::dim_bound_exact(Rational(1), Dims(2, 1)) == Rational(2, 3));
  CHECK(dioph::dim_bound_exact(Rational(3, 2), Dims(3, 1)) == Rational(11, 16));
  CHECK(dioph::dim_bound_exact(Rational(2), Dims(3, 2)) == Rational(7, 4));
  CHECK(dioph::dim_bound_exact(Rational(1, 3), Dims(3, 2)) == Rational(4, 3));
  CHECK(dioph::dim_bound(ExtendedReal::infinity(), Dims(4, 3)) == 3.0);
  CHECK(dioph::dim_bound(ExtendedReal::from_value(5.0), Dims(4, 1)) == 1.0);
  CHECK_THROWS_AS(dioph::dim_bound(ExtendedReal::from_value(0.2), Dims(2, 1)), DomainError);
}

TEST_CASE("dimension bound is continuous, bounded and nondecreasing") {
  for (int n = 2; n <= 6; ++n) {
    for (int d = 1; d < n; ++d) {
      Dims dims(n, d);
      const double lo = dims.dirichlet_exponent(), hi = n + 1.0;
      const double floor_value = d * d / (d + 1.0);
      double prev = -1;
      for (int j = 0; j <= 2000; ++j) {
        double w = lo + (hi - lo) * j / 2000;
        double v = dioph::dim_bound(ExtendedReal::from_value(w), dims);
        REQUIRE(v >= floor_value - 1e-15);
        REQUIRE(v <= d + 1e-15);
        REQUIRE(v >= prev - 1e-15);
        prev = v;
      }
      if (n - 1 > lo) {
        double below = dioph::dim_bound(ExtendedReal::from_value(std::nextafter(n - 1.0, 0.0)), dims);
        double at = dioph::dim_bound(ExtendedReal::from_value(n - 1.0), dims);
        REQUIRE(std::fabs(below - at) < 1e-12);
      }
    }
  }
}

TEST_CASE("exponent relation: frozen values and inversion") {
  const double theta = 0.49;
  Dims d(2, 1);
  CHECK(dioph::rho_bound(0.5, theta, d) == 0.0);
  CHECK(dioph::rho_bound(1.0, theta, d) == doctest::Approx(theta / 3));
  CHECK(dioph::rho_bound(0.75, theta, d) == doctest::Approx(2 * theta / 9));
  CHECK(dioph::omega_lower_from_rho(0.0, theta, d) == 0.5);
  CHECK(dioph::omega_lower_from_rho(theta / 3, theta, d) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(dioph::rho_bound(2.0, theta, d), DomainError);
  CHECK_THROWS_AS(dioph::omega_lower_from_rho(theta, theta, d), DomainError);

  auto rng = affsing::stats::make_rng(55, 0);
  for (int rep = 0; rep < 1000; ++rep) {
    int n = static_cast<int>(tools::uniform_int(rng, 2, 6));
    Dims dims(n, static_cast<int>(tools::uniform_int(rng, 1, n - 1)));
    double th = (0.05 + 0.9 * (affsing::stats::centered_uniform(rng) + 0.5)) * dims.d / (dims.d + 1.0);
    double lo = dims.dirichlet_exponent();
    double w = lo + (n - lo) * (affsing::stats::centered_uniform(rng) + 0.5);
    if (w >= n) continue;
    double rho = dioph::rho_bound(w, th, dims);
    REQUIRE(rho < th);
    REQUIRE(dioph::omega_lower_from_rho(rho, th, dims) == doctest::Approx(w).epsilon(1e-9));
    auto cases = dioph::omega_lower_cases(rho, th, dims);
    if (cases.case11 && cases.case2) REQUIRE(*cases.case2 < *cases.case11);
  }
}

TEST_CASE("case crossover") {
  for (int n = 2; n <= 6; ++n) {
    for (int d = 1; d < n; ++d) {
      Dims dims(n, d);
      const double theta = 0.9 * d / (d + 1.0);
      double r0 = dioph::crossover_rho(theta, dims);
      CHECK(r0 == doctest::Approx((d * n - 1) * theta / (d * (n + 1.0))));
      auto c = dioph::omega_lower_cases(r0, theta, dims);
      if (c.case2) CHECK(std::fabs(*c.case2 - c.case12) < 1e-12);
    }
  }
}
