#include <doctest.h>

#include "affsing/algebra.hpp"
#include "oracles.hpp"

using namespace affsing;
using algebra::ExtVector;
using algebra::FlowKind;
using algebra::LogReal;
using algebra::mask_of;
using algebra::Matrix;

namespace {

std::vector<Number> numbers(const std::vector<Rational>& q) { return {q.begin(), q.end()}; }

std::vector<Rational> unit(int N, int j) {
  std::vector<Rational> v(static_cast<std::size_t>(N), Rational(0));
  v[static_cast<std::size_t>(j)] = 1;
  return v;
}

}  // namespace

TEST_CASE("basis is lexicographic and positions invert masks") {
  const auto& b = algebra::basis(5, 2);
  CHECK(b.size() == 10);
  CHECK(b.mask(0) == mask_of({0, 1}));
  CHECK(b.mask(1) == mask_of({0, 2}));
  CHECK(b.mask(9) == mask_of({3, 4}));
  for (std::size_t p = 0; p < b.size(); ++p) CHECK(b.position(b.mask(p)) == static_cast<int>(p));
  CHECK(b.position(mask_of({0, 1, 2})) == -1);
}

TEST_CASE("wedge coefficients are the maximal minors") {
  auto rng = affsing::stats::make_rng(11, 0);
  for (int rep = 0; rep < 200; ++rep) {
    int N = static_cast<int>(tools::uniform_int(rng, 2, 6));
    int k = static_cast<int>(tools::uniform_int(rng, 1, N));
    oracle::QMatrix vs;
    for (int a = 0; a < k; ++a) vs.push_back(tools::random_int_vector(rng, N, 5));
    auto w = algebra::wedge(vs);
    for (std::size_t p = 0; p < w.size(); ++p) REQUIRE(w[p] == oracle::minor(vs, w.mask(p)));
  }
}

TEST_CASE("wedge is alternating on every pair of basis vectors") {
  for (int N = 2; N <= 5; ++N) {
    for (int a = 0; a < N; ++a) {
      CHECK(algebra::wedge<Rational>({unit(N, a), unit(N, a)}).is_zero());
      for (int b = a + 1; b < N; ++b) {
        auto ab = algebra::wedge<Rational>({unit(N, a), unit(N, b)});
        auto ba = algebra::wedge<Rational>({unit(N, b), unit(N, a)});
        CHECK(ab.at(mask_of({a, b})) == 1);
        CHECK(ba.at(mask_of({a, b})) == -1);
      }
    }
  }
}

TEST_CASE("grade-one wedge is the vector itself") {
  std::vector<Rational> x{3, -1, Rational(2, 7), 0};
  auto w = algebra::wedge<Rational>({x});
  for (int j = 0; j < 4; ++j) CHECK(w.at(mask_of({j})) == x[static_cast<std::size_t>(j)]);
}

TEST_CASE("wedge rejects grades outside 1..N") {
  CHECK_THROWS_AS(algebra::wedge<Rational>({}), DomainError);
  CHECK_THROWS_AS(algebra::wedge<Rational>({unit(2, 0), unit(2, 1), unit(2, 0)}), DomainError);
}

TEST_CASE("legal band of block indices") {
  Dims d(4, 2);
  CHECK(algebra::legal_band(d, 1) == std::pair{0, 1});
  CHECK(algebra::legal_band(d, 3) == std::pair{1, 3});
  CHECK(algebra::legal_band(d, 5) == std::pair{3, 3});
  CHECK_THROWS_AS(algebra::project_i(ExtVector<Rational>(5, 1), 2, d), DomainError);
}

TEST_CASE("projections sum to the identity and the sup-norm splits") {
  auto rng = affsing::stats::make_rng(12, 0);
  for (int n = 2; n <= 4; ++n) {
    for (int d = 1; d < n; ++d) {
      Dims dims(n, d);
      for (int k = 1; k <= n + 1; ++k) {
        for (int rep = 0; rep < 10; ++rep) {
          auto v = tools::random_ext_vector(rng, n + 1, k, 6, 5);
          auto [lo, hi] = algebra::legal_band(dims, k);
          ExtVector<Rational> sum(n + 1, k);
          Rational largest = 0;
          for (int i = lo; i <= hi; ++i) {
            auto p = algebra::project_i(v, i, dims);
            sum = sum + p;
            if (p.sup_norm() > largest) largest = p.sup_norm();
          }
          REQUIRE(sum == v);
          REQUIRE(largest == v.sup_norm());
        }
      }
    }
  }
}

TEST_CASE("project_i commutes with the block group and pi_fix is fixed by it") {
  auto rng = affsing::stats::make_rng(13, 0);
  for (int n = 2; n <= 4; ++n) {
    for (int d = 1; d < n; ++d) {
      Dims dims(n, d);
      for (int rep = 0; rep < 15; ++rep) {
        Matrix h = oracle::random_block_element(rng, dims);
        REQUIRE(h.determinant_exact() == 1);
        int k = static_cast<int>(tools::uniform_int(rng, 1, n));
        auto v = tools::random_ext_vector(rng, n + 1, k, 4, 3);
        auto hv = algebra::act_exterior(h, v);
        auto [lo, hi] = algebra::legal_band(dims, k);
        for (int i = lo; i <= hi; ++i) {
          REQUIRE(algebra::project_i(hv, i, dims) == algebra::act_exterior(h, algebra::project_i(v, i, dims)));
        }
        auto fix = algebra::project_fix(v, dims);
        REQUIRE(algebra::act_exterior(h, fix) == fix);
      }
    }
  }
}

TEST_CASE("plus/minus split of Lambda^i(V_0^perp)") {
  Dims d(3, 2);
  auto w = algebra::basis_vector<Rational>(4, mask_of({0, 2})) + algebra::basis_vector<Rational>(4, mask_of({1, 2}));
  auto pm = algebra::project_pm(w, d);
  CHECK(pm.plus == algebra::basis_vector<Rational>(4, mask_of({0, 2})));
  CHECK(pm.minus == algebra::basis_vector<Rational>(4, mask_of({1, 2})));
  CHECK_THROWS_AS(algebra::project_pm(algebra::basis_vector<Rational>(4, mask_of({0, 3})), d), DomainError);
}

TEST_CASE("flow rates") {
  Dims d(2, 1);
  auto str = [](const std::vector<Rational>& r) {
    std::string s;
    for (const auto& x : r) s += x.get_str() + " ";
    return s;
  };
  CHECK(str(algebra::flow_rates(FlowKind::G, d)) == "2/3 -1/3 -1/3 ");
  CHECK(str(algebra::flow_rates(FlowKind::B, d)) == "1/6 1/6 -1/3 ");
  CHECK(str(algebra::flow_rates(FlowKind::C, d)) == "1/2 -1/2 0 ");
  for (int n = 2; n <= 6; ++n) {
    for (int dd = 1; dd < n; ++dd) {
      for (auto kind : {FlowKind::G, FlowKind::B, FlowKind::C}) {
        Rational sum = 0;
        for (const auto& r : algebra::flow_rates(kind, Dims(n, dd))) sum += r;
        CHECK(sum == 0);
      }
    }
  }
}

TEST_CASE("g_t = b_t c_t exactly for random t") {
  auto rng = affsing::stats::make_rng(14, 0);
  for (int rep = 0; rep < 100; ++rep) {
    double t = 40 * affsing::stats::centered_uniform(rng);
    int n = static_cast<int>(tools::uniform_int(rng, 2, 5));
    Dims dims(n, static_cast<int>(tools::uniform_int(rng, 1, n - 1)));
    auto g = algebra::flow_element(FlowKind::G, t, dims);
    auto bc = algebra::flow_element(FlowKind::B, t, dims) * algebra::flow_element(FlowKind::C, t, dims);
    REQUIRE(g == bc);
    REQUIRE((g * bc.inverse()).is_identity());
  }
}

TEST_CASE("b_t scales each block by its rate") {
  auto rng = affsing::stats::make_rng(15, 0);
  CHECK(algebra::b_block_rate(1, 1, Dims(2, 1)) == Rational(1, 6));
  CHECK(algebra::b_block_rate(0, 1, Dims(2, 1)) == Rational(-1, 3));
  for (int n = 2; n <= 4; ++n) {
    for (int d = 1; d < n; ++d) {
      Dims dims(n, d);
      const double t = 3.25;
      auto b = algebra::flow_element(FlowKind::B, t, dims);
      for (int k = 1; k <= n; ++k) {
        auto [lo, hi] = algebra::legal_band(dims, k);
        for (int i = lo; i <= hi; ++i) {
          auto v = algebra::project_i(tools::random_ext_vector(rng, n + 1, k, 4, 3), i, dims);
          auto img = algebra::act_exterior(b, algebra::to_log(v));
          double rate = algebra::b_block_rate(i, k, dims).get_d();
          for (std::size_t p = 0; p < v.size(); ++p) {
            if (sgn(v[p]) == 0) continue;
            CHECK(img[p].sign == sgn(v[p]));
            CHECK(img[p].log_abs == doctest::Approx(std::log(std::fabs(v[p].get_d())) + rate * t).epsilon(1e-14));
          }
        }
      }
    }
  }
}

TEST_CASE("u(x) = z_A u(s) u_A") {
  auto rng = affsing::stats::make_rng(16, 0);
  for (int rep = 0; rep < 60; ++rep) {
    int n = static_cast<int>(tools::uniform_int(rng, 2, 4));
    int d = static_cast<int>(tools::uniform_int(rng, 1, n - 1));
    Dims dims(n, d);
    std::vector<Rational> s, A;
    for (int j = 0; j < d; ++j) s.push_back(tools::random_rational(rng, 2, 7));
    for (int j = 0; j < (d + 1) * (n - d); ++j) A.push_back(tools::random_rational(rng, 2, 7));
    auto x = algebra::affine_point(numbers(s), numbers(A), dims);
    REQUIRE(algebra::unipotent_x(x, dims) ==
            algebra::centralizer_zA(numbers(A), dims) * algebra::unipotent_s(numbers(s), dims) *
                algebra::unipotent_A(numbers(A), dims));
  }
}

TEST_CASE("matrix inverse and determinant") {
  auto rng = affsing::stats::make_rng(17, 0);
  for (int rep = 0; rep < 30; ++rep) {
    Dims dims(3, 2);
    Matrix h = oracle::random_block_element(rng, dims);
    CHECK(h * h.inverse() == Matrix::identity(4));
    CHECK(h.determinant_approx() == doctest::Approx(1.0));
  }
  CHECK(Matrix::from_rationals(2, {1, 2, 3, 4}).determinant_exact() == -2);
}

TEST_CASE("Plucker relations agree with the kernel-dimension test") {
  auto rng = affsing::stats::make_rng(18, 0);
  int decomposables = 0, others = 0;
  for (int rep = 0; rep < 300; ++rep) {
    int N = static_cast<int>(tools::uniform_int(rng, 4, 6));
    int k = static_cast<int>(tools::uniform_int(rng, 2, N - 2));
    oracle::QMatrix a, b;
    for (int j = 0; j < k; ++j) {
      a.push_back(tools::random_int_vector(rng, N, 2));
      b.push_back(tools::random_int_vector(rng, N, 2));
    }
    auto v = algebra::wedge(a);
    if (rep % 2) v = v + algebra::wedge(b);
    bool expected = oracle::decomposable(v);
    (expected ? decomposables : others)++;
    REQUIRE(algebra::plucker_check(v) == expected);
  }
  CHECK(decomposables > 0);
  CHECK(others > 0);

  ExtVector<Rational> bad(4, 2);
  bad.at(mask_of({0, 1})) = 1;
  bad.at(mask_of({2, 3})) = 1;
  CHECK_FALSE(algebra::plucker_check(bad));
  CHECK(algebra::plucker_check(tools::random_ext_vector(rng, 5, 1, 3, 3)));
}

TEST_CASE("decomposability is preserved by the group action") {
  auto rng = affsing::stats::make_rng(19, 0);
  for (int rep = 0; rep < 40; ++rep) {
    Dims dims(4, static_cast<int>(tools::uniform_int(rng, 1, 3)));
    oracle::QMatrix vs;
    for (int j = 0; j < 2; ++j) vs.push_back(tools::random_int_vector(rng, 5, 3));
    auto v = algebra::wedge(vs);
    Matrix h = oracle::random_block_element(rng, dims) * algebra::unipotent_x(numbers(tools::random_int_vector(rng, 4, 2)), dims);
    REQUIRE(algebra::plucker_check(algebra::act_exterior(h, v)));
  }
}

TEST_CASE("rank of the affine map") {
  Dims d(3, 2);
  for (auto J : {mask_of({1}), mask_of({2}), mask_of({1, 2})}) {
    auto r = algebra::affine_map_rank(algebra::basis_vector<Rational>(4, J), d);
    CHECK(r.hypothesis_holds);
    CHECK(r.rank == algebra::popcount(J));
  }
  auto fixed = algebra::affine_map_rank(algebra::basis_vector<Rational>(4, mask_of({0, 1})), d);
  CHECK_FALSE(fixed.hypothesis_holds);
  CHECK(fixed.rank == 0);

  auto rng = affsing::stats::make_rng(20, 0);
  for (int dd = 1; dd <= 3; ++dd) {
    Dims dims(dd + 1, dd);
    for (int i = 1; i <= dd; ++i) {
      for (int rep = 0; rep < 50; ++rep) {
        auto w = tools::random_perp_vector(rng, dims, i, 4);
        auto r = algebra::affine_map_rank(w, dims);
        if (r.hypothesis_holds) REQUIRE(r.rank >= i);
      }
    }
  }
}

TEST_CASE("rational rank against elimination oracle") {
  auto rng = affsing::stats::make_rng(21, 0);
  for (int rep = 0; rep < 100; ++rep) {
    int rows = static_cast<int>(tools::uniform_int(rng, 1, 5));
    oracle::QMatrix m;
    for (int r = 0; r < rows; ++r) m.push_back(tools::random_int_vector(rng, 4, 1));
    REQUIRE(algebra::rational_rank(m) == oracle::rank(m));
  }
}

TEST_CASE("log-magnitude reals follow double arithmetic") {
  auto rng = affsing::stats::make_rng(22, 0);
  for (int rep = 0; rep < 500; ++rep) {
    double a = 10 * affsing::stats::centered_uniform(rng);
    double b = 10 * affsing::stats::centered_uniform(rng);
    CHECK((LogReal::from_double(a) * LogReal::from_double(b)).to_double() == doctest::Approx(a * b).epsilon(1e-12));
    CHECK((LogReal::from_double(a) + LogReal::from_double(b)).to_double() ==
          doctest::Approx(a + b).epsilon(1e-9).scale(10));
  }
  CHECK((LogReal::from_double(2.5) + LogReal::from_double(-2.5)).is_zero());
  CHECK(LogReal::from_rational(Rational(0)).is_zero());
  CHECK(LogReal::from_double(-3).sign == -1);
}
