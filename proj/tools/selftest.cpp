// Example tables of every module, each row recomputed from scratch.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "affsing/algebra.hpp"
#include "affsing/singlab.hpp"
#include "runner.hpp"
#include "samplers.hpp"

namespace affsing::tools {

namespace {

using algebra::ExtVector;
using algebra::FlowKind;
using algebra::LogReal;
using algebra::Mask;
using algebra::mask_of;
using lattice::IntVector;
using lattice::LatticePoint;

constexpr double kInfinity = std::numeric_limits<double>::infinity();

bool nonincreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[i - 1]) return false;
  }
  return true;
}

class Table {
 public:
  void add(const std::string& module, const std::string& example, const std::string& expected,
           const std::string& observed, bool pass) {
    csv_.row({module, example, expected, observed, bool_str(pass)});
    ++total_;
    if (!pass) failed_.push_back(module + ": " + example);
  }
  const CsvTable& csv() const { return csv_; }
  int total() const { return total_; }
  const std::vector<std::string>& failed() const { return failed_; }

 private:
  CsvTable csv_{{"module", "example", "expected", "observed", "pass"}};
  int total_ = 0;
  std::vector<std::string> failed_;
};

std::vector<Rational> unit(int N, int j) {
  std::vector<Rational> v(static_cast<std::size_t>(N), Rational(0));
  v[static_cast<std::size_t>(j)] = 1;
  return v;
}

std::vector<Number> numbers(const std::vector<Rational>& q) { return {q.begin(), q.end()}; }

std::string ext_str(const ExtVector<Rational>& v) {
  std::string out;
  for (std::size_t p = 0; p < v.size(); ++p) {
    if (sgn(v[p]) == 0) continue;
    std::string c = v[p].get_str();
    std::string term = c == "1" ? "" : c == "-1" ? "-" : c + "*";
    if (!out.empty() && term.rfind('-', 0) != 0) out += "+";
    out += term + "e";
    for (int j : algebra::indices_of(v.mask(p))) out += std::to_string(j);
  }
  return out.empty() ? "0" : out;
}

std::string ratio(long long good, long long total) { return num(good) + "/" + num(total); }

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

/// Normalized primitive integer vector: content divided out, first nonzero positive.
std::vector<long long> normalized(std::vector<long long> c) {
  long long g = 0;
  for (long long x : c) g = std::gcd(g, x < 0 ? -x : x);
  if (g == 0) return c;
  for (auto& x : c) x /= g;
  for (long long x : c) {
    if (x != 0) {
      if (x < 0) {
        for (auto& y : c) y = -y;
      }
      break;
    }
  }
  return c;
}

std::vector<std::vector<long long>> small_vectors(int N) {
  std::vector<std::vector<long long>> out;
  int total = 1;
  for (int j = 0; j < N; ++j) total *= 3;
  for (int code = 0; code < total; ++code) {
    std::vector<long long> v(static_cast<std::size_t>(N));
    int cc = code;
    bool zero = true;
    for (auto& x : v) {
      x = cc % 3 - 1;
      cc /= 3;
      zero = zero && x == 0;
    }
    if (!zero) out.push_back(v);
  }
  return out;
}

// ---------------------------------------------------------------------------

void algebra_rows(Table& tab, const RunContext& ctx) {
  const std::string M = "algebra";
  {
    auto v = algebra::wedge<Rational>({unit(3, 1), unit(3, 2)});
    tab.add(M, "wedge(e1, e2)", "e12", ext_str(v), ext_str(v) == "e12");
  }
  {
    auto v = algebra::wedge<Rational>({unit(3, 1), unit(3, 1)});
    tab.add(M, "wedge(e1, e1)", "0", ext_str(v), v.is_zero());
  }
  {
    std::vector<Rational> a{1, 1, 0, 0}, b{0, 1, 1, 0};
    auto v = algebra::wedge<Rational>({a, b});
    ExtVector<Rational> minors(4, 2);
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) minors.at(mask_of({i, j})) = a[i] * b[j] - a[j] * b[i];
    }
    tab.add(M, "wedge((1,1,0,0), (0,1,1,0)) against 2x2 minors", ext_str(minors), ext_str(v), v == minors);
  }
  {
    Dims d(2, 1);
    auto e0 = algebra::basis_vector<Rational>(3, mask_of({0}));
    bool ok = algebra::project_i(e0, 1, d) == e0 && algebra::project_i(e0, 0, d).is_zero();
    tab.add(M, "(n,d,k)=(2,1,1): project_1(e0), project_0(e0)", "e0, 0",
            ext_str(algebra::project_i(e0, 1, d)) + ", " + ext_str(algebra::project_i(e0, 0, d)), ok);
  }
  {
    Dims d(2, 1);
    auto v = algebra::basis_vector<Rational>(3, mask_of({0, 2}));
    auto p = algebra::project_i(v, 1, d);
    tab.add(M, "(n,d,k)=(2,1,2): project_1(e0^e2)", "e02", ext_str(p), p == v);
  }
  {
    auto rng = stats::make_rng(ctx.seed, 101);
    long long good = 0, total = 0;
    for (int n = 2; n <= 4; ++n) {
      for (int d = 1; d < n; ++d) {
        Dims dims(n, d);
        for (int k = 1; k <= n; ++k) {
          for (int rep = 0; rep < 4; ++rep) {
            auto v = random_ext_vector(rng, n + 1, k, 5, 7);
            auto [lo, hi] = algebra::legal_band(dims, k);
            ExtVector<Rational> sum(n + 1, k);
            for (int i = lo; i <= hi; ++i) sum = sum + algebra::project_i(v, i, dims);
            good += sum == v ? 1 : 0;
            ++total;
          }
        }
      }
    }
    tab.add(M, "sum of project_i(v) = v, random rational v, n <= 4", ratio(total, total), ratio(good, total),
            good == total);
  }
  {
    Dims d(2, 1);
    auto v = algebra::basis_vector<Rational>(3, mask_of({0, 1}));
    auto pm = algebra::project_pm(v, d);
    tab.add(M, "project_pm(e0^e1)", "(e01, 0)", "(" + ext_str(pm.plus) + ", " + ext_str(pm.minus) + ")",
            pm.plus == v && pm.minus.is_zero());
  }
  {
    Dims d(3, 2);
    auto v = algebra::basis_vector<Rational>(4, mask_of({1, 2}));
    auto pm = algebra::project_pm(v, d);
    tab.add(M, "project_pm(e1^e2), d = 2", "(0, e12)", "(" + ext_str(pm.plus) + ", " + ext_str(pm.minus) + ")",
            pm.plus.is_zero() && pm.minus == v);
  }
  {
    auto rng = stats::make_rng(ctx.seed, 102);
    const double t = 1.7;
    double worst = 0;
    for (int d = 1; d <= 3; ++d) {
      Dims dims(d + 1, d);
      auto c = algebra::flow_element(FlowKind::C, t, dims);
      for (int i = 1; i <= d; ++i) {
        auto w = random_perp_vector(rng, dims, i, 5);
        auto img = algebra::act_exterior(c, algebra::to_log(w));
        auto src = algebra::to_log(w);
        for (std::size_t p = 0; p < w.size(); ++p) {
          if (src[p].is_zero()) continue;
          double rate = (w.mask(p) & 1u) ? static_cast<double>(d + 1 - i) / (d + 1) : -static_cast<double>(i) / (d + 1);
          worst = std::max(worst, std::fabs(img[p].log_abs - src[p].log_abs - rate * t));
          if (img[p].sign != src[p].sign) worst = kInfinity;
        }
      }
    }
    tab.add(M, "c_t scales plus by e^{(d+1-i)t/(d+1)} and minus by e^{-it/(d+1)}", "max log error <= 1e-12",
            num(worst), worst <= 1e-12);
  }
  {
    Dims d(2, 1);
    tab.add(M, "g_0", "identity", algebra::flow_element(FlowKind::G, 0.0, d).is_identity() ? "identity" : "other",
            algebra::flow_element(FlowKind::G, 0.0, d).is_identity());
  }
  {
    Dims d(2, 1);
    auto r = algebra::flow_rates(FlowKind::B, d);
    std::string obs = r[0].get_str() + ", " + r[1].get_str() + ", " + r[2].get_str();
    tab.add(M, "(n,d)=(2,1): b_t exponents", "1/6, 1/6, -1/3", obs, obs == "1/6, 1/6, -1/3");
  }
  {
    Dims d(2, 1);
    auto e = algebra::flow_element(FlowKind::G, 1.0, d) * algebra::flow_element(FlowKind::B, -1.0, d) *
             algebra::flow_element(FlowKind::C, -1.0, d);
    tab.add(M, "g_t b_{-t} c_{-t}, t = 1", "identity", e.is_identity() ? "identity" : "other", e.is_identity());
  }
  {
    Dims d(2, 1);
    bool ok = algebra::unipotent_s({Number(0)}, d) == algebra::Matrix::identity(3);
    tab.add(M, "u(0)", "identity", ok ? "identity" : "other", ok);
  }
  {
    auto rng = stats::make_rng(ctx.seed, 103);
    long long good = 0, total = 0;
    for (int n = 2; n <= 4; ++n) {
      for (int d = 1; d < n; ++d) {
        Dims dims(n, d);
        for (int rep = 0; rep < 5; ++rep) {
          std::vector<Rational> s, A;
          for (int j = 0; j < d; ++j) s.push_back(random_rational(rng, 2, 9));
          for (int j = 0; j < (d + 1) * (n - d); ++j) A.push_back(random_rational(rng, 2, 9));
          // x = (s, s~A) computed directly.
          std::vector<Rational> x = s;
          for (int c = 0; c < n - d; ++c) {
            Rational acc = A[static_cast<std::size_t>(c)];
            for (int r = 1; r <= d; ++r) acc += s[static_cast<std::size_t>(r - 1)] * A[static_cast<std::size_t>(r * (n - d) + c)];
            x.push_back(acc);
          }
          auto lhs = algebra::unipotent_x(numbers(x), dims);
          auto rhs = algebra::centralizer_zA(numbers(A), dims) * algebra::unipotent_s(numbers(s), dims) *
                     algebra::unipotent_A(numbers(A), dims);
          good += lhs == rhs && algebra::affine_point(numbers(s), numbers(A), dims) == numbers(x) ? 1 : 0;
          ++total;
        }
      }
    }
    tab.add(M, "u(x) = z_A u(s) u_A with x = (s, s~A), exact", ratio(total, total), ratio(good, total), good == total);
  }
  {
    auto rng = stats::make_rng(ctx.seed, 104);
    long long good = 0, total = 0;
    for (int n = 2; n <= 4; ++n) {
      for (int d = 1; d < n; ++d) {
        Dims dims(n, d);
        std::vector<Rational> A;
        for (int j = 0; j < (d + 1) * (n - d); ++j) A.push_back(random_rational(rng, 2, 9));
        auto z = algebra::centralizer_zA(numbers(A), dims);
        auto g = algebra::flow_rates(FlowKind::G, dims);
        bool ok = true;
        // (z g_t - g_t z)(r, c) = z(r, c) (e^{g_c t} - e^{g_r t})
        for (int r = 0; r <= n; ++r) {
          for (int c = 0; c <= n; ++c) {
            if (!z(r, c).is_zero() && g[static_cast<std::size_t>(r)] != g[static_cast<std::size_t>(c)]) ok = false;
          }
        }
        good += ok ? 1 : 0;
        ++total;
      }
    }
    tab.add(M, "z_A commutes with g_t", ratio(total, total), ratio(good, total), good == total);
  }
  {
    auto rng = stats::make_rng(ctx.seed, 105);
    const double t = 2.3;
    double worst = 0;
    for (int n = 2; n <= 4; ++n) {
      for (int d = 1; d < n; ++d) {
        Dims dims(n, d);
        auto b = algebra::flow_element(FlowKind::B, t, dims);
        for (int k = 1; k <= n; ++k) {
          auto [lo, hi] = algebra::legal_band(dims, k);
          for (int i = lo; i <= hi; ++i) {
            Rational expected = Rational(i, d + 1) - Rational(k, n + 1);
            expected.canonicalize();
            if (algebra::b_block_rate(i, k, dims) != expected) worst = kInfinity;
            auto v = algebra::to_log(algebra::project_i(random_ext_vector(rng, n + 1, k, 5, 7), i, dims));
            auto img = algebra::act_exterior(b, v);
            for (std::size_t p = 0; p < v.size(); ++p) {
              if (v[p].is_zero()) continue;
              worst = std::max(worst, std::fabs(img[p].log_abs - v[p].log_abs - expected.get_d() * t));
            }
          }
        }
      }
    }
    tab.add(M, "b_t acts on image(pi_i) as e^{(i/(d+1) - k/(n+1)) t}", "max log error <= 1e-12", num(worst),
            worst <= 1e-12);
  }
  {
    Rational r = algebra::b_block_rate(1, 1, Dims(2, 1));
    tab.add(M, "(n,d,k,i)=(2,1,1,1): b_t block exponent", "1/6", r.get_str(), r == Rational(1, 6));
  }
  {
    auto rng = stats::make_rng(ctx.seed, 106);
    auto v = random_ext_vector(rng, 4, 2, 5, 7);
    bool ok = algebra::act_exterior(algebra::Matrix::identity(4), v) == v;
    tab.add(M, "act_exterior(identity, v)", "v", ok ? "v" : "other", ok);
  }
  {
    auto rng = stats::make_rng(ctx.seed, 107);
    long long good = 0, total = 0;
    while (total < 200) {
      int N = static_cast<int>(uniform_int(rng, 3, 6));
      int k = static_cast<int>(uniform_int(rng, 1, N));
      std::vector<std::vector<Rational>> vs;
      for (int a = 0; a < k; ++a) vs.push_back(random_int_vector(rng, N, 4));
      auto w = algebra::wedge(vs);
      if (w.is_zero()) continue;
      good += algebra::plucker_check(w) ? 1 : 0;
      ++total;
    }
    tab.add(M, "plucker_check on wedges of independent integer vectors", ratio(total, total), ratio(good, total),
            good == total);
  }
  {
    ExtVector<Rational> v(4, 2);
    v.at(mask_of({0, 1})) = 1;
    v.at(mask_of({2, 3})) = 1;
    auto C = [&](int i, int j) { return v.at(mask_of({i, j})); };
    Rational relation = C(0, 1) * C(2, 3) - C(0, 2) * C(1, 3) + C(0, 3) * C(1, 2);
    long long hits = 0;
    auto small = small_vectors(4);
    for (const auto& a : small) {
      for (const auto& b : small) {
        std::vector<Rational> ra, rb;
        for (long long x : a) ra.emplace_back(static_cast<signed long>(x));
        for (long long x : b) rb.emplace_back(static_cast<signed long>(x));
        hits += algebra::wedge<Rational>({ra, rb}) == v ? 1 : 0;
      }
    }
    bool check = algebra::plucker_check(v);
    tab.add(M, "plucker_check(e0^e1 + e2^e3)", "false; relation = 1; no small wedge equals it",
            bool_str(check) + "; relation = " + relation.get_str() + "; " + num(hits) + " small wedges",
            !check && relation == 1 && hits == 0);
  }
  {
    auto rng = stats::make_rng(ctx.seed, 108);
    long long good = 0;
    for (int j = 0; j < 50; ++j) good += algebra::plucker_check(random_ext_vector(rng, 5, 1, 5, 7)) ? 1 : 0;
    tab.add(M, "plucker_check in grade 1", "50/50", ratio(good, 50), good == 50);
  }
  {
    long long good = 0, total = 0;
    for (int d = 1; d <= 3; ++d) {
      Dims dims(d + 1, d);
      for (Mask J = 2; J <= dims.perp_mask(); J += 2) {
        int i = algebra::popcount(J);
        auto w = algebra::basis_vector<Rational>(dims.ambient(), J);
        auto r = algebra::affine_map_rank(w, dims);
        good += r.rank == i && r.hypothesis_holds ? 1 : 0;
        ++total;
      }
    }
    tab.add(M, "affine_map_rank(e_J), 0 not in J, |J| = i", "rank i for all " + num(total), ratio(good, total),
            good == total);
  }
  {
    auto r = algebra::affine_map_rank(algebra::basis_vector<Rational>(3, mask_of({0})), Dims(2, 1));
    tab.add(M, "affine_map_rank(e0): minus part zero", "rank 0, flagged",
            "rank " + num(r.rank) + (r.hypothesis_holds ? ", not flagged" : ", flagged"),
            r.rank == 0 && !r.hypothesis_holds);
  }
  {
    long long good = 0, total = 0;
    for (int d = 1; d <= 3; ++d) {
      Dims dims(d + 1, d);
      for (int i = 1; i <= d; ++i) {
        auto rng = stats::make_rng(ctx.seed, 110 + static_cast<std::uint64_t>(10 * d + i));
        long long tested = 0;
        while (tested < 500) {
          auto w = random_perp_vector(rng, dims, i, 5);
          auto r = algebra::affine_map_rank(w, dims);
          if (!r.hypothesis_holds) continue;
          ++tested;
          good += r.rank >= i ? 1 : 0;
        }
        total += tested;
      }
    }
    tab.add(M, "affine_map_rank >= i, 500 random w per (d,i), d <= 3", ratio(total, total), ratio(good, total),
            good == total);
  }
}

void lattice_rows(Table& tab, const RunContext& ctx) {
  const std::string M = "lattice";
  for (int n = 2; n <= 3; ++n) {
    Dims dims(n, 1);
    auto sv = lattice::enumerate_short_vectors(LatticePoint::standard(dims), 1.0);
    std::set<std::vector<long long>> got, want;
    for (const auto& s : sv) got.insert(normalized(s.w));
    for (const auto& v : small_vectors(n + 1)) want.insert(normalized(v));
    long long expected = (static_cast<long long>(std::pow(3, n + 1)) - 1) / 2;
    tab.add(M, "Z^" + std::to_string(n + 1) + ", radius 1: sign patterns up to sign", num(expected),
            num(static_cast<long long>(sv.size())), got == want && static_cast<long long>(sv.size()) == expected);
  }
  {
    Dims dims(2, 1);
    auto y = LatticePoint::standard(dims).flowed(FlowKind::G, 3.0);
    auto sv = lattice::enumerate_short_vectors(y, std::exp(-1.0) * (1 + 1e-9));
    std::set<std::vector<long long>> got;
    for (const auto& s : sv) got.insert(normalized(s.w));
    bool ok = got.count({0, 1, 0}) && got.count({0, 0, 1});
    tab.add(M, "g_3 Z^3, radius e^{-1}: contains e1 and e2", "both", num(static_cast<long long>(sv.size())) + " vectors",
            ok);
  }
  {
    auto sv = lattice::enumerate_short_vectors(LatticePoint::standard(Dims(2, 1)), 0.5);
    tab.add(M, "Z^3, radius 0.5 below the first minimum", "empty", num(static_cast<long long>(sv.size())), sv.empty());
  }
  {
    double worst = 0;
    for (int n = 2; n <= 4; ++n) worst = std::max(worst, std::fabs(lattice::systole(LatticePoint::standard(Dims(n, 1))).log_value));
    tab.add(M, "systole(Z^{n+1}), n = 2..4", "1", num(std::exp(worst)), worst == 0);
  }
  {
    auto y = LatticePoint::from_x({Number(0), Number(0)}, Dims(2, 1)).flowed(FlowKind::G, 3.0);
    double lv = lattice::systole(y).log_value;
    tab.add(M, "systole(g_3 u(0) Z^3)", "e^-1 (log -1 within 1e-10)", "log " + num(lv), near(lv, -1.0, 1e-10));
  }
  {
    auto rng = stats::make_rng(ctx.seed, 201);
    Dims dims(2, 1);
    long long good = 0;
    for (int j = 0; j < 50; ++j) {
      auto A = random_real_A(rng, dims);
      double t = 10.0 * (stats::centered_uniform(rng) + 0.5);
      good += lattice::systole(LatticePoint::from_A(A.numbers(), dims).flowed(FlowKind::B, t)).log_value <= 1e-12 ? 1 : 0;
    }
    tab.add(M, "systole <= 1 on 50 random b_t y_A", "50/50", ratio(good, 50), good == 50);
  }
  {
    Dims dims(2, 1);
    auto y = LatticePoint::standard(dims);
    auto dec = lattice::enumerate_decomposables(y, 1, 1.0);
    std::set<std::vector<long long>> got, want;
    for (const auto& v : dec) {
      std::vector<long long> c;
      for (const auto& x : v.coords) c.push_back(x.get_si());
      got.insert(c);
    }
    for (const auto& v : small_vectors(3)) want.insert(normalized(v));
    tab.add(M, "Z^3, k = 1, cutoff 1: primitive sign-canonical vectors", num(static_cast<long long>(want.size())),
            num(static_cast<long long>(got.size())), got == want);
  }
  {
    Dims dims(2, 1);
    auto dec = lattice::enumerate_decomposables(LatticePoint::standard(dims), 2, 1.0);
    std::set<std::vector<long long>> got, want;
    for (const auto& v : dec) {
      std::vector<long long> c;
      for (const auto& x : v.coords) c.push_back(x.get_si());
      got.insert(c);
    }
    auto small = small_vectors(3);
    for (const auto& a : small) {
      for (const auto& b : small) {
        std::vector<long long> c{a[0] * b[1] - a[1] * b[0], a[0] * b[2] - a[2] * b[0], a[1] * b[2] - a[2] * b[1]};
        if (c == std::vector<long long>{0, 0, 0}) continue;
        c = normalized(c);
        if (std::max({std::llabs(c[0]), std::llabs(c[1]), std::llabs(c[2])}) <= 1) want.insert(c);
      }
    }
    tab.add(M, "Z^3, k = 2, cutoff 1 against wedges of short vectors", num(static_cast<long long>(want.size())),
            num(static_cast<long long>(got.size())), got == want);
  }
  {
    auto y = LatticePoint::standard(Dims(2, 1));
    std::size_t c1 = lattice::enumerate_decomposables(y, 1, 0.5).size();
    std::size_t c2 = lattice::enumerate_decomposables(y, 2, 0.5).size();
    tab.add(M, "Z^3, cutoff 0.5", "empty", num(static_cast<long long>(c1 + c2)), c1 + c2 == 0);
  }
  {
    auto c = lattice::minkowski_certificate({{1, 0, 0}, {0, 1, 0}}, LatticePoint::standard(Dims(2, 1)));
    tab.add(M, "standard Z^2 block", "lambda1 1, covol 1, ok",
            "lambda1 " + num(c.lambda1) + ", covol " + num(c.covol) + (c.ok ? ", ok" : ", not ok"),
            near(c.lambda1, 1, 1e-12) && near(c.covol, 1, 1e-12) && c.ok);
  }
  {
    auto c = lattice::minkowski_certificate({{0, 2, 0}, {0, 0, 1}}, LatticePoint::standard(Dims(2, 1)));
    tab.add(M, "generators (2 e1, e2)", "lambda1 1, covol 2, ok",
            "lambda1 " + num(c.lambda1) + ", covol " + num(c.covol) + (c.ok ? ", ok" : ", not ok"),
            near(c.lambda1, 1, 1e-12) && near(c.covol, 2, 1e-12) && c.ok);
  }
  {
    Dims dims(2, 1);
    auto rng = stats::make_rng(ctx.seed, 202);
    const auto yA = LatticePoint::from_A(singlab::default_affine_param(dims).numbers(), dims);
    long long good = 0;
    for (int j = 0; j < 200; ++j) {
      double t = 10.0 * (stats::centered_uniform(rng) + 0.5);
      std::vector<IntVector> gens;
      do {
        gens.assign(2, IntVector(3));
        for (auto& g : gens) {
          for (auto& c : g) c = uniform_int(rng, -3, 3);
        }
      } while (gens[0][0] * gens[1][1] - gens[0][1] * gens[1][0] == 0 && gens[0][0] * gens[1][2] - gens[0][2] * gens[1][0] == 0 &&
               gens[0][1] * gens[1][2] - gens[0][2] * gens[1][1] == 0);
      good += lattice::minkowski_certificate(gens, yA.flowed(FlowKind::B, t), ctx.enumeration()).ok ? 1 : 0;
    }
    tab.add(M, "200 random rank-2 sublattices of b_t u_A Z^3, t <= 10", "200/200", ratio(good, 200), good == 200);
  }
}

void height_rows(Table& tab, const RunContext& ctx) {
  const std::string M = "height";
  Dims dims(2, 1);
  {
    auto phi = height::phi_eps(algebra::basis_vector<Rational>(3, mask_of({0})), dims, 0.1);
    tab.add(M, "(n,d,k)=(2,1,1): phi(e0), eps = 0.1", "1e-4", num(phi.value()), near(phi.value(), 1e-4, 1e-16));
  }
  {
    auto phi = height::phi_eps(algebra::basis_vector<Rational>(3, mask_of({2})), dims, 0.1);
    tab.add(M, "phi(e2): fixed part too large", "0", num(phi.value()), phi.is_zero());
  }
  {
    ExtVector<LogReal> v(3, 1);
    v.at(mask_of({2})) = LogReal{1, -50.0};
    auto phi = height::phi_eps(v, dims, 0.1);
    tab.add(M, "phi(e^{-50} e2): all pi_i zero", "inf", phi.to_string(), phi.is_infinite());
  }
  height::HeightParams p = height::HeightParams::defaults(dims);
  p.epsilon = 0.1;
  p.theta = 0.4;
  {
    auto a = height::alpha(LatticePoint::standard(dims), p);
    // Grade 1: pi_fix = |c| for (a, b, c), so only c = 0 contributes eps^4.
    // Grade 2: pi_fix = |C01|, the others give eps^4 ||pi_1||^{-2} = eps^4.
    double expected_log = 4 * p.theta * std::log(p.epsilon);
    bool witness_ok = a.witness.has_value();
    tab.add(M, "alpha(Z^3), eps = 0.1, theta = 0.4", "(eps^4)^theta = " + num(std::exp(expected_log)),
            num(a.value.value()) + " (witness grade " + (witness_ok ? num(a.witness->k) : std::string("none")) + ")",
            near(a.value.log(), expected_log, 1e-12) && witness_ok);
  }
  {
    auto rng = stats::make_rng(ctx.seed, 301);
    double bound_log = -p.theta * dims.d * (dims.n + 1) * (dims.n + 1) / 4.0 * std::log(p.epsilon);
    double worst = -kInfinity;
    for (int j = 0; j < 10; ++j) {
      auto A = random_real_A(rng, dims);
      double t = 2.0 * (stats::centered_uniform(rng) + 0.5);
      auto a = height::alpha(LatticePoint::from_A(A.numbers(), dims).flowed(FlowKind::B, t), p);
      worst = std::max(worst, a.value.is_infinite() ? kInfinity : a.value.log());
    }
    tab.add(M, "compact part (b_t y_A, t <= 2): alpha <= eps^{-theta d (n+1)^2/4}", "<= " + num(std::exp(bound_log)),
            "max " + num(std::exp(worst)), worst <= bound_log);
  }
  {
    auto a = height::alpha(LatticePoint::standard(dims).flowed(FlowKind::B, 3.0), height::HeightParams::defaults(dims));
    tab.add(M, "b_3 Z^3, eps = 1: e2 has norm e^{-1} and no pi_1 part", "inf", a.value.to_string(),
            a.value.is_infinite());
  }
  {
    std::vector<double> samples(8001, 2.5);
    auto q = height::damped_trapezoid(samples, 0.05, 0.1);
    tab.add(M, "constant alpha 2.5, delta = 0.1, T_max = 400", "2.5/delta = 25", num(q.value),
            near(q.value, 25.0, 25.0 * 1e-4));
  }
  {
    auto A = dioph::AffineParam::from_strings(dims, {"1/2", "1/3"});
    auto r = height::alpha_tilde(LatticePoint::from_A(A.numbers(), dims), height::HeightParams::defaults(dims));
    tab.add(M, "alpha_tilde(y_A), A = (1/2, 1/3)", "inf at finite t",
            r.value.to_string() + " after " + num(r.evaluations) + " evaluations", r.value.is_infinite());
  }
  {
    auto A = singlab::default_affine_param(dims);
    auto y = LatticePoint::from_A(A.numbers(), dims);
    height::HeightParams hp = height::HeightParams::defaults(dims);
    auto coarse = height::alpha_tilde(y, hp, ctx.enumeration());
    hp.h /= 2;
    auto fine = height::alpha_tilde(y, hp, ctx.enumeration());
    double rel = std::fabs(fine.value.value() - coarse.value.value()) / fine.value.value();
    tab.add(M, "alpha_tilde(y_A), A = (sqrt(2)-1, sqrt(3)-1): h halved", "finite, change <= 2%",
            num(coarse.value.value()) + " -> " + num(fine.value.value()),
            !fine.value.is_infinite() && rel <= 0.02);
  }
  {
    std::vector<double> rhos;
    for (double T : {10.0, 20.0, 40.0, 80.0}) {
      std::vector<double> t, la, le;
      for (int j = 1; j <= 40; ++j) {
        t.push_back(T * j / 40);
        la.push_back(j < 10 ? 0.2 * j : 1.8);
        le.push_back(-kInfinity);
      }
      rhos.push_back(height::rho_from_samples(t, la, le, T).rho);
    }
    bool ok = rhos.back() < 0.05;
    for (std::size_t j = 1; j < rhos.size(); ++j) ok = ok && rhos[j] < rhos[j - 1];
    std::string obs;
    for (double r : rhos) obs += (obs.empty() ? "" : ", ") + num(r);
    tab.add(M, "eventually constant log alpha, T = 10..80", "rho decreasing to 0", obs, ok);
  }
  {
    auto A = dioph::AffineParam::from_strings(dims, {"1/2", "1/3"});
    auto r = height::rho_estimate(LatticePoint::from_A(A.numbers(), dims), height::HeightParams::defaults(dims), 40.0, 40);
    tab.add(M, "rho(y_A), A = (1/2, 1/3)", "inf", r.infinite ? "inf at t = " + num(r.first_infinite_t) : num(r.rho),
            r.infinite);
  }
  {
    auto A = singlab::default_affine_param(dims);
    auto hp = height::HeightParams::defaults(dims);
    auto r = height::rho_estimate(LatticePoint::from_A(A.numbers(), dims), hp, 40.0, 40, ctx.enumeration());
    auto om = dioph::omega_estimate(A, 100000);
    double bound = dioph::rho_bound(om.omega.value(), hp.theta, dims) + 0.05 * hp.theta;
    tab.add(M, "rho(y_A), A = (sqrt(2)-1, sqrt(3)-1), T = 40", "<= rho_bound(omega) + 0.05 theta = " + num(bound),
            num(r.rho), !r.infinite && r.rho <= bound);
  }
}

void dioph_rows(Table& tab, const RunContext& ctx) {
  const std::string M = "dioph";
  Dims dims(2, 1);
  {
    auto A = dioph::AffineParam::from_strings(dims, {"0", "0"});
    auto r = dioph::omega_estimate(A, 100);
    bool ok = r.omega.is_infinite() && r.exact_relation && r.exact_relation->first == IntVector{1} &&
              r.exact_relation->second == IntVector{0, 0};
    std::string obs = r.omega.to_string();
    if (r.exact_relation) obs += ", q = " + int_vec(r.exact_relation->first) + ", p = " + int_vec(r.exact_relation->second);
    tab.add(M, "A = 0", "inf, q = 1, p = 0 0", obs, ok);
  }
  {
    auto rng = stats::make_rng(ctx.seed, 401);
    double worst = kInfinity;
    for (int j = 0; j < 10; ++j) worst = std::min(worst, dioph::omega_estimate(random_real_A(rng, dims), 100000).omega.value());
    tab.add(M, "10 random real A, Q_max = 1e5", ">= " + num(dims.dirichlet_exponent() - 0.05), "min " + num(worst),
            worst >= dims.dirichlet_exponent() - 0.05);
  }
  {
    auto r = dioph::omega_estimate(singlab::default_affine_param(dims), 1000000);
    tab.add(M, "A = (sqrt(2)-1, sqrt(3)-1), Q_max = 1e6: record slope", "0.5 +- 0.05",
            num(r.record_slope) + " (upper-range max " + num(r.omega.value()) + ")", near(r.record_slope, 0.5, 0.05));
  }
  {
    auto A = dioph::AffineParam::from_strings(dims, {"1/2", "1/3"});
    double d0 = dioph::proj_distance(A, {3, 2, -6});
    double d1 = dioph::proj_distance(A, {2, 0, 1});
    tab.add(M, "A = (1/2, 1/3): v_Q orthogonal to W_A, v_Q in W_A", "0, 1", num(d0) + ", " + num(d1),
            near(d0, 0, 1e-15) && near(d1, 1, 1e-12));
  }
  {
    // Grid search over the unit circle of the plane W_A (n - d = 1 or 2, d = 1).
    auto rng = stats::make_rng(ctx.seed, 402);
    double worst = 0;
    bool in_range = true;
    for (int n = 2; n <= 3; ++n) {
      Dims dd(n, 1);
      for (int j = 0; j < 10; ++j) {
        auto A = random_real_A(rng, dd);
        IntVector v(static_cast<std::size_t>(n + 1));
        for (auto& c : v) c = uniform_int(rng, -6, 6);
        if (std::all_of(v.begin(), v.end(), [](long long c) { return c == 0; })) v[0] = 1;
        std::vector<long double> r0(static_cast<std::size_t>(n + 1), 0), r1(static_cast<std::size_t>(n + 1), 0);
        r0[0] = 1;
        r1[1] = 1;
        for (int c = 0; c < n - 1; ++c) {
          r0[static_cast<std::size_t>(2 + c)] = static_cast<long double>(A.at(0, c).value);
          r1[static_cast<std::size_t>(2 + c)] = static_cast<long double>(A.at(1, c).value);
        }
        auto dot = [](const std::vector<long double>& a, const std::vector<long double>& b) {
          long double s = 0;
          for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
          return s;
        };
        long double n0 = std::sqrt(dot(r0, r0));
        for (auto& x : r0) x /= n0;
        long double c01 = dot(r0, r1);
        for (std::size_t i = 0; i < r1.size(); ++i) r1[i] -= c01 * r0[i];
        long double n1 = std::sqrt(dot(r1, r1));
        for (auto& x : r1) x /= n1;
        std::vector<long double> vq(v.begin(), v.end());
        long double vn = std::sqrt(dot(vq, vq));
        auto f = [&](long double phi) { return std::fabs(std::cos(phi) * dot(r0, vq) + std::sin(phi) * dot(r1, vq)) / vn; };
        const long double pi = std::acos(-1.0L);
        long double best = 0, arg = 0;
        for (int g = 0; g < 20000; ++g) {
          long double phi = pi * g / 20000;
          if (f(phi) > best) best = f(phi), arg = phi;
        }
        long double lo = arg - pi / 20000, hi = arg + pi / 20000;
        for (int it = 0; it < 100; ++it) {
          long double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
          if (f(m1) < f(m2)) lo = m1; else hi = m2;
        }
        best = std::max(best, f((lo + hi) / 2));
        double got = dioph::proj_distance(A, v);
        in_range = in_range && got >= 0 && got <= 1;
        worst = std::max(worst, std::fabs(got - static_cast<double>(best)));
      }
    }
    tab.add(M, "random A and Q: distance against grid search over W_A", "in [0,1], error <= 1e-6", num(worst),
            in_range && worst <= 1e-6);
  }
  {
    auto A = dioph::AffineParam::from_strings(dims, {"0", "0"});
    auto g = dioph::omega_geometric(A, 10);
    tab.add(M, "omega_geometric, A = 0", "inf flag", g.infinite ? "inf" : num(g.omega), g.infinite);
  }
  {
    auto rng = stats::make_rng(ctx.seed, 403);
    double worst = 0, floor = kInfinity;
    const double Q = 1e5;
    for (int j = 0; j < 5; ++j) {
      auto A = random_algebraic_A(rng, dims);
      double est = dioph::omega_estimate(A, static_cast<long long>(Q)).omega.value();
      dioph::OmegaOptions go;
      go.lower_height = dioph::matched_height(A, std::sqrt(Q));
      double geo = dioph::omega_geometric(A, dioph::matched_height(A, Q), go).omega;
      worst = std::max(worst, std::fabs(geo - est));
      floor = std::min(floor, geo);
    }
    tab.add(M, "5 algebraic A, matched heights (Q_max = 1e5)", "|geometric - classical| <= 0.1", num(worst),
            worst <= 0.1);
    tab.add(M, "omega_geometric Dirichlet floor, same samples", ">= " + num(dims.dirichlet_exponent() - 0.1),
            "min " + num(floor), floor >= dims.dirichlet_exponent() - 0.1);
  }
  {
    bool ok = true;
    for (int n = 2; n <= 6; ++n) {
      for (int d = 1; d < n; ++d) {
        Dims dd(n, d);
        Rational want(d * d, d + 1);
        want.canonicalize();
        ok = ok && dioph::dim_bound_exact(dd.dirichlet_exponent_exact(), dd) == want;
      }
    }
    tab.add(M, "dim_bound at the Dirichlet exponent, n <= 6", "d^2/(d+1) exactly",
            dioph::dim_bound_exact(Rational(1, 2), dims).get_str() + " at (2,1)", ok);
  }
  {
    // Both case formulas at omega = n - 1 = 1 for (n, d) = (2, 1).
    Rational om(1), n(2), d(1), D(1, 2);
    Rational case1 = d * d / (d + 1) + n * d * (om - D) / ((1 + (d + 1) * om - (n - d)) * (n + 1));
    Rational case2 = d * d / (d + 1) + (om - D) / (n + 1);
    Rational got = dioph::dim_bound_exact(om, dims);
    tab.add(M, "(n,d)=(2,1), omega = 1 from both cases", "2/3", case1.get_str() + ", " + case2.get_str() + ", " + got.get_str(),
            case1 == Rational(2, 3) && case2 == Rational(2, 3) && got == Rational(2, 3));
  }
  {
    double a = dioph::dim_bound(ExtendedReal::from_value(2.0), dims);
    double b = dioph::dim_bound(ExtendedReal::from_value(7.5), dims);
    double c = dioph::dim_bound(ExtendedReal::infinity(), dims);
    tab.add(M, "omega >= n, including inf", "d = 1", num(a) + ", " + num(b) + ", " + num(c), a == 1 && b == 1 && c == 1);
  }
  {
    double r = dioph::rho_bound(0.5, 0.49, dims);
    tab.add(M, "rho_bound at the Dirichlet exponent", "0", num(r), r == 0);
  }
  auto rng = stats::make_rng(ctx.seed, 404);
  auto random_dims = [&]() {
    int n = static_cast<int>(uniform_int(rng, 2, 6));
    return Dims(n, static_cast<int>(uniform_int(rng, 1, n - 1)));
  };
  auto unit_draw = [&]() { return stats::centered_uniform(rng) + 0.5; };
  {
    long long good = 0;
    for (int j = 0; j < 1000; ++j) {
      Dims dd = random_dims();
      double theta = unit_draw() * dd.d / (dd.d + 1.0);
      double om = dd.dirichlet_exponent() + unit_draw() * (dd.n - dd.dirichlet_exponent());
      if (theta <= 0 || om >= dd.n) continue;
      good += dioph::rho_bound(om, theta, dd) < theta ? 1 : 0;
    }
    tab.add(M, "rho_bound < theta, 1000 random inputs", "1000/1000", ratio(good, 1000), good == 1000);
  }
  {
    double worst = 0;
    for (int j = 0; j < 1000; ++j) {
      Dims dd = random_dims();
      double theta = 0.01 + unit_draw() * (dd.d / (dd.d + 1.0) - 0.02);
      double om = dd.dirichlet_exponent() + unit_draw() * (dd.n - dd.dirichlet_exponent()) * 0.999;
      double r = dioph::rho_bound(om, theta, dd);
      worst = std::max(worst, std::fabs(dioph::omega_lower_from_rho(r, theta, dd) - om));
    }
    tab.add(M, "omega_lower_from_rho(rho_bound(omega)) = omega", "error <= 1e-9", num(worst), worst <= 1e-9);
  }
  {
    double r = dioph::omega_lower_from_rho(0.0, 0.49, dims);
    tab.add(M, "omega_lower_from_rho(0)", "0.5", num(r), r == 0.5);
  }
  {
    long long good = 0, total = 0;
    for (int j = 0; j < 1000; ++j) {
      Dims dd = random_dims();
      double theta = 0.01 + unit_draw() * (dd.d / (dd.d + 1.0) - 0.02);
      auto c = dioph::omega_lower_cases(unit_draw() * theta * 0.999, theta, dd);
      if (!c.case11 || !c.case2) continue;
      ++total;
      good += *c.case2 < *c.case11 ? 1 : 0;
    }
    tab.add(M, "case 2 < case 1.1 where both are defined", ratio(total, total), ratio(good, total),
            good == total && total > 0);
  }
  {
    double worst = 0;
    for (int j = 0; j < 1000; ++j) {
      Dims dd = random_dims();
      double theta = 0.01 + unit_draw() * (dd.d / (dd.d + 1.0) - 0.02);
      auto c = dioph::omega_lower_cases(dioph::crossover_rho(theta, dd), theta, dd);
      worst = std::max(worst, c.case2 ? std::fabs(*c.case2 - c.case12) : kInfinity);
    }
    tab.add(M, "crossover rho = (dn-1) theta/(d(n+1)): case 2 = case 1.2", "error <= 1e-12", num(worst),
            worst <= 1e-12);
  }
}

void singlab_rows(Table& tab, const RunContext& ctx) {
  const std::string M = "singlab";
  {
    auto p = singlab::dirichlet_profile({parse_scalar("0"), parse_scalar("0")}, {1, 10, 100});
    bool zero = std::all_of(p.eps_values.begin(), p.eps_values.end(), [](double e) { return e == 0; });
    tab.add(M, "x = 0", "eps = 0, singular-witnessed", singlab::to_string(p.verdict),
            zero && p.verdict == singlab::Verdict::SingularWitnessed);
  }
  {
    auto p = singlab::dirichlet_profile({parse_scalar("2/7"), parse_scalar("5/7")}, {1, 2, 10, 100});
    bool zero = std::all_of(p.eps_values.begin(), p.eps_values.end(), [](double e) { return e == 0; });
    tab.add(M, "x = (2/7, 5/7): relation q = (1, 1)", "eps = 0 for N >= 1",
            singlab::to_string(p.verdict) + (p.relation ? ", q = " + int_vec(*p.relation) : ""),
            zero && p.verdict == singlab::Verdict::SingularWitnessed);
  }
  {
    auto p = singlab::dirichlet_profile({parse_scalar("sqrt(2)-1"), parse_scalar("sqrt(3)-1")}, {10, 100, 1000, 10000});
    tab.add(M, "x = (sqrt(2)-1, sqrt(3)-1), N <= 1e4", "positive floor, nonsingular-suggested",
            "floor " + num(p.floor) + ", " + singlab::to_string(p.verdict),
            p.floor > 0 && p.verdict == singlab::Verdict::NonsingularSuggested);
  }
  {
    singlab::DivergenceOptions o;
    o.horizon = 60;
    o.enumeration = ctx.enumeration();
    std::vector<double> grid;
    for (int j = 0; j <= 60; ++j) grid.push_back(j);
    auto p = singlab::divergence_profile(std::vector<Number>{Rational(1, 3), Rational(1, 5)}, grid, o);
    bool ok = near(p.decay_slope, -1.0 / 3, 0.02) && p.fraction.back() <= 0.3 && p.fraction.back() < p.fraction[29];
    tab.add(M, "x = (1/3, 1/5)", "systole slope -1/3, fraction falling",
            "slope " + num(p.decay_slope) + ", fraction " + num(p.fraction[29]) + " -> " + num(p.fraction.back()), ok);
  }
  {
    auto rng = stats::make_rng(ctx.seed, 501);
    std::vector<std::vector<ParsedScalar>> xs;
    for (int j = 0; j < 50; ++j) {
      xs.push_back({parse_scalar(format_double(stats::centered_uniform(rng) + 0.5)),
                    parse_scalar(format_double(stats::centered_uniform(rng) + 0.5))});
    }
    auto r = singlab::dani_consistency(xs, 10, 200, 0.25, 4.0, ctx.enumeration());
    tab.add(M, "50 random x: Dirichlet floors against systole floors", "Spearman > 0.8", num(r.spearman),
            r.spearman > 0.8);
  }
  {
    std::vector<double> grid{3.0};
    auto p = singlab::divergence_profile(std::vector<Number>{Number(0), Number(0)}, grid);
    tab.add(M, "x = 0, t = 3", "systole e^-1", "log " + num(p.log_systole[0]), near(p.log_systole[0], -1.0, 1e-10));
  }
  Dims dims(2, 1);
  {
    singlab::EAOptions o;
    o.grid_resolution = 8;
    o.horizons = {30};
    o.enumeration = ctx.enumeration();
    auto s = singlab::sample_EA(dioph::AffineParam::from_strings(dims, {"1/2", "1/3"}), o);
    tab.add(M, "A = (1/2, 1/3), 8 cells, N = 30", "flagged fraction high", num(s.flagged_fraction[0]),
            s.flagged_fraction[0] >= 0.5);
    tab.add(M, "dim_estimate range, rational A", "[0, 1]", num(s.dim_estimate),
            s.dim_estimate >= 0 && s.dim_estimate <= dims.d);
  }
  {
    auto rng = stats::make_rng(ctx.seed, 502);
    singlab::EAOptions o;
    o.grid_resolution = 16;
    o.horizons = {10, 20, 40};
    o.enumeration = ctx.enumeration();
    auto s = singlab::sample_EA(random_real_A(rng, dims), o);
    std::string obs;
    for (double f : s.flagged_fraction) obs += (obs.empty() ? "" : ", ") + num(f);
    tab.add(M, "random A, N = 10, 20, 40", "flagged fraction nonincreasing", obs, nonincreasing(s.flagged_fraction));
    tab.add(M, "dim_estimate range, random A", "[0, 1]", num(s.dim_estimate),
            s.dim_estimate >= 0 && s.dim_estimate <= dims.d);
  }
  {
    singlab::ExcursionOptions o;
    o.samples = 100;
    o.pilot = 50;
    o.seed = ctx.seed;
    o.params = height::HeightParams::defaults(dims);
    o.enumeration = ctx.enumeration();
    auto s = singlab::excursion_stats(singlab::default_affine_param(dims), o);
    tab.add(M, "excursions, eta = 0", "measure <= 1", num(s.z_measure[0]), s.z_measure[0] <= 1);
    bool mono = nonincreasing(s.z_measure);
    for (std::size_t m = 1; m < s.M_grid.size(); ++m) {
      for (std::size_t e = 0; e < s.eta_grid.size(); ++e) mono = mono && s.z_measure_by_M[m][e] <= s.z_measure_by_M[m - 1][e];
    }
    tab.add(M, "excursion measure in eta and M", "nonincreasing", mono ? "nonincreasing" : "not monotone", mono);
    tab.add(M, "algebraic A, t = 2, N = 20, 100 samples: log-measure slope in eta", "negative",
            num(s.log_z_slope) + " (predicted " + num(s.predicted_exponent) + ")", s.log_z_slope < 0);
  }
  {
    ExtVector<double> v(2, 1);
    v.at(mask_of({0})) = 1.0;
    auto a = singlab::dplus_measure(v, 1.0, 1000, ctx.seed);
    auto b = singlab::dplus_measure(v, 0.5, 1000, ctx.seed);
    tab.add(M, "v = e0 (no minus part), r = 1 and r = 0.5", "1, 0", num(a.estimate) + ", " + num(b.estimate),
            a.estimate == 1 && b.estimate == 0);
  }
  {
    std::string obs;
    bool ok = true;
    for (auto [d, i] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {2, 2}}) {
      auto rng = stats::make_rng(ctx.seed, 510 + static_cast<std::uint64_t>(10 * d + i));
      auto v = singlab::random_dplus_vector(d, i, rng);
      auto sw = singlab::dplus_sweep(v, {0.02, 0.04, 0.08, 0.16}, 20000, ctx.seed);
      ok = ok && sw.slope >= i - 0.2;
      obs += (obs.empty() ? "" : ", ") + num(sw.slope);
    }
    tab.add(M, "r-sweep slopes for (d,i) = (1,1), (2,1), (2,2)", ">= i - 0.2", obs, ok);
  }
  {
    singlab::ContractionSpec spec;
    spec.samples = 1000;
    spec.enumeration = ctx.enumeration();
    auto rep = singlab::contraction_report(dims, height::HeightParams::defaults(dims), spec, ctx.seed);
    for (const auto& c : rep.checks) {
      if (c.name == "alpha-contraction") continue;  // no example row; covered by verify
      tab.add(M, c.name + ", 1000 samples", "slope " + num(c.target_slope) + " within 10%", num(c.median_slope), c.pass);
    }
  }
}

void cli_rows(Table& tab, const RunContext& ctx) {
  const std::string M = "cli";
  auto sub = [&](const std::string& dir, std::vector<std::pair<std::string, std::string>> kv) {
    config::Config c;
    for (const auto& [k, v] : kv) c.set(k, v);
    c.set("out", (std::filesystem::path(ctx.out) / dir).string());
    c.set("seed", std::to_string(ctx.seed));
    return make_context(c);
  };
  {
    auto c = sub("cli_bound", {{"n", "2"}, {"d", "1"}});
    run_command("bound", c);
    std::ifstream f(std::filesystem::path(c.out) / "bound.csv", std::ios::binary);
    std::string header, row;
    std::getline(f, header);
    std::getline(f, row);
    tab.add(M, "bound, n = 2, d = 1: first row", "omega 0.5 -> 0.5", row.substr(0, row.find('\r')),
            row.rfind("0.5,0.5,", 0) == 0 && header.rfind("omega,dim_bound", 0) == 0);
  }
  {
    auto c = sub("cli_omega", {{"n", "2"}, {"d", "1"}, {"A", "1/2, 1/3"}, {"Q_max", "1000"}});
    auto r = run_command("omega", c);
    const auto& res = r.summary["results"];
    bool ok = res["omega"] == "inf" && res.contains("witness");
    tab.add(M, "omega on rational A", "\"omega\": \"inf\" with witness", res["omega"].dump() + (res.contains("witness") ? " with witness" : ""), ok);
  }
  {
    auto c = sub("cli_verify", {{"contraction_samples", "100"}, {"dplus_samples", "2000"}, {"rank_samples", "20"},
                                {"plucker_samples", "50"}, {"minkowski_samples", "10"}});
    auto r = run_command("verify", c);
    const auto& res = r.summary["results"];
    std::set<std::string> names;
    for (const auto& ch : res["contraction"]) names.insert(ch["name"].get<std::string>());
    bool ok = names.size() == 4 && res["dplus"].size() == 3 && res["affine_rank"].size() == 6 && res.contains("plucker") &&
              res.contains("minkowski");
    tab.add(M, "verify covers every suite", "4 contraction checks, small-set, rank, Plucker, Minkowski",
            num(static_cast<long long>(names.size())) + " contraction checks, " +
                num(static_cast<long long>(res["dplus"].size())) + " small-set, " +
                num(static_cast<long long>(res["affine_rank"].size())) + " rank",
            ok);
  }
}

}  // namespace

RunResult run_selftest(const RunContext& ctx, ArtifactWriter& writer) {
  Table tab;
  algebra_rows(tab, ctx);
  lattice_rows(tab, ctx);
  height_rows(tab, ctx);
  dioph_rows(tab, ctx);
  singlab_rows(tab, ctx);
  cli_rows(tab, ctx);
  writer.csv("selftest.csv", tab.csv(), "example tables of every module");
  RunResult r;
  r.passed = tab.failed().empty();
  r.summary = Json{{"rows", tab.total()}, {"failed", tab.failed()}, {"all_pass", r.passed}};
  return r;
}

}  // namespace affsing::tools
