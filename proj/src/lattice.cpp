#include "affsing/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "reduction.hpp"

namespace affsing::lattice {

using algebra::basis;
using algebra::indices_of;
using algebra::Mask;

namespace {

/// E^{-1} M E. Entries stay exact when the two coordinates carry identical
/// exact rates, otherwise they become extended-precision reals.
Matrix conjugate_by(const Matrix& M, const DiagonalElement& E) {
  if (E.is_identity()) return M;
  const int N = M.size();
  std::vector<long double> logs = E.log_entries();
  Matrix out = M;
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      if (i == j || M(i, j).is_zero()) continue;
      bool same = true;
      for (const auto& [t, rates] : E.terms()) {
        if (rates[static_cast<std::size_t>(i)] != rates[static_cast<std::size_t>(j)]) {
          same = false;
          break;
        }
      }
      if (same) continue;
      long double f = std::exp(logs[static_cast<std::size_t>(j)] - logs[static_cast<std::size_t>(i)]);
      out(i, j) = Number::real(M(i, j).approx() * static_cast<Real>(f));
    }
  }
  return out;
}

void check_unimodular(const Matrix& m) {
  if (m.is_exact()) {
    if (m.determinant_exact() != 1) throw DomainError("matrix factor must have determinant 1");
  } else if (std::fabs(m.determinant_approx() - 1.0L) > 1e-15L) {
    throw DomainError("matrix factor must have determinant 1");
  }
}

}  // namespace

FlowWord::FlowWord(const Dims& dims)
    : dims_(dims), diag_(dims.ambient()), mat_(Matrix::identity(dims.ambient())) {}

FlowWord& FlowWord::diagonal(const DiagonalElement& e, const std::string& label) {
  if (e.dim() != dims_.ambient()) throw DomainError("FlowWord: diagonal factor of wrong size");
  mat_ = conjugate_by(mat_, e);
  diag_ = diag_ * e;
  labels_.push_back(label);
  return *this;
}

FlowWord& FlowWord::flow(FlowKind kind, double t) {
  const char* name = kind == FlowKind::G ? "g" : (kind == FlowKind::B ? "b" : "c");
  return diagonal(algebra::flow_element(kind, t, dims_), std::string(name) + "(" + format_double(t) + ")");
}

FlowWord& FlowWord::matrix(const Matrix& m, const std::string& label) {
  if (m.size() != dims_.ambient()) throw DomainError("FlowWord: matrix factor of wrong size");
  if (!m.is_upper_unitriangular()) check_unimodular(m);
  mat_ = mat_ * m;
  labels_.push_back(label);
  return *this;
}

FlowWord& FlowWord::unipotent_s(const std::vector<Number>& s) { return matrix(algebra::unipotent_s(s, dims_), "u_s"); }
FlowWord& FlowWord::unipotent_x(const std::vector<Number>& x) { return matrix(algebra::unipotent_x(x, dims_), "u_x"); }
FlowWord& FlowWord::unipotent_A(const std::vector<Number>& A) { return matrix(algebra::unipotent_A(A, dims_), "u_A"); }
FlowWord& FlowWord::centralizer(const std::vector<Number>& A) { return matrix(algebra::centralizer_zA(A, dims_), "z_A"); }

FlowWord FlowWord::operator*(const FlowWord& right) const {
  if (!(dims_ == right.dims_)) throw DomainError("FlowWord *: dims mismatch");
  FlowWord out = *this;
  out.mat_ = conjugate_by(mat_, right.diag_) * right.mat_;
  out.diag_ = diag_ * right.diag_;
  out.labels_.insert(out.labels_.end(), right.labels_.begin(), right.labels_.end());
  return out;
}

std::vector<LogReal> FlowWord::evaluate(const IntVector& w) const {
  const int N = dims_.ambient();
  if (static_cast<int>(w.size()) != N) throw DomainError("FlowWord::evaluate: vector length mismatch");
  std::vector<long double> logs = diag_.log_entries();
  std::vector<LogReal> out(static_cast<std::size_t>(N));
  bool exact = mat_.is_exact();
  for (int i = 0; i < N; ++i) {
    LogReal v;
    if (exact) {
      Rational s = 0;
      for (int j = 0; j < N; ++j) s += mat_(i, j).exact() * Rational(static_cast<signed long>(w[static_cast<std::size_t>(j)]));
      v = LogReal::from_rational(s);
    } else {
      Real s = 0;
      for (int j = 0; j < N; ++j) s += mat_(i, j).approx() * static_cast<Real>(w[static_cast<std::size_t>(j)]);
      v = LogReal::from_real(s);
    }
    out[static_cast<std::size_t>(i)] = v.scaled_by_exp(static_cast<double>(logs[static_cast<std::size_t>(i)]));
  }
  return out;
}

LatticePoint LatticePoint::from_A(const std::vector<Number>& A, const Dims& dims) {
  FlowWord w(dims);
  w.unipotent_A(A);
  return LatticePoint(std::move(w));
}

LatticePoint LatticePoint::from_x(const std::vector<Number>& x, const Dims& dims) {
  FlowWord w(dims);
  w.unipotent_x(x);
  return LatticePoint(std::move(w));
}

LatticePoint LatticePoint::flowed(FlowKind kind, double t) const {
  FlowWord h(dims());
  h.flow(kind, t);
  return acted(h);
}

namespace detail {

ScaledBasis exterior_basis(const FlowWord& word, int k) {
  const int N = word.dims().ambient();
  const auto& bk = basis(N, k);
  const int m = static_cast<int>(bk.size());
  const Matrix& M = word.matrix();
  std::vector<long double> logs = word.log_scales();
  ScaledBasis out;
  out.rows = m;
  out.cols = m;
  out.log_scale.resize(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r) {
    long double s = 0;
    for (int j : indices_of(bk.mask(static_cast<std::size_t>(r)))) s += logs[static_cast<std::size_t>(j)];
    out.log_scale[static_cast<std::size_t>(r)] = s;
  }
  out.real.resize(static_cast<std::size_t>(m * m));
  const bool exact = M.is_exact();
  if (k == 1) {
    if (exact) out.exact.emplace(static_cast<std::size_t>(m * m));
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) {
        out.real[static_cast<std::size_t>(i * N + j)] = M(i, j).approx();
        if (exact) (*out.exact)[static_cast<std::size_t>(i * N + j)] = M(i, j).exact();
      }
    }
    return out;
  }
  if (exact) out.exact.emplace(static_cast<std::size_t>(m * m));
  for (int r = 0; r < m; ++r) {
    std::vector<int> I = indices_of(bk.mask(static_cast<std::size_t>(r)));
    for (int c = 0; c < m; ++c) {
      std::vector<int> J = indices_of(bk.mask(static_cast<std::size_t>(c)));
      if (exact) {
        std::vector<Rational> sub(static_cast<std::size_t>(k * k));
        for (int a = 0; a < k; ++a) {
          for (int b = 0; b < k; ++b) sub[static_cast<std::size_t>(a * k + b)] = M(I[static_cast<std::size_t>(a)], J[static_cast<std::size_t>(b)]).exact();
        }
        Rational det = det_exact(std::move(sub), k);
        out.real[static_cast<std::size_t>(r * m + c)] = Number(det).approx();
        (*out.exact)[static_cast<std::size_t>(r * m + c)] = det;
      } else {
        std::vector<Real> sub(static_cast<std::size_t>(k * k));
        for (int a = 0; a < k; ++a) {
          for (int b = 0; b < k; ++b) sub[static_cast<std::size_t>(a * k + b)] = M(I[static_cast<std::size_t>(a)], J[static_cast<std::size_t>(b)]).approx();
        }
        out.real[static_cast<std::size_t>(r * m + c)] = det_real(std::move(sub), k);
      }
    }
  }
  return out;
}

}  // namespace detail

std::vector<ShortVector> enumerate_short_vectors(const LatticePoint& y, double radius, const EnumOptions& opt) {
  if (!(radius > 0)) throw DomainError("enumerate_short_vectors: radius must be > 0");
  detail::Enumerator e(detail::exterior_basis(y.word, 1), opt.node_budget);
  std::vector<ShortVector> out;
  for (auto& f : e.enumerate(std::log(radius))) out.push_back(ShortVector{std::move(f.coeffs), std::move(f.value), f.log_norm});
  return out;
}

SystoleResult systole(const LatticePoint& y, const EnumOptions& opt) {
  detail::Enumerator e(detail::exterior_basis(y.word, 1), opt.node_budget);
  auto found = e.enumerate(e.reduced_bound_log());
  if (found.empty()) throw PrecisionError("systole: reduced basis bound produced no vector");
  return SystoleResult{found.front().log_norm, found.front().coeffs};
}

ExtVector<Rational> IntegralDecomposable::v() const {
  ExtVector<Rational> out(image.dim(), k);
  for (std::size_t p = 0; p < coords.size(); ++p) out[p] = Rational(coords[p]);
  return out;
}

double IntegralDecomposable::log_norm() const {
  double lg = -std::numeric_limits<double>::infinity();
  for (const auto& c : image.coeffs()) lg = std::max(lg, c.log_abs);
  return lg;
}

int normalize_coords(std::vector<Integer>& coords) {
  Integer g = 0;
  for (const auto& c : coords) g = gcd(g, c);
  if (g == 0) throw DomainError("normalize_coords: zero vector");
  int sign = 1;
  for (const auto& c : coords) {
    if (sgn(c) != 0) {
      sign = sgn(c);
      break;
    }
  }
  for (auto& c : coords) {
    c /= g;
    if (sign < 0) c = -c;
  }
  return sign;
}

namespace {

/// Columns of a unimodular U with A U = [H | 0]; the trailing columns span
/// the integer kernel of A.
std::vector<std::vector<Integer>> integer_kernel(std::vector<std::vector<Integer>> A, int cols) {
  std::vector<std::vector<Integer>> U(static_cast<std::size_t>(cols), std::vector<Integer>(static_cast<std::size_t>(cols), 0));
  for (int i = 0; i < cols; ++i) U[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;  // U[col][row]
  auto col_axpy = [&](int dst, int src, const Integer& q) {  // col_dst -= q col_src
    for (auto& row : A) row[static_cast<std::size_t>(dst)] -= q * row[static_cast<std::size_t>(src)];
    for (int r = 0; r < cols; ++r) U[static_cast<std::size_t>(dst)][static_cast<std::size_t>(r)] -= q * U[static_cast<std::size_t>(src)][static_cast<std::size_t>(r)];
  };
  auto col_swap = [&](int a, int b) {
    for (auto& row : A) std::swap(row[static_cast<std::size_t>(a)], row[static_cast<std::size_t>(b)]);
    std::swap(U[static_cast<std::size_t>(a)], U[static_cast<std::size_t>(b)]);
  };
  int p = 0;
  for (auto& row : A) {
    if (p >= cols) break;
    for (int j = p + 1; j < cols; ++j) {
      while (sgn(row[static_cast<std::size_t>(j)]) != 0) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), row[static_cast<std::size_t>(p)].get_mpz_t(), row[static_cast<std::size_t>(j)].get_mpz_t());
        col_axpy(p, j, q);
        col_swap(p, j);
      }
    }
    if (sgn(row[static_cast<std::size_t>(p)]) != 0) ++p;
  }
  return std::vector<std::vector<Integer>>(U.begin() + p, U.end());
}

}  // namespace

std::vector<IntVector> generators_of(const std::vector<Integer>& coords, int dim, int grade) {
  const auto& bk = basis(dim, grade);
  if (coords.size() != bk.size()) throw DomainError("generators_of: coefficient count mismatch");
  std::vector<std::vector<Integer>> A;
  if (grade < dim) {
    const auto& up = basis(dim, grade + 1);
    for (Mask K : up.masks()) {
      std::vector<Integer> row(static_cast<std::size_t>(dim), 0);
      bool any = false;
      for (int j : indices_of(K)) {
        Mask rest = K & ~(Mask{1} << j);
        const Integer& c = coords[static_cast<std::size_t>(bk.position(rest))];
        if (sgn(c) == 0) continue;
        row[static_cast<std::size_t>(j)] = algebra::insertion_sign(rest, j) * c;
        any = true;
      }
      if (any) A.push_back(std::move(row));
    }
  }
  auto ker = integer_kernel(std::move(A), dim);
  if (static_cast<int>(ker.size()) != grade) throw DomainError("generators_of: coordinates are not decomposable");
  std::vector<IntVector> gens;
  for (const auto& col : ker) {
    IntVector g;
    for (const auto& x : col) {
      if (!x.fits_slong_p()) throw PrecisionError("generators_of: generator entries overflow 64 bits");
      g.push_back(x.get_si());
    }
    gens.push_back(std::move(g));
  }
  // Fix orientation so that the wedge reproduces the coordinates.
  std::vector<std::vector<Rational>> vecs;
  for (const auto& g : gens) {
    std::vector<Rational> v;
    for (long long x : g) v.emplace_back(static_cast<signed long>(x));
    vecs.push_back(std::move(v));
  }
  ExtVector<Rational> w = algebra::wedge(vecs);
  for (std::size_t p = 0; p < coords.size(); ++p) {
    if (sgn(coords[p]) == 0) continue;
    if (w[p] != Rational(coords[p])) {
      if (w[p] == Rational(-coords[p])) {
        for (auto& x : gens.front()) x = -x;
      } else {
        throw DomainError("generators_of: coordinates are not primitive");
      }
    }
    break;
  }
  return gens;
}

std::vector<IntegralDecomposable> enumerate_decomposables(const LatticePoint& y, int k, double cutoff,
                                                          const EnumOptions& opt) {
  const Dims& dims = y.dims();
  if (k < 1 || k > dims.n) throw DomainError("enumerate_decomposables: need 1 <= k <= n");
  if (!(cutoff > 0)) throw DomainError("enumerate_decomposables: cutoff must be > 0");
  const int N = dims.ambient();
  detail::Enumerator e(detail::exterior_basis(y.word, k), opt.node_budget);
  std::vector<IntegralDecomposable> out;
  for (auto& f : e.enumerate(std::log(cutoff))) {
    long long g = 0;
    for (long long c : f.coeffs) g = std::gcd(g, c < 0 ? -c : c);
    if (g != 1) continue;
    std::vector<Integer> coords;
    for (long long c : f.coeffs) coords.emplace_back(static_cast<signed long>(c));
    if (!algebra::plucker_check(coords, N, k)) continue;
    IntegralDecomposable dv;
    dv.k = k;
    dv.coords = std::move(coords);
    dv.image = ExtVector<LogReal>(N, k);
    for (std::size_t p = 0; p < f.value.size(); ++p) dv.image[p] = f.value[p];
    if (opt.with_generators) dv.generators = generators_of(dv.coords, N, k);
    out.push_back(std::move(dv));
  }
  return out;
}

MinkowskiCertificate minkowski_certificate(const std::vector<IntVector>& generators, const LatticePoint& y,
                                           const EnumOptions& opt) {
  const int N = y.dims().ambient();
  const int k = static_cast<int>(generators.size());
  if (k < 1 || k > N) throw DomainError("minkowski_certificate: need 1 <= k <= n+1 generators");
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != N) throw DomainError("minkowski_certificate: generator length mismatch");
  }
  const Matrix& M = y.word.matrix();
  const bool exact = M.is_exact();
  detail::ScaledBasis b;
  b.rows = N;
  b.cols = k;
  for (long double l : y.word.log_scales()) b.log_scale.push_back(l);
  b.real.resize(static_cast<std::size_t>(N * k));
  if (exact) b.exact.emplace(static_cast<std::size_t>(N * k));
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < k; ++j) {
      if (exact) {
        Rational s = 0;
        for (int l = 0; l < N; ++l) s += M(i, l).exact() * Rational(static_cast<signed long>(generators[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)]));
        (*b.exact)[static_cast<std::size_t>(i * k + j)] = s;
        b.real[static_cast<std::size_t>(i * k + j)] = Number(s).approx();
      } else {
        Real s = 0;
        for (int l = 0; l < N; ++l) s += M(i, l).approx() * static_cast<Real>(generators[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)]);
        b.real[static_cast<std::size_t>(i * k + j)] = s;
      }
    }
  }
  long double log_cov = detail::log_covolume(b);
  detail::Enumerator e(b, opt.node_budget);
  auto found = e.enumerate(e.reduced_bound_log());
  if (found.empty()) throw PrecisionError("minkowski_certificate: reduced basis bound produced no vector");
  MinkowskiCertificate out;
  out.lambda1 = std::exp(found.front().log_norm);
  out.covol = static_cast<double>(std::exp(log_cov));
  out.ok = found.front().log_norm <= static_cast<double>(log_cov) / k + 1e-12;
  out.witness = found.front().coeffs;
  return out;
}

}  // namespace affsing::lattice
