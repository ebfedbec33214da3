#include "affsing/algebra.hpp"

#include <array>
#include <memory>
#include <mutex>

namespace affsing::algebra {

std::vector<int> indices_of(Mask m) {
  std::vector<int> out;
  while (m) {
    int j = std::countr_zero(m);
    out.push_back(j);
    m &= m - 1;
  }
  return out;
}

Mask mask_of(const std::vector<int>& indices) {
  Mask m = 0;
  int prev = -1;
  for (int j : indices) {
    if (j <= prev || j < 0 || j > 31) throw DomainError("multi-index must be strictly increasing");
    m |= Mask{1} << j;
    prev = j;
  }
  return m;
}

namespace {

void combos(int dim, int grade, int start, Mask acc, std::vector<Mask>& out) {
  if (grade == 0) {
    out.push_back(acc);
    return;
  }
  for (int j = start; j <= dim - grade; ++j) combos(dim, grade - 1, j + 1, acc | (Mask{1} << j), out);
}

}  // namespace

Basis::Basis(int dim, int grade) : dim_(dim), grade_(grade) {
  if (dim < 1 || dim > 16) throw DomainError("Basis: dimension must be in [1, 16]");
  if (grade < 0 || grade > dim) throw DomainError("Basis: grade out of range");
  combos(dim, grade, 0, 0, masks_);
  position_.assign(std::size_t{1} << dim, -1);
  for (std::size_t p = 0; p < masks_.size(); ++p) position_[masks_[p]] = static_cast<int>(p);
}

const Basis& basis(int dim, int grade) {
  static std::mutex mu;
  static std::array<std::array<std::unique_ptr<Basis>, 17>, 17> cache;
  if (dim < 1 || dim > 16 || grade < 0 || grade > dim) throw DomainError("basis: grade out of range");
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[static_cast<std::size_t>(dim)][static_cast<std::size_t>(grade)];
  if (!slot) slot = std::make_unique<Basis>(dim, grade);
  return *slot;
}

// ---------------------------------------------------------------------------
// LogReal

LogReal LogReal::from_double(double x) {
  if (x == 0) return zero();
  return {x > 0 ? 1 : -1, std::log(std::fabs(x))};
}

LogReal LogReal::from_real(Real x) {
  if (x == 0) return zero();
  return {x > 0 ? 1 : -1, static_cast<double>(affsing::log_abs(x))};
}

LogReal LogReal::from_rational(const Rational& q) {
  if (sgn(q) == 0) return zero();
  return {sgn(q), static_cast<double>(affsing::log_abs(q))};
}

LogReal operator*(const LogReal& a, const LogReal& b) {
  if (a.sign == 0 || b.sign == 0) return LogReal::zero();
  return {a.sign * b.sign, a.log_abs + b.log_abs};
}

LogReal operator+(const LogReal& a, const LogReal& b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  const LogReal& big = a.log_abs >= b.log_abs ? a : b;
  const LogReal& small = a.log_abs >= b.log_abs ? b : a;
  double r = std::exp(small.log_abs - big.log_abs);
  if (big.sign == small.sign) return {big.sign, big.log_abs + std::log1p(r)};
  if (r == 1.0) return LogReal::zero();
  return {big.sign, big.log_abs + std::log1p(-r)};
}

std::pair<int, int> legal_band(const Dims& dims, int k) {
  if (k < 0 || k > dims.ambient()) throw DomainError("legal_band: grade out of range");
  return {std::max(0, k + dims.d - dims.n), std::min(dims.d + 1, k)};
}

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(int size) : size_(size), a_(static_cast<std::size_t>(size * size), Number(0)) {}

Matrix Matrix::identity(int size) {
  Matrix m(size);
  for (int i = 0; i < size; ++i) m(i, i) = Number(1);
  return m;
}

Matrix Matrix::from_rationals(int size, const std::vector<Rational>& row_major) {
  if (static_cast<int>(row_major.size()) != size * size) throw DomainError("Matrix: entry count mismatch");
  Matrix m(size);
  for (int i = 0; i < size * size; ++i) m.a_[static_cast<std::size_t>(i)] = Number(row_major[static_cast<std::size_t>(i)]);
  return m;
}

bool Matrix::is_exact() const {
  for (const Number& x : a_) {
    if (!x.is_exact()) return false;
  }
  return true;
}

bool Matrix::is_upper_unitriangular() const {
  for (int r = 0; r < size_; ++r) {
    for (int c = 0; c <= r; ++c) {
      const Number& x = (*this)(r, c);
      if (r == c) {
        if (!(x.is_exact() && x.exact() == 1)) return false;
      } else if (!x.is_zero()) {
        return false;
      }
    }
  }
  return true;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (size_ != other.size_) throw DomainError("Matrix *: size mismatch");
  Matrix out(size_);
  for (int i = 0; i < size_; ++i) {
    for (int j = 0; j < size_; ++j) {
      Number acc(0);
      for (int l = 0; l < size_; ++l) {
        const Number& a = (*this)(i, l);
        const Number& b = other(l, j);
        if (a.is_zero() || b.is_zero()) continue;
        acc = acc + a * b;
      }
      out(i, j) = acc;
    }
  }
  return out;
}

Rational Matrix::determinant_exact() const {
  std::vector<Rational> m(a_.size());
  for (std::size_t i = 0; i < a_.size(); ++i) m[i] = a_[i].exact();
  const int N = size_;
  Rational det = 1;
  for (int c = 0; c < N; ++c) {
    int piv = -1;
    for (int r = c; r < N; ++r) {
      if (sgn(m[static_cast<std::size_t>(r * N + c)]) != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) return 0;
    if (piv != c) {
      for (int j = 0; j < N; ++j) std::swap(m[static_cast<std::size_t>(piv * N + j)], m[static_cast<std::size_t>(c * N + j)]);
      det = -det;
    }
    const Rational p = m[static_cast<std::size_t>(c * N + c)];
    det *= p;
    for (int r = c + 1; r < N; ++r) {
      Rational f = m[static_cast<std::size_t>(r * N + c)] / p;
      if (sgn(f) == 0) continue;
      for (int j = c; j < N; ++j) m[static_cast<std::size_t>(r * N + j)] -= f * m[static_cast<std::size_t>(c * N + j)];
    }
  }
  det.canonicalize();
  return det;
}

long double Matrix::determinant_approx() const {
  const int N = size_;
  std::vector<long double> m(a_.size());
  for (std::size_t i = 0; i < a_.size(); ++i) m[i] = to_ld(a_[i].approx());
  long double det = 1;
  for (int c = 0; c < N; ++c) {
    int piv = c;
    for (int r = c + 1; r < N; ++r) {
      if (std::fabs(m[static_cast<std::size_t>(r * N + c)]) > std::fabs(m[static_cast<std::size_t>(piv * N + c)])) piv = r;
    }
    if (m[static_cast<std::size_t>(piv * N + c)] == 0) return 0;
    if (piv != c) {
      for (int j = 0; j < N; ++j) std::swap(m[static_cast<std::size_t>(piv * N + j)], m[static_cast<std::size_t>(c * N + j)]);
      det = -det;
    }
    long double p = m[static_cast<std::size_t>(c * N + c)];
    det *= p;
    for (int r = c + 1; r < N; ++r) {
      long double f = m[static_cast<std::size_t>(r * N + c)] / p;
      for (int j = c; j < N; ++j) m[static_cast<std::size_t>(r * N + j)] -= f * m[static_cast<std::size_t>(c * N + j)];
    }
  }
  return det;
}

Matrix Matrix::inverse() const {
  const int N = size_;
  Matrix out(N);
  if (is_exact()) {
    std::vector<Rational> m(static_cast<std::size_t>(N * 2 * N));
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) m[static_cast<std::size_t>(i * 2 * N + j)] = (*this)(i, j).exact();
      m[static_cast<std::size_t>(i * 2 * N + N + i)] = 1;
    }
    for (int c = 0; c < N; ++c) {
      int piv = -1;
      for (int r = c; r < N; ++r) {
        if (sgn(m[static_cast<std::size_t>(r * 2 * N + c)]) != 0) {
          piv = r;
          break;
        }
      }
      if (piv < 0) throw DomainError("Matrix::inverse: singular matrix");
      if (piv != c) {
        for (int j = 0; j < 2 * N; ++j) std::swap(m[static_cast<std::size_t>(piv * 2 * N + j)], m[static_cast<std::size_t>(c * 2 * N + j)]);
      }
      Rational p = m[static_cast<std::size_t>(c * 2 * N + c)];
      for (int j = 0; j < 2 * N; ++j) m[static_cast<std::size_t>(c * 2 * N + j)] /= p;
      for (int r = 0; r < N; ++r) {
        if (r == c) continue;
        Rational f = m[static_cast<std::size_t>(r * 2 * N + c)];
        if (sgn(f) == 0) continue;
        for (int j = 0; j < 2 * N; ++j) m[static_cast<std::size_t>(r * 2 * N + j)] -= f * m[static_cast<std::size_t>(c * 2 * N + j)];
      }
    }
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) out(i, j) = Number(m[static_cast<std::size_t>(i * 2 * N + N + j)]);
    }
    return out;
  }
  std::vector<Real> m(static_cast<std::size_t>(N * 2 * N), 0);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) m[static_cast<std::size_t>(i * 2 * N + j)] = (*this)(i, j).approx();
    m[static_cast<std::size_t>(i * 2 * N + N + i)] = 1;
  }
  auto absq = [](Real x) { return x < 0 ? -x : x; };
  for (int c = 0; c < N; ++c) {
    int piv = c;
    for (int r = c + 1; r < N; ++r) {
      if (absq(m[static_cast<std::size_t>(r * 2 * N + c)]) > absq(m[static_cast<std::size_t>(piv * 2 * N + c)])) piv = r;
    }
    if (m[static_cast<std::size_t>(piv * 2 * N + c)] == 0) throw DomainError("Matrix::inverse: singular matrix");
    if (piv != c) {
      for (int j = 0; j < 2 * N; ++j) std::swap(m[static_cast<std::size_t>(piv * 2 * N + j)], m[static_cast<std::size_t>(c * 2 * N + j)]);
    }
    Real p = m[static_cast<std::size_t>(c * 2 * N + c)];
    for (int j = 0; j < 2 * N; ++j) m[static_cast<std::size_t>(c * 2 * N + j)] /= p;
    for (int r = 0; r < N; ++r) {
      if (r == c) continue;
      Real f = m[static_cast<std::size_t>(r * 2 * N + c)];
      if (f == 0) continue;
      for (int j = 0; j < 2 * N; ++j) m[static_cast<std::size_t>(r * 2 * N + j)] -= f * m[static_cast<std::size_t>(c * 2 * N + j)];
    }
  }
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) out(i, j) = Number::real(m[static_cast<std::size_t>(i * 2 * N + N + j)]);
  }
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.size_ != b.size_) return false;
  for (std::size_t i = 0; i < a.a_.size(); ++i) {
    if (!(a.a_[i] == b.a_[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Flows

std::vector<Rational> flow_rates(FlowKind kind, const Dims& dims) {
  const int N = dims.ambient();
  const int n = dims.n;
  const int d = dims.d;
  std::vector<Rational> r(static_cast<std::size_t>(N));
  for (int j = 0; j < N; ++j) {
    Rational v;
    switch (kind) {
      case FlowKind::G:
        v = j == 0 ? Rational(n, n + 1) : Rational(-1, n + 1);
        break;
      case FlowKind::B:
        v = j <= d ? Rational(n - d, (d + 1) * (n + 1)) : Rational(-1, n + 1);
        break;
      case FlowKind::C:
        v = j == 0 ? Rational(d, d + 1) : (j <= d ? Rational(-1, d + 1) : Rational(0));
        break;
    }
    v.canonicalize();
    r[static_cast<std::size_t>(j)] = v;
  }
  return r;
}

DiagonalElement::DiagonalElement(int dim, double t, std::vector<Rational> rates) : dim_(dim) {
  if (static_cast<int>(rates.size()) != dim) throw DomainError("DiagonalElement: rate vector length mismatch");
  add_term(t, rates);
}

void DiagonalElement::add_term(double t, const std::vector<Rational>& rates) {
  if (t == 0) return;
  double key = std::fabs(t);
  std::vector<Rational> signed_rates = rates;
  if (t < 0) {
    for (auto& r : signed_rates) r = -r;
  }
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    bool all_zero = true;
    for (const auto& r : signed_rates) all_zero = all_zero && sgn(r) == 0;
    if (!all_zero) terms_.emplace(key, std::move(signed_rates));
    return;
  }
  bool all_zero = true;
  for (std::size_t j = 0; j < signed_rates.size(); ++j) {
    it->second[j] += signed_rates[j];
    all_zero = all_zero && sgn(it->second[j]) == 0;
  }
  if (all_zero) terms_.erase(it);
}

std::vector<long double> DiagonalElement::log_entries() const {
  std::vector<long double> out(static_cast<std::size_t>(dim_), 0.0L);
  for (const auto& [t, rates] : terms_) {
    for (std::size_t j = 0; j < rates.size(); ++j) out[j] += static_cast<long double>(t) * static_cast<long double>(rates[j].get_d());
  }
  return out;
}

std::map<double, Rational> DiagonalElement::exterior_rates(Mask J) const {
  std::map<double, Rational> out;
  for (const auto& [t, rates] : terms_) {
    Rational s = 0;
    for (int j : indices_of(J)) s += rates[static_cast<std::size_t>(j)];
    if (sgn(s) != 0) out.emplace(t, s);
  }
  return out;
}

DiagonalElement DiagonalElement::operator*(const DiagonalElement& other) const {
  if (dim_ != other.dim_) throw DomainError("DiagonalElement *: size mismatch");
  DiagonalElement out = *this;
  for (const auto& [t, rates] : other.terms_) out.add_term(t, rates);
  return out;
}

DiagonalElement DiagonalElement::inverse() const {
  DiagonalElement out(dim_);
  for (const auto& [t, rates] : terms_) out.add_term(-t, rates);
  return out;
}

DiagonalElement flow_element(FlowKind kind, double t, const Dims& dims) {
  if (!std::isfinite(t)) throw DomainError("flow_element: non-finite time");
  return DiagonalElement(dims.ambient(), t, flow_rates(kind, dims));
}

Rational b_block_rate(int i, int k, const Dims& dims) {
  Rational r = Rational(i, dims.d + 1) - Rational(k, dims.n + 1);
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------------------
// Unipotents

Matrix unipotent_s(const std::vector<Number>& s, const Dims& dims) {
  if (static_cast<int>(s.size()) != dims.d) throw DomainError("u(s): expected s of length d");
  Matrix m = Matrix::identity(dims.ambient());
  for (int j = 0; j < dims.d; ++j) m(0, 1 + j) = s[static_cast<std::size_t>(j)];
  return m;
}

Matrix unipotent_x(const std::vector<Number>& x, const Dims& dims) {
  if (static_cast<int>(x.size()) != dims.n) throw DomainError("u(x): expected x of length n");
  Matrix m = Matrix::identity(dims.ambient());
  for (int j = 0; j < dims.n; ++j) m(0, 1 + j) = x[static_cast<std::size_t>(j)];
  return m;
}

namespace {

void check_A(const std::vector<Number>& A, const Dims& dims) {
  if (static_cast<int>(A.size()) != (dims.d + 1) * (dims.n - dims.d)) {
    throw DomainError("A must be (d+1) x (n-d), got " + std::to_string(A.size()) + " entries");
  }
}

}  // namespace

Matrix unipotent_A(const std::vector<Number>& A, const Dims& dims) {
  check_A(A, dims);
  const int cols = dims.n - dims.d;
  Matrix m = Matrix::identity(dims.ambient());
  for (int r = 0; r <= dims.d; ++r) {
    for (int c = 0; c < cols; ++c) m(r, dims.d + 1 + c) = A[static_cast<std::size_t>(r * cols + c)];
  }
  return m;
}

Matrix centralizer_zA(const std::vector<Number>& A, const Dims& dims) {
  check_A(A, dims);
  const int cols = dims.n - dims.d;
  Matrix m = Matrix::identity(dims.ambient());
  for (int r = 1; r <= dims.d; ++r) {
    for (int c = 0; c < cols; ++c) m(r, dims.d + 1 + c) = -A[static_cast<std::size_t>(r * cols + c)];
  }
  return m;
}

std::vector<Number> affine_point(const std::vector<Number>& s, const std::vector<Number>& A, const Dims& dims) {
  check_A(A, dims);
  if (static_cast<int>(s.size()) != dims.d) throw DomainError("affine_point: expected s of length d");
  const int cols = dims.n - dims.d;
  std::vector<Number> x(s);
  for (int c = 0; c < cols; ++c) {
    Number acc = A[static_cast<std::size_t>(c)];
    for (int r = 1; r <= dims.d; ++r) acc = acc + s[static_cast<std::size_t>(r - 1)] * A[static_cast<std::size_t>(r * cols + c)];
    x.push_back(acc);
  }
  return x;
}

// ---------------------------------------------------------------------------
// Actions

namespace {

template <class T, class Entry>
ExtVector<T> act_matrix(const Matrix& g, const ExtVector<T>& v, Entry entry) {
  const int N = g.size();
  if (v.dim() != N) throw DomainError("act_exterior: dimension mismatch");
  ExtVector<T> out(N, v.grade());
  for (std::size_t p = 0; p < v.size(); ++p) {
    if (detail::is_zero(v[p])) continue;
    std::vector<std::vector<T>> cols;
    for (int j : indices_of(v.mask(p))) {
      std::vector<T> col(static_cast<std::size_t>(N));
      for (int r = 0; r < N; ++r) col[static_cast<std::size_t>(r)] = entry(g(r, j));
      cols.push_back(std::move(col));
    }
    ExtVector<T> img = v.grade() == 0 ? ExtVector<T>(N, 0) : wedge(cols);
    if (v.grade() == 0) img[0] = T(1);
    for (std::size_t q = 0; q < img.size(); ++q) {
      if (!detail::is_zero(img[q])) out[q] = out[q] + img[q] * v[p];
    }
  }
  return out;
}

}  // namespace

ExtVector<Rational> act_exterior(const Matrix& g, const ExtVector<Rational>& v) {
  return act_matrix(g, v, [](const Number& x) { return x.exact(); });
}

ExtVector<double> act_exterior(const Matrix& g, const ExtVector<double>& v) {
  return act_matrix(g, v, [](const Number& x) { return static_cast<double>(x.approx()); });
}

namespace {

long double exterior_log_scale(const DiagonalElement& g, Mask J) {
  long double s = 0;
  for (const auto& [t, rate] : g.exterior_rates(J)) s += static_cast<long double>(t) * static_cast<long double>(rate.get_d());
  return s;
}

}  // namespace

ExtVector<LogReal> act_exterior(const DiagonalElement& g, const ExtVector<LogReal>& v) {
  if (v.dim() != g.dim()) throw DomainError("act_exterior: dimension mismatch");
  ExtVector<LogReal> out = v;
  for (std::size_t p = 0; p < out.size(); ++p) {
    if (!out[p].is_zero()) out[p] = out[p].scaled_by_exp(static_cast<double>(exterior_log_scale(g, v.mask(p))));
  }
  return out;
}

ExtVector<double> act_exterior(const DiagonalElement& g, const ExtVector<double>& v) {
  if (v.dim() != g.dim()) throw DomainError("act_exterior: dimension mismatch");
  ExtVector<double> out = v;
  for (std::size_t p = 0; p < out.size(); ++p) {
    if (out[p] != 0) out[p] = static_cast<double>(static_cast<long double>(out[p]) * std::exp(exterior_log_scale(g, v.mask(p))));
  }
  return out;
}

ExtVector<LogReal> to_log(const ExtVector<Rational>& v) {
  ExtVector<LogReal> out(v.dim(), v.grade());
  for (std::size_t p = 0; p < v.size(); ++p) out[p] = LogReal::from_rational(v[p]);
  return out;
}

ExtVector<double> to_double(const ExtVector<Rational>& v) {
  ExtVector<double> out(v.dim(), v.grade());
  for (std::size_t p = 0; p < v.size(); ++p) out[p] = v[p].get_d();
  return out;
}

// ---------------------------------------------------------------------------
// Plucker relations

namespace {

template <class C>
bool plucker_generic(const std::vector<C>& coeffs, int dim, int grade) {
  if (grade <= 1 || grade >= dim - 1) return true;  // every vector of Lambda^1 / Lambda^{N-1} is decomposable
  const Basis& bk = basis(dim, grade);
  const Basis& lower = basis(dim, grade - 1);
  const Basis& upper = basis(dim, grade + 1);
  auto coeff = [&](Mask m) -> const C& { return coeffs[static_cast<std::size_t>(bk.position(m))]; };
  for (Mask I : lower.masks()) {
    for (Mask J : upper.masks()) {
      C sum = 0;
      int l = 0;
      for (int j : indices_of(J)) {
        if (!((I >> j) & 1u)) {
          const C& a = coeff(I | (Mask{1} << j));
          const C& b = coeff(J & ~(Mask{1} << j));
          if (sgn(a) != 0 && sgn(b) != 0) {
            int sign = ((l & 1) ? -1 : 1) * insertion_sign(I, j);
            if (sign > 0) {
              sum += a * b;
            } else {
              sum -= a * b;
            }
          }
        }
        ++l;
      }
      if (sgn(sum) != 0) return false;
    }
  }
  return true;
}

}  // namespace

bool plucker_check(const ExtVector<Rational>& v) {
  return plucker_generic(v.coeffs(), v.dim(), v.grade());
}

bool plucker_check(const std::vector<Integer>& coeffs, int dim, int grade) {
  if (coeffs.size() != basis(dim, grade).size()) throw DomainError("plucker_check: coefficient count mismatch");
  return plucker_generic(coeffs, dim, grade);
}

// ---------------------------------------------------------------------------
// Ranks

int rational_rank(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  int rank = 0;
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
      if (sgn(rows[static_cast<std::size_t>(r)][c]) != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(rows[static_cast<std::size_t>(piv)], rows[static_cast<std::size_t>(rank)]);
    const auto& pr = rows[static_cast<std::size_t>(rank)];
    for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows.size(); ++r) {
      if (sgn(rows[r][c]) == 0) continue;
      Rational f = rows[r][c] / pr[c];
      for (std::size_t j = c; j < cols; ++j) rows[r][j] -= f * pr[j];
    }
    ++rank;
  }
  return rank;
}

AffineRank affine_map_rank(const ExtVector<Rational>& w, const Dims& dims) {
  if (w.dim() != dims.ambient()) throw DomainError("affine_map_rank: dimension mismatch");
  if (w.grade() < 1 || w.grade() > dims.d) throw DomainError("affine_map_rank: need 1 <= i <= d");
  PlusMinus<Rational> pm = project_pm(w, dims);
  AffineRank out;
  out.hypothesis_holds = !pm.minus.is_zero();
  std::vector<std::vector<Rational>> rows;
  for (int j = 0; j < dims.d; ++j) {
    std::vector<Number> s(static_cast<std::size_t>(dims.d), Number(0));
    s[static_cast<std::size_t>(j)] = Number(1);
    ExtVector<Rational> moved = act_exterior(unipotent_s(s, dims), w);
    ExtVector<Rational> plus = project_pm(moved, dims).plus;
    std::vector<Rational> row(plus.size());
    for (std::size_t p = 0; p < plus.size(); ++p) row[p] = plus[p] - pm.plus[p];
    rows.push_back(std::move(row));
  }
  out.rank = rational_rank(std::move(rows));
  return out;
}

}  // namespace affsing::algebra
