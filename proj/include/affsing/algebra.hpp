#pragma once

// Exterior algebra over R^{n+1}, the block groups G = SL_{n+1}(R) >= H_d, and
// the diagonal flows g_t = b_t c_t with their actions on exterior powers.
//
// Multi-indices are bitmasks over {0..n}; the basis of Lambda^k is listed in
// lexicographic order of the sorted index tuples.

#include <bit>
#include <cstdint>
#include <map>
#include <utility>
#include <variant>
#include <vector>

#include "affsing/core.hpp"
#include "affsing/number.hpp"

namespace affsing::algebra {

using Mask = std::uint32_t;

inline int popcount(Mask m) { return std::popcount(m); }

/// Sorted indices of a mask.
std::vector<int> indices_of(Mask m);
Mask mask_of(const std::vector<int>& indices);

/// Number of entries of J lying in V_0^perp, i.e. in [0, d].
inline int perp_count(Mask m, const Dims& dims) { return popcount(m & dims.perp_mask()); }

/// Lexicographically ordered basis {e_J : |J| = k} of Lambda^k R^N.
class Basis {
 public:
  Basis(int dim, int grade);
  int dim() const { return dim_; }
  int grade() const { return grade_; }
  std::size_t size() const { return masks_.size(); }
  Mask mask(std::size_t pos) const { return masks_[pos]; }
  const std::vector<Mask>& masks() const { return masks_; }
  /// Position of e_J, or -1 if |J| != k.
  int position(Mask m) const { return position_[m]; }

 private:
  int dim_;
  int grade_;
  std::vector<Mask> masks_;
  std::vector<int> position_;
};

/// Shared, immutable basis table for (N, k); thread-safe.
const Basis& basis(int dim, int grade);

/// Signed log-magnitude real: value = sign * exp(log_abs). Zero is
/// sign 0 with log_abs = -inf.
struct LogReal {
  int sign = 0;
  double log_abs = -std::numeric_limits<double>::infinity();

  static LogReal zero() { return {}; }
  static LogReal from_double(double x);
  static LogReal from_real(Real x);
  static LogReal from_rational(const Rational& q);

  bool is_zero() const { return sign == 0; }
  double to_double() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
  LogReal abs() const { return {sign == 0 ? 0 : 1, log_abs}; }
  LogReal scaled_by_exp(double e) const {
    if (sign == 0) return *this;
    return {sign, log_abs + e};
  }

  friend LogReal operator*(const LogReal& a, const LogReal& b);
  friend LogReal operator+(const LogReal& a, const LogReal& b);
  friend bool operator==(const LogReal& a, const LogReal& b) {
    return a.sign == b.sign && (a.sign == 0 || a.log_abs == b.log_abs);
  }
};

namespace detail {
template <class T>
inline bool is_zero(const T& x) {
  if constexpr (std::is_same_v<T, LogReal>) {
    return x.is_zero();
  } else if constexpr (std::is_same_v<T, Rational>) {
    return sgn(x) == 0;
  } else {
    return x == T(0);
  }
}

/// |a| < |b| on magnitudes.
template <class T>
inline bool abs_less(const T& a, const T& b) {
  if constexpr (std::is_same_v<T, LogReal>) {
    return a.log_abs < b.log_abs;
  } else if constexpr (std::is_same_v<T, Rational>) {
    return cmp(abs(a), abs(b)) < 0;
  } else {
    using std::abs;
    return abs(a) < abs(b);
  }
}

template <class T>
inline T abs_value(const T& a) {
  if constexpr (std::is_same_v<T, LogReal>) {
    return a.abs();
  } else if constexpr (std::is_same_v<T, Rational>) {
    return Rational(abs(a));
  } else {
    using std::abs;
    return abs(a);
  }
}

template <class T>
inline T negate(const T& a) {
  if constexpr (std::is_same_v<T, LogReal>) {
    return LogReal{-a.sign, a.log_abs};
  } else {
    return T(-a);
  }
}
}  // namespace detail

/// Element of Lambda^k R^N, dense in the lexicographic basis.
template <class T>
class ExtVector {
 public:
  ExtVector() = default;
  ExtVector(int dim, int grade)
      : basis_(&algebra::basis(dim, grade)), coeffs_(basis_->size(), zero_value()) {}

  int dim() const { return basis_->dim(); }
  int grade() const { return basis_->grade(); }
  const Basis& basis() const { return *basis_; }
  std::size_t size() const { return coeffs_.size(); }
  Mask mask(std::size_t pos) const { return basis_->mask(pos); }

  T& operator[](std::size_t pos) { return coeffs_[pos]; }
  const T& operator[](std::size_t pos) const { return coeffs_[pos]; }

  T& at(Mask m) {
    int p = basis_->position(m);
    if (p < 0) throw DomainError("ExtVector::at: multi-index of wrong length");
    return coeffs_[static_cast<std::size_t>(p)];
  }
  const T& at(Mask m) const {
    int p = basis_->position(m);
    if (p < 0) throw DomainError("ExtVector::at: multi-index of wrong length");
    return coeffs_[static_cast<std::size_t>(p)];
  }

  std::vector<T>& coeffs() { return coeffs_; }
  const std::vector<T>& coeffs() const { return coeffs_; }

  bool is_zero() const {
    for (const T& c : coeffs_) {
      if (!detail::is_zero(c)) return false;
    }
    return true;
  }

  /// Sup-norm: max |coefficient|.
  T sup_norm() const {
    T best = zero_value();
    for (const T& c : coeffs_) {
      if (detail::abs_less(best, c)) best = detail::abs_value(c);
    }
    return best;
  }

  friend bool operator==(const ExtVector& a, const ExtVector& b) {
    return a.dim() == b.dim() && a.grade() == b.grade() && a.coeffs_ == b.coeffs_;
  }

  static T zero_value() {
    if constexpr (std::is_same_v<T, LogReal>) {
      return LogReal::zero();
    } else {
      return T(0);
    }
  }

 private:
  const Basis* basis_ = nullptr;
  std::vector<T> coeffs_;
};

template <class T>
ExtVector<T> operator+(const ExtVector<T>& a, const ExtVector<T>& b) {
  if (a.dim() != b.dim() || a.grade() != b.grade()) throw DomainError("ExtVector +: shape mismatch");
  ExtVector<T> out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

/// Basis vector e_J.
template <class T>
ExtVector<T> basis_vector(int dim, Mask m) {
  ExtVector<T> v(dim, popcount(m));
  if constexpr (std::is_same_v<T, LogReal>) {
    v.at(m) = LogReal{1, 0.0};
  } else {
    v.at(m) = T(1);
  }
  return v;
}

/// (-1)^{#{i in J : i > j}}: sign of e_J ^ e_j relative to e_{J+j}.
inline int insertion_sign(Mask J, int j) {
  Mask above = J & ~((Mask{2} << j) - 1);
  return (popcount(above) & 1) ? -1 : 1;
}

/// v ^ x for x in R^N.
template <class T>
ExtVector<T> wedge_vector(const ExtVector<T>& v, const std::vector<T>& x) {
  const int N = v.dim();
  if (static_cast<int>(x.size()) != N) throw DomainError("wedge: vector length mismatch");
  if (v.grade() + 1 > N) throw DomainError("wedge: grade out of range");
  ExtVector<T> out(N, v.grade() + 1);
  for (std::size_t p = 0; p < v.size(); ++p) {
    if (detail::is_zero(v[p])) continue;
    Mask J = v.mask(p);
    for (int j = 0; j < N; ++j) {
      if ((J >> j) & 1u) continue;
      if (detail::is_zero(x[static_cast<std::size_t>(j)])) continue;
      T term = v[p] * x[static_cast<std::size_t>(j)];
      if (insertion_sign(J, j) < 0) term = detail::negate(term);
      T& slot = out.at(J | (Mask{1} << j));
      slot = slot + term;
    }
  }
  return out;
}

/// v_1 ^ ... ^ v_k for 1 <= k <= N.
template <class T>
ExtVector<T> wedge(const std::vector<std::vector<T>>& vectors) {
  if (vectors.empty()) throw DomainError("wedge: grade out of range (k = 0)");
  const int N = static_cast<int>(vectors.front().size());
  if (static_cast<int>(vectors.size()) > N) throw DomainError("wedge: grade out of range (k > n+1)");
  ExtVector<T> acc(N, 0);
  if constexpr (std::is_same_v<T, LogReal>) {
    acc[0] = LogReal{1, 0.0};
  } else {
    acc[0] = T(1);
  }
  for (const auto& x : vectors) acc = wedge_vector(acc, x);
  return acc;
}

/// Legal band [max(0, k+d-n), min(d+1, k)] of block indices for grade k.
std::pair<int, int> legal_band(const Dims& dims, int k);

/// pi_i: keep coefficients whose multi-index has exactly i entries in [0, d].
template <class T>
ExtVector<T> project_i(const ExtVector<T>& v, int i, const Dims& dims) {
  if (v.dim() != dims.ambient()) throw DomainError("project_i: dimension mismatch");
  auto [lo, hi] = legal_band(dims, v.grade());
  if (i < lo || i > hi) {
    throw DomainError("project_i: i=" + std::to_string(i) + " outside legal band [" +
                      std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  ExtVector<T> out(v.dim(), v.grade());
  for (std::size_t p = 0; p < v.size(); ++p) {
    if (perp_count(v.mask(p), dims) == i) out[p] = v[p];
  }
  return out;
}

/// pi_fix = pi_0 (+) pi_{d+1}, restricted to whichever blocks are legal.
template <class T>
ExtVector<T> project_fix(const ExtVector<T>& v, const Dims& dims) {
  if (v.dim() != dims.ambient()) throw DomainError("project_fix: dimension mismatch");
  ExtVector<T> out(v.dim(), v.grade());
  for (std::size_t p = 0; p < v.size(); ++p) {
    int i = perp_count(v.mask(p), dims);
    if (i == 0 || i == dims.d + 1) out[p] = v[p];
  }
  return out;
}

template <class T>
struct PlusMinus {
  ExtVector<T> plus;   ///< components e_J with 0 in J
  ExtVector<T> minus;  ///< components e_J with 0 not in J
};

/// Splits w in Lambda^i(V_0^perp) as V_+ (+) V_-.
template <class T>
PlusMinus<T> project_pm(const ExtVector<T>& w, const Dims& dims) {
  if (w.dim() != dims.ambient()) throw DomainError("project_pm: dimension mismatch");
  PlusMinus<T> out{ExtVector<T>(w.dim(), w.grade()), ExtVector<T>(w.dim(), w.grade())};
  for (std::size_t p = 0; p < w.size(); ++p) {
    if (detail::is_zero(w[p])) continue;
    Mask J = w.mask(p);
    if (J & ~dims.perp_mask()) throw DomainError("project_pm: support outside V_0^perp");
    if (J & 1u) {
      out.plus[p] = w[p];
    } else {
      out.minus[p] = w[p];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Group elements

/// Square matrix whose entries are exact when possible.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int size);
  static Matrix identity(int size);
  static Matrix from_rationals(int size, const std::vector<Rational>& row_major);

  int size() const { return size_; }
  const Number& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r * size_ + c)]; }
  Number& operator()(int r, int c) { return a_[static_cast<std::size_t>(r * size_ + c)]; }

  bool is_exact() const;
  bool is_upper_unitriangular() const;
  Matrix operator*(const Matrix& other) const;
  /// Exact determinant; throws PrecisionError for inexact entries.
  Rational determinant_exact() const;
  /// Approximate determinant (extended precision Gaussian elimination).
  long double determinant_approx() const;
  /// Extended-precision inverse; exact entries stay exact.
  Matrix inverse() const;
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  int size_ = 0;
  std::vector<Number> a_;
};

enum class FlowKind { G, B, C };

/// Per-coordinate rate r_j with flow(t) = diag(e^{r_j t}); exact rationals.
std::vector<Rational> flow_rates(FlowKind kind, const Dims& dims);

/// Diagonal group element in closed log form: coordinate j carries
/// exp(sum_t t * rate_t[j]). Rate vectors sharing the same |t| are merged
/// exactly, so g_t b_{-t} c_{-t} collapses to the identity without rounding.
class DiagonalElement {
 public:
  DiagonalElement() = default;
  explicit DiagonalElement(int dim) : dim_(dim) {}
  DiagonalElement(int dim, double t, std::vector<Rational> rates);

  int dim() const { return dim_; }
  bool is_identity() const { return terms_.empty(); }
  /// Log of each diagonal entry.
  std::vector<long double> log_entries() const;
  /// Exact sum_{j in J} rate_t[j] for every time key.
  std::map<double, Rational> exterior_rates(Mask J) const;
  const std::map<double, std::vector<Rational>>& terms() const { return terms_; }

  DiagonalElement operator*(const DiagonalElement& other) const;
  DiagonalElement inverse() const;
  friend bool operator==(const DiagonalElement& a, const DiagonalElement& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

 private:
  void add_term(double t, const std::vector<Rational>& rates);
  int dim_ = 0;
  std::map<double, std::vector<Rational>> terms_;
};

using GroupElement = std::variant<DiagonalElement, Matrix>;

/// g_t, b_t or c_t.
DiagonalElement flow_element(FlowKind kind, double t, const Dims& dims);

/// u(s) = [[1, s, 0], [0, I_d, 0], [0, 0, I_{n-d}]], s in R^d.
Matrix unipotent_s(const std::vector<Number>& s, const Dims& dims);
/// u(x) = [[1, x], [0, I_n]], x in R^n.
Matrix unipotent_x(const std::vector<Number>& x, const Dims& dims);
/// u_A = [[I_{d+1}, A], [0, I_{n-d}]], A given row-major (d+1) x (n-d).
Matrix unipotent_A(const std::vector<Number>& A, const Dims& dims);
/// z_A = [[1, 0, 0], [0, I_d, -A_2], [0, 0, I_{n-d}]] with A_2 the last d rows of A.
Matrix centralizer_zA(const std::vector<Number>& A, const Dims& dims);
/// x = (s, s~A) with s~ = (1, s).
std::vector<Number> affine_point(const std::vector<Number>& s, const std::vector<Number>& A,
                                 const Dims& dims);

/// Lambda^k(g) v, exact.
ExtVector<Rational> act_exterior(const Matrix& g, const ExtVector<Rational>& v);
/// Lambda^k(g) v using the extended-precision approximations.
ExtVector<double> act_exterior(const Matrix& g, const ExtVector<double>& v);
/// Diagonal flows act coefficient-wise in the log domain.
ExtVector<LogReal> act_exterior(const DiagonalElement& g, const ExtVector<LogReal>& v);
ExtVector<double> act_exterior(const DiagonalElement& g, const ExtVector<double>& v);

/// The scalar rate by which b_t acts on the image of pi_i in Lambda^k:
/// i/(d+1) - k/(n+1).
Rational b_block_rate(int i, int k, const Dims& dims);

ExtVector<LogReal> to_log(const ExtVector<Rational>& v);
ExtVector<double> to_double(const ExtVector<Rational>& v);

/// Plucker relations over all pairs (I, J), |I| = k-1, |J| = k+1, exact.
bool plucker_check(const ExtVector<Rational>& v);
/// Same relations on integer coordinates (used on enumerated lattice vectors).
bool plucker_check(const std::vector<Integer>& coeffs, int dim, int grade);

struct AffineRank {
  int rank = 0;
  bool hypothesis_holds = true;  ///< false when pi_-(w) = 0
};

/// Rank of the linear part s -> pi_+(u(s)w) - pi_+(w) of f_w, for w in
/// Lambda^i(V_0^perp), 1 <= i <= d.
AffineRank affine_map_rank(const ExtVector<Rational>& w, const Dims& dims);

/// Rank over Q (fraction-free elimination on a copy).
int rational_rank(std::vector<std::vector<Rational>> rows);

}  // namespace affsing::algebra
