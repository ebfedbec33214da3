#pragma once

// Points of the space of unimodular lattices, stored as a factored word
// D * M (D diagonal in closed log form, M a matrix with exact entries when
// possible), and exact short-vector enumeration on them.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "affsing/algebra.hpp"

namespace affsing::lattice {

using algebra::DiagonalElement;
using algebra::ExtVector;
using algebra::FlowKind;
using algebra::LogReal;
using algebra::Matrix;

using IntVector = std::vector<long long>;

/// A product of flows and unipotent/matrix factors, kept canonically as D*M
/// with all diagonal factors commuted to the left.
class FlowWord {
 public:
  explicit FlowWord(const Dims& dims);

  const Dims& dims() const { return dims_; }
  const DiagonalElement& diagonal() const { return diag_; }
  const Matrix& matrix() const { return mat_; }
  /// Human-readable list of the factors, left to right.
  const std::vector<std::string>& factors() const { return labels_; }

  /// Append a factor on the right (g -> g * f).
  FlowWord& flow(FlowKind kind, double t);
  FlowWord& diagonal(const DiagonalElement& e, const std::string& label = "diag");
  FlowWord& unipotent_s(const std::vector<Number>& s);
  FlowWord& unipotent_x(const std::vector<Number>& x);
  FlowWord& unipotent_A(const std::vector<Number>& A);
  FlowWord& centralizer(const std::vector<Number>& A);
  FlowWord& matrix(const Matrix& m, const std::string& label = "matrix");

  /// Product this * right.
  FlowWord operator*(const FlowWord& right) const;

  /// Per-coordinate natural log of the diagonal part.
  std::vector<long double> log_scales() const { return diag_.log_entries(); }
  /// Evaluated image g w of an integer vector, as signed logs.
  std::vector<LogReal> evaluate(const IntVector& w) const;

 private:
  Dims dims_;
  DiagonalElement diag_;
  Matrix mat_;
  std::vector<std::string> labels_;
};

/// y = word * Z^{n+1}.
struct LatticePoint {
  FlowWord word;

  explicit LatticePoint(const Dims& dims) : word(dims) {}
  explicit LatticePoint(FlowWord w) : word(std::move(w)) {}

  const Dims& dims() const { return word.dims(); }
  /// Z^{n+1}.
  static LatticePoint standard(const Dims& dims) { return LatticePoint(dims); }
  /// y_A = u_A Z^{n+1}.
  static LatticePoint from_A(const std::vector<Number>& A, const Dims& dims);
  /// u(x) Z^{n+1}.
  static LatticePoint from_x(const std::vector<Number>& x, const Dims& dims);

  /// h * y for a word h.
  LatticePoint acted(const FlowWord& h) const { return LatticePoint(h * word); }
  LatticePoint flowed(FlowKind kind, double t) const;
};

struct EnumOptions {
  std::uint64_t node_budget = 10'000'000;
  /// Recover a generating set for each enumerated decomposable.
  bool with_generators = true;
};

/// A lattice vector found by enumeration.
struct ShortVector {
  IntVector w;                  ///< integer coordinates
  std::vector<LogReal> value;   ///< g w, coordinate-wise
  double log_norm = 0;          ///< log of the sup-norm of g w
};

/// All w != 0, up to sign, with ||g w||_inf <= radius. Ordered by
/// increasing norm, ties broken lexicographically on w.
std::vector<ShortVector> enumerate_short_vectors(const LatticePoint& y, double radius,
                                                 const EnumOptions& opt = {});

struct SystoleResult {
  double log_value = 0;  ///< log lambda_1 (sup-norm)
  IntVector witness;
  double value() const { return std::exp(log_value); }
};

SystoleResult systole(const LatticePoint& y, const EnumOptions& opt = {});

/// A nonzero y-integral decomposable vector g(v_1 ^ ... ^ v_k).
struct IntegralDecomposable {
  int k = 0;
  std::vector<IntVector> generators;  ///< Z-basis of Z^{n+1} intersected with the span
  std::vector<Integer> coords;        ///< primitive Plucker coordinates (first nonzero > 0)
  ExtVector<LogReal> image;           ///< g applied to the wedge

  ExtVector<Rational> v() const;
  double log_norm() const;
};

/// Normalizes integer Plucker coordinates: divides out the content and makes
/// the first nonzero coordinate positive. Returns the sign applied.
int normalize_coords(std::vector<Integer>& coords);

/// Z-basis of {x in Z^N : x ^ c = 0} for decomposable integer c, ordered so
/// that the wedge of the basis equals c exactly.
std::vector<IntVector> generators_of(const std::vector<Integer>& coords, int dim, int grade);

/// All normalized integral decomposables of grade k with ||g v||_inf <= cutoff.
std::vector<IntegralDecomposable> enumerate_decomposables(const LatticePoint& y, int k, double cutoff,
                                                          const EnumOptions& opt = {});

struct MinkowskiCertificate {
  double lambda1 = 0;  ///< shortest sup-norm vector of the sublattice
  double covol = 0;    ///< Euclidean k-covolume
  bool ok = false;     ///< lambda1 <= covol^{1/k}
  IntVector witness;   ///< coefficients on the generators
};

MinkowskiCertificate minkowski_certificate(const std::vector<IntVector>& generators, const LatticePoint& y,
                                           const EnumOptions& opt = {});

}  // namespace affsing::lattice
