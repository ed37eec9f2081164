#ifndef LAPLACE_SERIES_HPP
#define LAPLACE_SERIES_HPP

#include <map>
#include <numeric>
#include <vector>

#include "laplace/rational.hpp"

namespace laplace {

/// Exponent vector of a monomial x^{alpha_1}...x^{alpha_d}.
struct MultiIndex {
  std::vector<int> exp;

  explicit MultiIndex(int dim) : exp(static_cast<size_t>(dim), 0) {}
  explicit MultiIndex(std::vector<int> e) : exp(std::move(e)) {}
  // Braced exponent lists always mean exponents, never a dimension:
  // MultiIndex({2}) is x^2 in one variable, MultiIndex(2) is the zero
  // index in two variables.
  MultiIndex(std::initializer_list<int> e) : exp(e) {}

  int dim() const { return static_cast<int>(exp.size()); }
  int degree() const { return std::accumulate(exp.begin(), exp.end(), 0); }

  bool operator==(const MultiIndex& o) const { return exp == o.exp; }
};

/// Graded lexicographic order; keeps coefficient maps listed degree by degree.
struct GradedLex {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return a.exp < b.exp;
  }
};

/// A formal power series in `dim` variables known exactly through total
/// degree `trunc`. Absent keys are zero; stored coefficients are the
/// monomial coefficients c_alpha of c_alpha x^alpha.
class TruncatedSeries {
 public:
  using CoeffMap = std::map<MultiIndex, Rat, GradedLex>;

  TruncatedSeries(int dim, int trunc);

  static TruncatedSeries constant(int dim, int trunc, const Rat& c);
  /// The series x^var (1-based variable label).
  static TruncatedSeries variable(int dim, int trunc, int var);

  int dim() const { return dim_; }
  int trunc() const { return trunc_; }
  const CoeffMap& coeffs() const { return coeffs_; }

  Rat coeff(const MultiIndex& alpha) const;
  /// Sets a monomial coefficient; degree must not exceed trunc.
  void set_coeff(const MultiIndex& alpha, const Rat& value);

  bool is_zero() const { return coeffs_.empty(); }
  Rat constant_term() const;

  /// Symmetric derivative-tensor coefficient a_{i_1...i_r} = alpha! c_alpha,
  /// `indices` holds 1-based variable labels.
  Rat tensor_coeff(const std::vector<int>& indices) const;

  TruncatedSeries jet(int k) const;
  TruncatedSeries homogeneous_part(int m) const;
  /// Partial derivative with respect to x^var (1-based); trunc drops by one.
  TruncatedSeries derivative(int var) const;

  /// Reinterprets the stored polynomial as exact through degree `new_trunc`.
  /// Only valid when the caller knows the discarded tail cannot reach the
  /// degrees of interest (e.g. products of series with positive valuation).
  TruncatedSeries as_polynomial(int new_trunc) const;

  /// Lowest total degree with a nonzero coefficient; trunc+1 for zero series.
  int valuation() const;

  TruncatedSeries operator-() const;
  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  TruncatedSeries& operator*=(const Rat& s);

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) {
    return a += b;
  }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) {
    return a -= b;
  }
  friend TruncatedSeries operator*(TruncatedSeries a, const Rat& s) {
    return a *= s;
  }
  friend TruncatedSeries operator*(const Rat& s, TruncatedSeries a) {
    return a *= s;
  }

  /// Equality of jets through min(trunc) of the two operands.
  bool same_jet(const TruncatedSeries& o) const;
  bool same_jet(const TruncatedSeries& o, int k) const;

 private:
  int dim_;
  int trunc_;
  CoeffMap coeffs_;

  friend TruncatedSeries mul_poly(const TruncatedSeries& a,
                                  const TruncatedSeries& b, int trunc);
  friend std::vector<TruncatedSeries> compose_all(
      const std::vector<TruncatedSeries>& outers,
      const std::vector<TruncatedSeries>& inner);
};

/// Product truncated to min(a.trunc, b.trunc).
TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);

/// Polynomial product kept through degree `trunc`, ignoring the operands'
/// own truncation orders. Caller is responsible for validity.
TruncatedSeries mul_poly(const TruncatedSeries& a, const TruncatedSeries& b,
                         int trunc);

/// outer(inner_1, ..., inner_d); every inner series must have zero constant
/// term. Result truncated to the minimum truncation among all operands.
TruncatedSeries compose(const TruncatedSeries& outer,
                        const std::vector<TruncatedSeries>& inner);

/// Composes several outer series with the same inner substitution, sharing
/// the cached powers of the inner components across all of them.
std::vector<TruncatedSeries> compose_all(
    const std::vector<TruncatedSeries>& outers,
    const std::vector<TruncatedSeries>& inner);

/// Centered Gaussian on R^d with an exact SPD covariance matrix Sigma^{ij}.
class MomentSpec {
 public:
  MomentSpec(int dim, std::vector<std::vector<Rat>> covariance);

  int dim() const { return dim_; }
  const Rat& cov(int i, int j) const;  // 1-based labels

 private:
  int dim_;
  std::vector<std::vector<Rat>> cov_;
};

/// Exact symmetric matrix utilities used across modules.
bool is_symmetric(const std::vector<std::vector<Rat>>& m);
/// Positive-definiteness via leading principal minors, exact.
bool is_positive_definite(const std::vector<std::vector<Rat>>& m);
Rat det(const std::vector<std::vector<Rat>>& m);
/// Gauss-Jordan inverse; throws on singular input.
std::vector<std::vector<Rat>> inverse(const std::vector<std::vector<Rat>>& m);
/// Solves m x = rhs exactly; throws on singular m.
std::vector<Rat> solve_linear(std::vector<std::vector<Rat>> m,
                              std::vector<Rat> rhs);

}  // namespace laplace

#endif
