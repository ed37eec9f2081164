#ifndef LAPLACE_ONE_DIM_HPP
#define LAPLACE_ONE_DIM_HPP

#include <utility>
#include <vector>

#include "laplace/normalize.hpp"
#include "laplace/phylon.hpp"

namespace laplace {

/// Element a + b sqrt(s) of the quadratic extension Q(sqrt(s)), s > 0.
/// Perfect-square radicands collapse to the rational subfield (b = 0, s = 1).
class QuadExt {
 public:
  QuadExt() : a_(0), b_(0), s_(1) {}
  QuadExt(Rat a) : a_(std::move(a)), b_(0), s_(1) {}  // NOLINT(runtime/explicit)
  QuadExt(Rat a, Rat b, Rat s);

  static QuadExt sqrt_of(const Rat& v);

  const Rat& rat_part() const { return a_; }
  const Rat& irr_part() const { return b_; }
  const Rat& radicand() const { return s_; }
  bool is_rational() const { return sgn(b_) == 0; }

  int sign() const;
  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  double to_d() const;

  QuadExt operator-() const { return QuadExt(-a_, -b_, s_); }
  QuadExt& operator+=(const QuadExt& o);
  QuadExt& operator-=(const QuadExt& o);
  QuadExt& operator*=(const QuadExt& o);
  QuadExt& operator/=(const QuadExt& o);
  friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
  friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
  friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
  friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }

  /// Same-field equality (radicands must be compatible).
  bool operator==(const QuadExt& o) const { return (*this - o).is_zero(); }

 private:
  Rat a_, b_, s_;
};

/// Exact equality across possibly different radicands, by isolating and
/// squaring away the radicals.
bool quadext_equal(const QuadExt& x, const QuadExt& y);

/// Univariate truncated power series over Q(sqrt(s)); coeff(j) multiplies x^j.
class Series1 {
 public:
  Series1(int trunc) : c_(static_cast<size_t>(trunc) + 1) {}  // NOLINT

  int trunc() const { return static_cast<int>(c_.size()) - 1; }
  const QuadExt& coeff(int j) const { return c_[static_cast<size_t>(j)]; }
  QuadExt& coeff(int j) { return c_[static_cast<size_t>(j)]; }

  static Series1 from_rational(const TruncatedSeries& s);

  Series1 jet(int k) const;
  bool same_jet(const Series1& o, int k) const;

 private:
  std::vector<QuadExt> c_;
};

Series1 mul1(const Series1& a, const Series1& b);
/// a(g(x)) for g with zero constant term.
Series1 compose1(const Series1& a, const Series1& g);
/// Compositional inverse of a map with zero constant term, invertible slope.
Series1 invert1(const Series1& g);
Series1 derivative1(const Series1& a);
/// (psi b)(x) = b(psi^{-1}(x)) |d psi^{-1}/dx| for a map with positive slope.
Series1 act_on_b1(const Series1& psi, const Series1& b);

/// The unique psi in P_0(1) with psi(x)^2 = f(x) through f's truncation;
/// coefficients live in Q(sqrt(f_2/2)). Result trunc is f.trunc - 1.
Series1 sqrt_series(const TruncatedSeries& f);

/// Radicand s = f_2/2 used by sqrt_series for this f.
Rat sqrt_series_radicand(const TruncatedSeries& f);

struct LambdaSequence {
  Rat radicand;
  std::vector<QuadExt> values;  // lambda_0 .. lambda_max
};

/// The refined d=1 invariants: Taylor coefficients (derivative convention)
/// of the transported density psi(b) where psi normalizes f to q.
LambdaSequence lambda_1d(const PairInstance& pair, int max);

/// (even part, odd part) of a d=1 series.
std::pair<TruncatedSeries, TruncatedSeries> even_odd_split(
    const TruncatedSeries& g);

/// P_0(1)-equivalence through `degree` by comparing lambda sequences; on
/// success the witness is the rational composite of the two normalizers.
EquivalenceVerdict decide_equivalence_1d(const PairInstance& a,
                                         const PairInstance& c, int degree);

}  // namespace laplace

#endif
