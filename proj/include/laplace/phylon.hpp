#ifndef LAPLACE_PHYLON_HPP
#define LAPLACE_PHYLON_HPP

#include <vector>

#include "laplace/series.hpp"

namespace laplace {

/// An element of the group P(d) of formal diffeomorphism jets fixing the
/// origin: d component series with zero constant term and an invertible
/// linear part.
class PhylonMap {
 public:
  PhylonMap(int dim, int trunc, std::vector<TruncatedSeries> components);

  static PhylonMap identity(int dim, int trunc);
  static PhylonMap linear(int trunc, const std::vector<std::vector<Rat>>& matrix);

  int dim() const { return dim_; }
  int trunc() const { return trunc_; }
  const std::vector<TruncatedSeries>& components() const { return comps_; }
  const TruncatedSeries& component(int i) const;  // 1-based

  /// Matrix of the linear part, entries psi^i_j.
  std::vector<std::vector<Rat>> linear_part() const;

  PhylonMap jet(int k) const;
  bool is_identity_jet(int k) const;

 private:
  int dim_;
  int trunc_;
  std::vector<TruncatedSeries> comps_;
};

/// Componentwise composition a(c(x)), truncated to the common jet order.
PhylonMap compose_phylon(const PhylonMap& a, const PhylonMap& c);

/// Exact inverse, built degree by degree against the inverse linear part.
PhylonMap invert_phylon(const PhylonMap& a);

/// (psi f)(x) = f(psi^{-1}(x)); exact to min(f.trunc, psi.trunc).
TruncatedSeries act_on_f(const PhylonMap& psi, const TruncatedSeries& f);

/// (psi b)(x) = b(psi^{-1}(x)) |det d(psi^{-1})|; exact to
/// min(b.trunc, psi.trunc - 1).
TruncatedSeries act_on_b(const PhylonMap& psi, const TruncatedSeries& b);

/// Largest k <= trunc-1 with jet_k(psi) = identity; 0 when the linear part
/// already differs from the identity.
int kernel_level(const PhylonMap& psi);

/// Determinant of the Jacobian matrix d(psi^i)/dx^j as a series, by exact
/// cofactor expansion; exact to psi.trunc - 1.
TruncatedSeries jacobian_det(const PhylonMap& psi);

/// A pair (f, b) in M(d) x V(d): f with a positive-definite Hessian and no
/// constant or linear term, b with nonzero constant term.
class PairInstance {
 public:
  PairInstance(TruncatedSeries f, TruncatedSeries b);

  int dim() const { return f_.dim(); }
  const TruncatedSeries& f() const { return f_; }
  const TruncatedSeries& b() const { return b_; }

  /// Hessian f_ij in the derivative-tensor convention.
  std::vector<std::vector<Rat>> hessian() const;

 private:
  TruncatedSeries f_;
  TruncatedSeries b_;
};

/// Transport of a pair: (psi f, psi b).
PairInstance act_on_pair(const PhylonMap& psi, const PairInstance& p);

}  // namespace laplace

#endif
