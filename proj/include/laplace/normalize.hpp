#ifndef LAPLACE_NORMALIZE_HPP
#define LAPLACE_NORMALIZE_HPP

#include <optional>

#include "laplace/phylon.hpp"

namespace laplace {

/// The standard quadratic form ||x||^2 as a series.
TruncatedSeries standard_quadratic(int dim, int trunc);

struct EquivalenceWitness {
  PhylonMap psi;
  int verified_to = 0;
};

struct EquivalenceVerdict {
  bool equivalent = false;
  std::optional<EquivalenceWitness> witness;
  std::optional<int> failure_order;
};

/// Formal Morse reduction: returns phi with q(phi(x)) = f(x) exactly to
/// f's truncation order; equivalently act_on_f(phi, f) = q. Exact mode:
/// the Cholesky pivots of the half-Hessian must be rational squares.
PhylonMap morse_normalize(const TruncatedSeries& f);

/// One degree-k step of the spherical equivalence procedure: returns a
/// q-preserving map psi, identity through degree k, with
/// jet_k(act_on_b(psi, b_cur)) = jet_k(c_target). Requires d > 1,
/// jet_{k-1} agreement, and a vanishing complete trace of the degree-k
/// difference tensor.
PhylonMap spherical_step(const TruncatedSeries& b_cur,
                         const TruncatedSeries& c_target, int k);

/// Full decision procedure for d > 1: Morse-normalize both pairs, then run
/// spherical steps through `degree`, returning either a verified witness or
/// the first order at which the pairs provably differ.
EquivalenceVerdict decide_equivalence(const PairInstance& a,
                                      const PairInstance& c, int degree);

}  // namespace laplace

#endif
