#ifndef LAPLACE_INVARIANTS_HPP
#define LAPLACE_INVARIANTS_HPP

#include <vector>

#include "laplace/phylon.hpp"
#include "laplace/series.hpp"
#include "laplace/tensor.hpp"

namespace laplace {

/// Lambda_i in factored form (2 pi)^{d/2} det(f_ij)^{-1/2} * rational_part.
struct ScaledInvariant {
  int dim = 0;
  int order = 0;
  Rat det_f;
  Rat rational_part;
};

struct InvariantSequence {
  int dim = 0;
  int max_order = 0;
  std::vector<ScaledInvariant> values;  // orders 0..max_order
};

/// Degree-m homogeneous part of a series as a symmetric derivative tensor
/// (entries a_{i_1...i_m} = alpha! c_alpha).
SymTensor homogeneous_tensor(const TruncatedSeries& a, int m);

/// E[x^{i_1}...x^{i_m}] for a centered Gaussian, via the pair-partition sum
/// (computed by first-index Wick contraction). Zero for odd m.
Rat gaussian_moment(const MomentSpec& spec, const std::vector<int>& indices);

/// Gaussian expectation of a homogeneous polynomial, two independent routes.
Rat expect_pairing(const MomentSpec& spec, const TruncatedSeries& hom);
Rat expect_heat(const MomentSpec& spec, const TruncatedSeries& hom);

/// Lambda_i(f, b) through the heat-operator route (primary path).
ScaledInvariant lambda_general(const PairInstance& pair, int i);
/// Same value through literal Wick pair-partition sums (oracle path).
ScaledInvariant lambda_general_pairing(const PairInstance& pair, int i);

/// Lambda_i(b) = Lambda_i(q, b), reduced complete-trace formula.
ScaledInvariant lambda_reduced(const TruncatedSeries& b, int i);

InvariantSequence invariant_sequence(const PairInstance& pair, int max_order);

/// Exact equality of two invariant sequences, comparing squared rational
/// parts cross-multiplied by the determinants plus matching signs.
bool invariant_equal(const InvariantSequence& a, const InvariantSequence& c);

}  // namespace laplace

#endif
