#include "laplace/invariants.hpp"

#include <map>
#include <stdexcept>

namespace laplace {

namespace {

// Memoized first-index Wick contraction: E[x^alpha] as a sum over all pair
// partitions of the alpha slots, each pair contributing a covariance entry.
class WickTable {
 public:
  explicit WickTable(const MomentSpec& spec) : spec_(spec) {}

  Rat moment(const std::vector<int>& alpha) {
    int deg = 0;
    for (int e : alpha) deg += e;
    if (deg == 0) return Rat(1);
    if (deg % 2 != 0) return Rat(0);
    auto it = memo_.find(alpha);
    if (it != memo_.end()) return it->second;
    size_t v = 0;
    while (alpha[v] == 0) ++v;
    std::vector<int> rest = alpha;
    --rest[v];
    Rat s(0);
    for (size_t w = 0; w < rest.size(); ++w) {
      if (rest[w] == 0) continue;
      int mult = rest[w];
      std::vector<int> next = rest;
      --next[w];
      s += mult * spec_.cov(static_cast<int>(v) + 1, static_cast<int>(w) + 1) *
           moment(next);
    }
    memo_[alpha] = s;
    return s;
  }

 private:
  const MomentSpec& spec_;
  std::map<std::vector<int>, Rat> memo_;
};

TruncatedSeries heat_once(const MomentSpec& spec, const TruncatedSeries& p) {
  int d = p.dim();
  TruncatedSeries out(d, p.trunc() - 2);
  for (int j = 1; j <= d; ++j)
    for (int k = 1; k <= d; ++k) {
      TruncatedSeries t = p.derivative(j).derivative(k);
      out += Rat(1, 2) * spec.cov(j, k) * t;
    }
  return out;
}

// The factored sum over l of (-1)^l/l! E[(f~^l b)_{deg i+2l}]; the expectation
// functional is the only thing the two routes disagree on.
template <typename Expect>
Rat rational_part(const PairInstance& pair, int i, Expect&& expect) {
  const TruncatedSeries& f = pair.f();
  const TruncatedSeries& b = pair.b();
  if (f.trunc() < i + 2)
    throw std::invalid_argument("lambda: f must be known to jet order i+2");
  if (b.trunc() < i)
    throw std::invalid_argument("lambda: b must be known to jet order i");
  int d = pair.dim();
  MomentSpec cov(d, inverse(pair.hessian()));
  TruncatedSeries ftilde = f - f.homogeneous_part(2);
  Rat p(0);
  for (int l = 0; l <= i; ++l) {
    int deg = i + 2 * l;
    // f~ has valuation 3, so the degree-(i+2l) part of f~^l b only touches
    // coefficients of f through degree i+2 and of b through degree i
    TruncatedSeries pw = TruncatedSeries::constant(d, deg, Rat(1));
    TruncatedSeries fpoly = ftilde.as_polynomial(deg);
    for (int t = 0; t < l; ++t) pw = mul_poly(pw, fpoly, deg);
    TruncatedSeries hom =
        mul_poly(pw, b.as_polynomial(deg), deg).homogeneous_part(deg);
    if (hom.is_zero()) continue;
    Rat term = expect(cov, hom) / factorial(static_cast<unsigned>(l));
    if (l % 2 == 0)
      p += term;
    else
      p -= term;
  }
  return p;
}

}  // namespace

SymTensor homogeneous_tensor(const TruncatedSeries& a, int m) {
  SymTensor out(a.dim(), m);
  TruncatedSeries hom = a.homogeneous_part(m);
  for (const auto& [alpha, c] : hom.coeffs()) {
    (void)c;
    SymTensor::Key idx;
    for (int v = 0; v < alpha.dim(); ++v)
      for (int e = 0; e < alpha.exp[static_cast<size_t>(v)]; ++e)
        idx.push_back(v + 1);
    out.set(idx, a.tensor_coeff(idx));
  }
  return out;
}

Rat gaussian_moment(const MomentSpec& spec, const std::vector<int>& indices) {
  std::vector<int> alpha(static_cast<size_t>(spec.dim()), 0);
  for (int v : indices) {
    if (v < 1 || v > spec.dim())
      throw std::invalid_argument("gaussian_moment: index out of range");
    ++alpha[static_cast<size_t>(v - 1)];
  }
  WickTable w(spec);
  return w.moment(alpha);
}

Rat expect_pairing(const MomentSpec& spec, const TruncatedSeries& hom) {
  WickTable w(spec);
  Rat s(0);
  for (const auto& [alpha, c] : hom.coeffs()) s += c * w.moment(alpha.exp);
  return s;
}

Rat expect_heat(const MomentSpec& spec, const TruncatedSeries& hom) {
  int deg = hom.valuation();
  if (hom.is_zero()) return Rat(0);
  if (deg % 2 != 0) return Rat(0);
  TruncatedSeries p = hom;
  for (int t = 0; t < deg / 2; ++t) p = heat_once(spec, p);
  return p.constant_term() / factorial(static_cast<unsigned>(deg / 2));
}

ScaledInvariant lambda_general(const PairInstance& pair, int i) {
  ScaledInvariant out;
  out.dim = pair.dim();
  out.order = i;
  out.det_f = det(pair.hessian());
  out.rational_part =
      i % 2 != 0 ? Rat(0) : rational_part(pair, i, expect_heat);
  return out;
}

ScaledInvariant lambda_general_pairing(const PairInstance& pair, int i) {
  ScaledInvariant out;
  out.dim = pair.dim();
  out.order = i;
  out.det_f = det(pair.hessian());
  out.rational_part =
      i % 2 != 0 ? Rat(0) : rational_part(pair, i, expect_pairing);
  return out;
}

ScaledInvariant lambda_reduced(const TruncatedSeries& b, int i) {
  if (b.trunc() < i)
    throw std::invalid_argument("lambda_reduced: b must be known to jet order i");
  ScaledInvariant out;
  out.dim = b.dim();
  out.order = i;
  out.det_f = Rat(1);
  for (int t = 0; t < b.dim(); ++t) out.det_f *= 2;  // det of the Hessian of q
  if (i % 2 != 0) {
    out.rational_part = Rat(0);
    return out;
  }
  Rat ctr = complete_trace(homogeneous_tensor(b, i));
  Rat denom = factorial(static_cast<unsigned>(i / 2));
  for (int t = 0; t < i; ++t) denom *= 2;
  out.rational_part = ctr / denom;
  return out;
}

InvariantSequence invariant_sequence(const PairInstance& pair, int max_order) {
  InvariantSequence seq;
  seq.dim = pair.dim();
  seq.max_order = max_order;
  for (int i = 0; i <= max_order; ++i) seq.values.push_back(lambda_general(pair, i));
  return seq;
}

bool invariant_equal(const InvariantSequence& a, const InvariantSequence& c) {
  if (a.dim != c.dim || a.max_order != c.max_order)
    throw std::invalid_argument("invariant_equal: mismatched sequences");
  for (int i = 0; i <= a.max_order; ++i) {
    const auto& x = a.values[static_cast<size_t>(i)];
    const auto& y = c.values[static_cast<size_t>(i)];
    if (sgn(x.rational_part) != sgn(y.rational_part)) return false;
    if (x.rational_part * x.rational_part * y.det_f !=
        y.rational_part * y.rational_part * x.det_f)
      return false;
  }
  return true;
}

}  // namespace laplace
