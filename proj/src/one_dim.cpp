#include "laplace/one_dim.hpp"

#include <cmath>
#include <stdexcept>

namespace laplace {

namespace {

void require_compatible(Rat& s1, const Rat& b1, const Rat& s2, const Rat& b2) {
  if (sgn(b1) == 0) {
    s1 = s2;
    return;
  }
  if (sgn(b2) == 0) return;
  if (s1 != s2)
    throw std::invalid_argument("QuadExt arithmetic across different radicands");
}

}  // namespace

QuadExt::QuadExt(Rat a, Rat b, Rat s)
    : a_(std::move(a)), b_(std::move(b)), s_(std::move(s)) {
  if (sgn(s_) <= 0) throw std::invalid_argument("QuadExt radicand must be positive");
  if (sgn(b_) == 0) {
    s_ = Rat(1);
    return;
  }
  if (auto r = rational_sqrt(s_)) {  // collapse perfect squares to Q
    a_ += b_ * *r;
    b_ = Rat(0);
    s_ = Rat(1);
  }
}

QuadExt QuadExt::sqrt_of(const Rat& v) {
  if (sgn(v) <= 0) throw std::domain_error("QuadExt::sqrt_of needs a positive argument");
  return QuadExt(Rat(0), Rat(1), v);
}

int QuadExt::sign() const {
  int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  Rat lhs = a_ * a_, rhs = b_ * b_ * s_;
  if (lhs == rhs) return 0;
  return lhs > rhs ? sa : sb;
}

double QuadExt::to_d() const {
  return to_double(a_) + to_double(b_) * std::sqrt(to_double(s_));
}

QuadExt& QuadExt::operator+=(const QuadExt& o) {
  require_compatible(s_, b_, o.s_, o.b_);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& o) { return *this += -o; }

QuadExt& QuadExt::operator*=(const QuadExt& o) {
  require_compatible(s_, b_, o.s_, o.b_);
  Rat a = a_ * o.a_ + b_ * o.b_ * s_;
  Rat b = a_ * o.b_ + b_ * o.a_;
  a_ = a;
  b_ = b;
  if (sgn(b_) == 0) s_ = Rat(1);
  return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& o) {
  if (o.is_zero()) throw std::domain_error("QuadExt division by zero");
  Rat norm = o.a_ * o.a_ - o.b_ * o.b_ * o.s_;
  if (sgn(norm) == 0) throw std::domain_error("QuadExt division by zero norm");
  QuadExt conj(o.a_ / norm, -o.b_ / norm, o.s_);
  return *this *= conj;
}

bool quadext_equal(const QuadExt& x, const QuadExt& y) {
  const Rat t = x.rat_part() - y.rat_part();
  const Rat &b1 = x.irr_part(), &b2 = y.irr_part();
  const Rat &s1 = x.radicand(), &s2 = y.radicand();
  // t + b1 sqrt(s1) = b2 sqrt(s2)
  if (sgn(b1) == 0 && sgn(b2) == 0) return sgn(t) == 0;
  if (sgn(t) == 0) {
    if (sgn(b1) == 0 || sgn(b2) == 0) return false;
    return sgn(b1) == sgn(b2) && b1 * b1 * s1 == b2 * b2 * s2;
  }
  if (sgn(b1) == 0)
    return sgn(t) == sgn(b2) && t * t == b2 * b2 * s2;
  if (sgn(b2) == 0)
    return sgn(-t) == sgn(b1) && t * t == b1 * b1 * s1;
  // both radicals present with a rational offset: squaring forces sqrt(s1)
  // rational, which the constructor would have collapsed
  return false;
}

Series1 Series1::from_rational(const TruncatedSeries& s) {
  if (s.dim() != 1) throw std::invalid_argument("Series1 needs a d=1 series");
  Series1 out(s.trunc());
  for (const auto& [a, c] : s.coeffs()) out.coeff(a.degree()) = QuadExt(c);
  return out;
}

Series1 Series1::jet(int k) const {
  if (k > trunc()) throw std::invalid_argument("jet order exceeds truncation");
  Series1 out(k);
  for (int j = 0; j <= k; ++j) out.coeff(j) = coeff(j);
  return out;
}

bool Series1::same_jet(const Series1& o, int k) const {
  if (k > trunc() || k > o.trunc())
    throw std::invalid_argument("jet comparison beyond known order");
  for (int j = 0; j <= k; ++j)
    if (!quadext_equal(coeff(j), o.coeff(j))) return false;
  return true;
}

Series1 mul1(const Series1& a, const Series1& b) {
  int n = std::min(a.trunc(), b.trunc());
  Series1 out(n);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n - i; ++j)
      out.coeff(i + j) += a.coeff(i) * b.coeff(j);
  return out;
}

Series1 compose1(const Series1& a, const Series1& g) {
  if (!g.coeff(0).is_zero())
    throw std::invalid_argument("compose1: inner constant term must vanish");
  int n = std::min(a.trunc(), g.trunc());
  Series1 out(n);
  out.coeff(0) = a.coeff(0);
  Series1 pw(n);
  pw.coeff(0) = QuadExt(Rat(1));
  for (int j = 1; j <= n; ++j) {
    pw = mul1(pw, g.jet(n));
    for (int m = 0; m <= n; ++m) out.coeff(m) += a.coeff(j) * pw.coeff(m);
  }
  return out;
}

Series1 invert1(const Series1& g) {
  if (!g.coeff(0).is_zero() || g.coeff(1).is_zero())
    throw std::invalid_argument("invert1: map must fix 0 with nonzero slope");
  int n = g.trunc();
  QuadExt slope_inv = QuadExt(Rat(1)) / g.coeff(1);
  Series1 h(n);
  h.coeff(1) = slope_inv;
  for (int k = 2; k <= n; ++k) {
    Series1 r = compose1(g, h);
    r.coeff(1) -= QuadExt(Rat(1));
    h.coeff(k) -= slope_inv * r.coeff(k);
  }
  return h;
}

Series1 derivative1(const Series1& a) {
  int n = a.trunc();
  Series1 out(n > 0 ? n - 1 : 0);
  for (int j = 1; j <= n; ++j) out.coeff(j - 1) = a.coeff(j) * QuadExt(Rat(j));
  return out;
}

Series1 act_on_b1(const Series1& psi, const Series1& b) {
  Series1 inv = invert1(psi);
  Series1 jac = derivative1(inv);
  if (jac.coeff(0).sign() < 0)
    for (int j = 0; j <= jac.trunc(); ++j) jac.coeff(j) = -jac.coeff(j);
  return mul1(compose1(b, inv), jac);
}

Rat sqrt_series_radicand(const TruncatedSeries& f) {
  if (f.dim() != 1) throw std::invalid_argument("sqrt_series needs d = 1");
  MultiIndex two(1);
  two.exp[0] = 2;
  return f.coeff(two);
}

Series1 sqrt_series(const TruncatedSeries& f) {
  Rat s = sqrt_series_radicand(f);
  if (sgn(s) <= 0) throw std::domain_error("sqrt_series: f_2 must be positive");
  int n = f.trunc();
  Series1 fq = Series1::from_rational(f);
  if (!fq.coeff(0).is_zero() || !fq.coeff(1).is_zero())
    throw std::invalid_argument("sqrt_series: f must vanish to second order");
  Series1 psi(n - 1);
  psi.coeff(1) = QuadExt::sqrt_of(s);
  // match psi(x)^2 = f(x) order by order: the x^{m} equation is linear in
  // psi_{m-1} once lower coefficients are fixed
  for (int m = 3; m <= n; ++m) {
    QuadExt acc;
    for (int i = 2; i <= m - 2; ++i)
      if (i <= psi.trunc() && m - i <= psi.trunc())
        acc += psi.coeff(i) * psi.coeff(m - i);
    psi.coeff(m - 1) = (fq.coeff(m) - acc) / (QuadExt(Rat(2)) * psi.coeff(1));
  }
  return psi;
}

LambdaSequence lambda_1d(const PairInstance& pair, int max) {
  if (pair.dim() != 1) throw std::invalid_argument("lambda_1d needs d = 1");
  if (pair.f().trunc() < max + 2 || pair.b().trunc() < max)
    throw std::invalid_argument("lambda_1d: jets insufficient for requested order");
  Series1 psi = sqrt_series(pair.f());
  Series1 b = Series1::from_rational(pair.b());
  Series1 t = act_on_b1(psi, b.jet(std::min(b.trunc(), psi.trunc() - 1)));
  LambdaSequence seq;
  seq.radicand = sqrt_series_radicand(pair.f());
  for (int i = 0; i <= max; ++i)
    seq.values.push_back(t.coeff(i) * QuadExt(factorial(static_cast<unsigned>(i))));
  return seq;
}

std::pair<TruncatedSeries, TruncatedSeries> even_odd_split(
    const TruncatedSeries& g) {
  if (g.dim() != 1) throw std::invalid_argument("even_odd_split needs d = 1");
  TruncatedSeries even(1, g.trunc()), odd(1, g.trunc());
  for (const auto& [a, c] : g.coeffs()) {
    if (a.degree() % 2 == 0)
      even.set_coeff(a, c);
    else
      odd.set_coeff(a, c);
  }
  return {even, odd};
}

EquivalenceVerdict decide_equivalence_1d(const PairInstance& a,
                                         const PairInstance& c, int degree) {
  if (a.dim() != 1 || c.dim() != 1)
    throw std::invalid_argument("decide_equivalence_1d needs d = 1");
  LambdaSequence la = lambda_1d(a, degree);
  LambdaSequence lc = lambda_1d(c, degree);
  EquivalenceVerdict verdict;
  for (int i = 0; i <= degree; ++i) {
    if (!quadext_equal(la.values[static_cast<size_t>(i)],
                       lc.values[static_cast<size_t>(i)])) {
      verdict.failure_order = i;
      return verdict;
    }
  }
  // lambda_0 agreement forces the two radicands into the same field, so the
  // composite normalizer has rational coefficients
  Series1 psi_a = sqrt_series(a.f());
  Series1 psi_c = sqrt_series(c.f());
  Rat sa = sqrt_series_radicand(a.f());
  Rat sc = sqrt_series_radicand(c.f());
  auto ratio_root = rational_sqrt(sc / sa);
  if (!ratio_root)
    throw std::logic_error("decide_equivalence_1d: radicands fail to align");
  int n = std::min(psi_a.trunc(), psi_c.trunc());
  Series1 conv(n);
  for (int j = 0; j <= n; ++j) {
    const QuadExt& v = psi_c.coeff(j);
    conv.coeff(j) =
        QuadExt(v.rat_part()) + QuadExt(v.irr_part() * *ratio_root, Rat(0), Rat(1)) *
                                    QuadExt::sqrt_of(sa);
  }
  Series1 w = compose1(invert1(conv), psi_a.jet(n));
  TruncatedSeries comp(1, n);
  for (int j = 1; j <= n; ++j) {
    const QuadExt& v = w.coeff(j);
    if (!v.is_rational())
      throw std::logic_error("decide_equivalence_1d: witness not rational");
    MultiIndex m(1);
    m.exp[0] = j;
    comp.set_coeff(m, v.rat_part());
  }
  PhylonMap witness(1, n, {comp});
  int verify_to = std::min(degree, n - 1);
  if (!act_on_f(witness, a.f()).same_jet(c.f(), std::min(degree + 2, n)) ||
      !act_on_b(witness, a.b()).same_jet(c.b(), verify_to))
    throw std::logic_error("decide_equivalence_1d: witness verification failed");
  verdict.equivalent = true;
  verdict.witness = EquivalenceWitness{witness, verify_to};
  return verdict;
}

}  // namespace laplace
