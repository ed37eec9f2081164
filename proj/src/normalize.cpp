#include "laplace/normalize.hpp"

#include <stdexcept>

#include "laplace/invariants.hpp"
#include "laplace/tensor.hpp"

namespace laplace {

namespace {

// Exact Cholesky of an SPD rational matrix; every pivot must be a rational
// square for the factor to stay rational.
std::vector<std::vector<Rat>> rational_cholesky(
    const std::vector<std::vector<Rat>>& m) {
  size_t n = m.size();
  std::vector<std::vector<Rat>> a = m;
  std::vector<std::vector<Rat>> r(n, std::vector<Rat>(n, Rat(0)));
  for (size_t j = 0; j < n; ++j) {
    Rat pivot = a[j][j];
    for (size_t k = 0; k < j; ++k) pivot -= r[k][j] * r[k][j];
    auto root = rational_sqrt(pivot);
    if (!root || sgn(*root) == 0)
      throw std::domain_error(
          "morse_normalize: Cholesky pivot is not a positive rational square");
    r[j][j] = *root;
    for (size_t c = j + 1; c < n; ++c) {
      Rat s = a[j][c];
      for (size_t k = 0; k < j; ++k) s -= r[k][j] * r[k][c];
      r[j][c] = s / r[j][j];
    }
  }
  return r;  // upper triangular, r^T r = m
}

// Homogeneous Euler-identity vector field: v^i = (1/(2k)) d_i h for a
// degree-k homogeneous h, so that 2 x.v(x) = h(x).
std::vector<TruncatedSeries> euler_field(const TruncatedSeries& h, int k) {
  std::vector<TruncatedSeries> v;
  Rat c(1, 2 * k);
  for (int i = 1; i <= h.dim(); ++i)
    v.push_back(c * h.derivative(i).as_polynomial(h.trunc()));
  return v;
}

// Extends a map that preserves q to leading order into one preserving q
// exactly through its truncation, adding only corrections of strictly
// higher degree than the given floor.
PhylonMap spherical_complete(PhylonMap psi, int degree_floor) {
  int d = psi.dim(), n = psi.trunc();
  TruncatedSeries q = standard_quadratic(d, n);
  for (;;) {
    TruncatedSeries r = compose(q, psi.components()) - q;
    if (r.is_zero()) break;
    int j = r.valuation();
    if (j <= degree_floor)
      throw std::logic_error("spherical_complete: residual below correction floor");
    auto v = euler_field(r.homogeneous_part(j), j);
    std::vector<TruncatedSeries> comps;
    for (int i = 1; i <= d; ++i)
      comps.push_back(psi.component(i) - v[static_cast<size_t>(i - 1)].jet(n));
    psi = PhylonMap(d, n, std::move(comps));
  }
  return psi;
}

bool jet_matches(const PhylonMap& psi, const TruncatedSeries& b_cur,
                 const TruncatedSeries& c_target, int k) {
  return act_on_b(psi, b_cur).same_jet(c_target, k);
}

}  // namespace

TruncatedSeries standard_quadratic(int dim, int trunc) {
  TruncatedSeries q(dim, trunc);
  for (int i = 0; i < dim; ++i) {
    MultiIndex a(dim);
    a.exp[static_cast<size_t>(i)] = 2;
    q.set_coeff(a, Rat(1));
  }
  return q;
}

PhylonMap morse_normalize(const TruncatedSeries& f) {
  int d = f.dim(), n = f.trunc();
  if (n < 2) throw std::invalid_argument("morse_normalize: f must be known to order 2");
  if (sgn(f.constant_term()) != 0)
    throw std::invalid_argument("morse_normalize: f must have zero constant term");
  for (int i = 1; i <= d; ++i)
    if (sgn(f.tensor_coeff({i})) != 0)
      throw std::invalid_argument("morse_normalize: f must have zero linear term");
  std::vector<std::vector<Rat>> half(static_cast<size_t>(d),
                                     std::vector<Rat>(static_cast<size_t>(d)));
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j)
      half[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] =
          f.tensor_coeff({i, j}) / 2;
  if (!is_positive_definite(half))
    throw std::domain_error("morse_normalize: Hessian is not positive-definite");
  auto r = rational_cholesky(half);
  auto rinv = inverse(r);
  PhylonMap phi = PhylonMap::linear(n, r);
  // corrections compose with the linear part of phi, which stays equal to R
  PhylonMap phi_lin = phi;
  TruncatedSeries q = standard_quadratic(d, n);
  PhylonMap rinv_map = PhylonMap::linear(n, rinv);
  for (int k = 3; k <= n; ++k) {
    TruncatedSeries e = (f - compose(q, phi.components())).homogeneous_part(k);
    if (e.is_zero()) continue;
    // absorb e by a correction delta(x) = v(Rx) with 2 y.v(y) = e(R^{-1} y)
    TruncatedSeries h = compose(e, rinv_map.components());
    auto v = euler_field(h, k);
    std::vector<TruncatedSeries> comps;
    for (int i = 1; i <= d; ++i)
      comps.push_back(phi.component(i) +
                      compose(v[static_cast<size_t>(i - 1)], phi_lin.components())
                          .as_polynomial(n));
    phi = PhylonMap(d, n, std::move(comps));
  }
  if (!compose(q, phi.components()).same_jet(f, n))
    throw std::logic_error("morse_normalize: verification failed");
  return phi;
}

PhylonMap spherical_step(const TruncatedSeries& b_cur,
                         const TruncatedSeries& c_target, int k) {
  int d = b_cur.dim();
  if (d < 2) throw std::domain_error("spherical_step requires dimension > 1");
  if (c_target.dim() != d) throw std::invalid_argument("dimension mismatch");
  int nb = std::min(b_cur.trunc(), c_target.trunc());
  if (nb < k) throw std::invalid_argument("spherical_step: jets known below k");
  if (k >= 1 && !b_cur.same_jet(c_target, k - 1))
    throw std::invalid_argument("spherical_step: inputs differ below degree k");
  int trunc = std::max(k + 1, nb + 1);
  TruncatedSeries diff = (c_target.jet(k) - b_cur.jet(k)).homogeneous_part(k);
  if (diff.is_zero()) return PhylonMap::identity(d, trunc);
  Rat b0 = b_cur.constant_term();
  SymTensor z = homogeneous_tensor(diff, k);
  z *= Rat(1) / b0;
  if (sgn(complete_trace(z)) != 0)
    throw std::domain_error(
        "spherical_step: difference tensor has nonzero complete trace");
  KTensor x = solve_t(z);
  // phi = id + (1/(k+1)!) psi^i-block, with the block read off X
  std::vector<TruncatedSeries> comps;
  for (int i = 1; i <= d; ++i) {
    TruncatedSeries s = TruncatedSeries::variable(d, trunc, i);
    for (const auto& [key, val] : x.entries()) {
      if (key.first != i) continue;
      MultiIndex alpha(d);
      for (int v : key.second) ++alpha.exp[static_cast<size_t>(v - 1)];
      Rat fac(1);
      for (int e : alpha.exp) fac *= factorial(static_cast<unsigned>(e));
      s.set_coeff(alpha, s.coeff(alpha) + val / fac);
    }
    comps.push_back(std::move(s));
  }
  PhylonMap phi = spherical_complete(PhylonMap(d, trunc, std::move(comps)), k + 1);
  PhylonMap psi = invert_phylon(phi);
  if (jet_matches(psi, b_cur, c_target, k)) return psi;
  if (jet_matches(phi, b_cur, c_target, k)) return phi;
  throw std::logic_error("spherical_step: neither direction verifies");
}

EquivalenceVerdict decide_equivalence(const PairInstance& a,
                                      const PairInstance& c, int degree) {
  int d = a.dim();
  if (d < 2)
    throw std::domain_error("decide_equivalence requires d > 1; use the d=1 routines");
  if (c.dim() != d) throw std::invalid_argument("dimension mismatch");
  if (a.f().trunc() < degree + 1 || c.f().trunc() < degree + 1 ||
      a.b().trunc() < degree || c.b().trunc() < degree)
    throw std::invalid_argument("decide_equivalence: jets insufficient for degree");
  PhylonMap phi_a = morse_normalize(a.f());
  PhylonMap phi_c = morse_normalize(c.f());
  TruncatedSeries b1 = act_on_b(phi_a, a.b());
  TruncatedSeries c1 = act_on_b(phi_c, c.b());
  int nb = std::min(b1.trunc(), c1.trunc());
  b1 = b1.jet(nb);
  c1 = c1.jet(nb);
  EquivalenceVerdict verdict;
  if (b1.constant_term() != c1.constant_term()) {
    verdict.failure_order = 0;
    return verdict;
  }
  PhylonMap sigma = PhylonMap::identity(d, nb + 1);
  TruncatedSeries cur = b1;
  for (int k = 1; k <= degree; ++k) {
    if (cur.same_jet(c1, k)) continue;
    try {
      PhylonMap step = spherical_step(cur, c1, k);
      cur = act_on_b(step, cur).jet(nb);
      sigma = compose_phylon(step, sigma);
    } catch (const std::domain_error&) {
      verdict.failure_order = k;
      return verdict;
    }
  }
  PhylonMap witness =
      compose_phylon(invert_phylon(phi_c), compose_phylon(sigma, phi_a));
  if (!act_on_f(witness, a.f()).same_jet(c.f(), degree) ||
      !act_on_b(witness, a.b()).same_jet(c.b(), degree))
    throw std::logic_error("decide_equivalence: witness verification failed");
  verdict.equivalent = true;
  verdict.witness = EquivalenceWitness{witness, degree};
  return verdict;
}

}  // namespace laplace
