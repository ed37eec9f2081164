#include "laplace/phylon.hpp"

#include <functional>
#include <stdexcept>

namespace laplace {

PhylonMap::PhylonMap(int dim, int trunc, std::vector<TruncatedSeries> components)
    : dim_(dim), trunc_(trunc), comps_(std::move(components)) {
  if (trunc < 1) throw std::invalid_argument("phylon map needs trunc >= 1");
  if (static_cast<int>(comps_.size()) != dim)
    throw std::invalid_argument("phylon map needs d component series");
  for (auto& c : comps_) {
    if (c.dim() != dim) throw std::invalid_argument("phylon component dimension mismatch");
    if (c.trunc() < trunc) throw std::invalid_argument("phylon component truncated below map order");
    if (sgn(c.constant_term()) != 0)
      throw std::invalid_argument("phylon component must have zero constant term");
    if (c.trunc() > trunc) c = c.jet(trunc);
  }
  if (sgn(det(linear_part())) == 0)
    throw std::invalid_argument("phylon linear part must be invertible");
}

PhylonMap PhylonMap::identity(int dim, int trunc) {
  std::vector<TruncatedSeries> comps;
  for (int i = 1; i <= dim; ++i)
    comps.push_back(TruncatedSeries::variable(dim, trunc, i));
  return PhylonMap(dim, trunc, std::move(comps));
}

PhylonMap PhylonMap::linear(int trunc, const std::vector<std::vector<Rat>>& matrix) {
  int dim = static_cast<int>(matrix.size());
  std::vector<TruncatedSeries> comps;
  for (int i = 0; i < dim; ++i) {
    TruncatedSeries s(dim, trunc);
    for (int j = 0; j < dim; ++j) {
      MultiIndex a(dim);
      a.exp[static_cast<size_t>(j)] = 1;
      s.set_coeff(a, matrix[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    }
    comps.push_back(std::move(s));
  }
  return PhylonMap(dim, trunc, std::move(comps));
}

const TruncatedSeries& PhylonMap::component(int i) const {
  return comps_[static_cast<size_t>(i - 1)];
}

std::vector<std::vector<Rat>> PhylonMap::linear_part() const {
  std::vector<std::vector<Rat>> m(static_cast<size_t>(dim_),
                                  std::vector<Rat>(static_cast<size_t>(dim_)));
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      MultiIndex a(dim_);
      a.exp[static_cast<size_t>(j)] = 1;
      m[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          comps_[static_cast<size_t>(i)].coeff(a);
    }
  return m;
}

PhylonMap PhylonMap::jet(int k) const {
  std::vector<TruncatedSeries> comps;
  for (const auto& c : comps_) comps.push_back(c.jet(k));
  return PhylonMap(dim_, k, std::move(comps));
}

bool PhylonMap::is_identity_jet(int k) const {
  for (int i = 1; i <= dim_; ++i) {
    TruncatedSeries v = TruncatedSeries::variable(dim_, k, i);
    if (!component(i).same_jet(v, k)) return false;
  }
  return true;
}

PhylonMap compose_phylon(const PhylonMap& a, const PhylonMap& c) {
  if (a.dim() != c.dim()) throw std::invalid_argument("phylon dimension mismatch");
  std::vector<TruncatedSeries> comps = compose_all(a.components(), c.components());
  return PhylonMap(a.dim(), std::min(a.trunc(), c.trunc()), std::move(comps));
}

PhylonMap invert_phylon(const PhylonMap& a) {
  int d = a.dim(), n = a.trunc();
  auto ainv = inverse(a.linear_part());
  PhylonMap phi = PhylonMap::linear(n, ainv);
  for (int k = 2; k <= n; ++k) {
    PhylonMap cur = compose_phylon(a, phi);
    // the residual a(phi(x)) - x starts at degree k; subtracting its image
    // under the inverse linear part raises that valuation each round
    std::vector<TruncatedSeries> res;
    bool done = true;
    for (int j = 1; j <= d; ++j) {
      res.push_back(cur.component(j) - TruncatedSeries::variable(d, n, j));
      if (!res.back().is_zero()) done = false;
    }
    if (done) break;
    std::vector<TruncatedSeries> fixed;
    for (int i = 1; i <= d; ++i) {
      TruncatedSeries c = phi.component(i);
      for (int j = 1; j <= d; ++j)
        c -= ainv[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] *
             res[static_cast<size_t>(j - 1)];
      fixed.push_back(std::move(c));
    }
    phi = PhylonMap(d, n, std::move(fixed));
  }
  return phi;
}

TruncatedSeries act_on_f(const PhylonMap& psi, const TruncatedSeries& f) {
  if (psi.dim() != f.dim()) throw std::invalid_argument("dimension mismatch");
  PhylonMap inv = invert_phylon(psi);
  return compose(f, inv.components());
}

TruncatedSeries jacobian_det(const PhylonMap& psi) {
  int d = psi.dim();
  int jt = psi.trunc() - 1;
  std::vector<std::vector<TruncatedSeries>> m;
  for (int i = 1; i <= d; ++i) {
    std::vector<TruncatedSeries> row;
    for (int j = 1; j <= d; ++j) row.push_back(psi.component(i).derivative(j).jet(jt));
    m.push_back(std::move(row));
  }
  // cofactor expansion along the first row, recursing on column subsets
  std::function<TruncatedSeries(const std::vector<int>&, const std::vector<int>&)> go =
      [&](const std::vector<int>& rows, const std::vector<int>& cols) -> TruncatedSeries {
    if (rows.size() == 1)
      return m[static_cast<size_t>(rows[0])][static_cast<size_t>(cols[0])];
    TruncatedSeries acc(d, jt);
    std::vector<int> subrows(rows.begin() + 1, rows.end());
    for (size_t c = 0; c < cols.size(); ++c) {
      std::vector<int> subcols;
      for (size_t k = 0; k < cols.size(); ++k)
        if (k != c) subcols.push_back(cols[k]);
      TruncatedSeries term =
          mul(m[static_cast<size_t>(rows[0])][static_cast<size_t>(cols[c])],
              go(subrows, subcols));
      if (c % 2 == 0)
        acc += term;
      else
        acc -= term;
    }
    return acc;
  };
  std::vector<int> all(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) all[static_cast<size_t>(i)] = i;
  return go(all, all);
}

TruncatedSeries act_on_b(const PhylonMap& psi, const TruncatedSeries& b) {
  if (psi.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  PhylonMap inv = invert_phylon(psi);
  TruncatedSeries comp = compose(b, inv.components());
  TruncatedSeries jac = jacobian_det(inv);
  // |a| flips the whole series when a(0) < 0
  if (sgn(jac.constant_term()) < 0) jac = -jac;
  return mul(comp, jac);
}

int kernel_level(const PhylonMap& psi) {
  int level = 0;
  for (int k = 1; k <= psi.trunc() - 1; ++k) {
    if (!psi.is_identity_jet(k)) break;
    level = k;
  }
  return level;
}

PairInstance::PairInstance(TruncatedSeries f, TruncatedSeries b)
    : f_(std::move(f)), b_(std::move(b)) {
  if (f_.dim() != b_.dim()) throw std::invalid_argument("pair dimension mismatch");
  if (f_.trunc() < 2) throw std::invalid_argument("f must be known at least to order 2");
  if (sgn(f_.constant_term()) != 0)
    throw std::invalid_argument("f must have zero constant term");
  for (int i = 1; i <= f_.dim(); ++i)
    if (sgn(f_.tensor_coeff({i})) != 0)
      throw std::invalid_argument("f must have zero linear term");
  if (!is_positive_definite(hessian()))
    throw std::invalid_argument("Hessian of f must be positive-definite");
  if (sgn(b_.constant_term()) == 0)
    throw std::invalid_argument("b must have nonzero constant term");
}

std::vector<std::vector<Rat>> PairInstance::hessian() const {
  int d = f_.dim();
  std::vector<std::vector<Rat>> h(static_cast<size_t>(d),
                                  std::vector<Rat>(static_cast<size_t>(d)));
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j)
      h[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] =
          f_.tensor_coeff({i, j});
  return h;
}

PairInstance act_on_pair(const PhylonMap& psi, const PairInstance& p) {
  return PairInstance(act_on_f(psi, p.f()), act_on_b(psi, p.b()));
}

}  // namespace laplace
