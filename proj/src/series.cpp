#include "laplace/series.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace laplace {

TruncatedSeries::TruncatedSeries(int dim, int trunc) : dim_(dim), trunc_(trunc) {
  if (dim < 1) throw std::invalid_argument("series dimension must be positive");
  if (trunc < 0) throw std::invalid_argument("truncation order must be >= 0");
}

TruncatedSeries TruncatedSeries::constant(int dim, int trunc, const Rat& c) {
  TruncatedSeries s(dim, trunc);
  s.set_coeff(MultiIndex(dim), c);
  return s;
}

TruncatedSeries TruncatedSeries::variable(int dim, int trunc, int var) {
  if (var < 1 || var > dim) throw std::invalid_argument("variable label out of range");
  TruncatedSeries s(dim, trunc);
  MultiIndex a(dim);
  a.exp[static_cast<size_t>(var - 1)] = 1;
  s.set_coeff(a, Rat(1));
  return s;
}

Rat TruncatedSeries::coeff(const MultiIndex& alpha) const {
  auto it = coeffs_.find(alpha);
  return it == coeffs_.end() ? Rat(0) : it->second;
}

void TruncatedSeries::set_coeff(const MultiIndex& alpha, const Rat& value) {
  if (alpha.dim() != dim_) throw std::invalid_argument("multi-index dimension mismatch");
  if (alpha.degree() > trunc_)
    throw std::invalid_argument("monomial degree exceeds truncation order");
  if (sgn(value) == 0)
    coeffs_.erase(alpha);
  else
    coeffs_[alpha] = value;
}

Rat TruncatedSeries::constant_term() const { return coeff(MultiIndex(dim_)); }

Rat TruncatedSeries::tensor_coeff(const std::vector<int>& indices) const {
  int r = static_cast<int>(indices.size());
  if (r > trunc_)
    throw std::invalid_argument("tensor coefficient order exceeds truncation");
  MultiIndex alpha(dim_);
  for (int v : indices) {
    if (v < 1 || v > dim_) throw std::invalid_argument("variable label out of range");
    ++alpha.exp[static_cast<size_t>(v - 1)];
  }
  Rat fac(1);
  for (int e : alpha.exp) fac *= factorial(static_cast<unsigned>(e));
  return fac * coeff(alpha);
}

TruncatedSeries TruncatedSeries::jet(int k) const {
  if (k > trunc_) throw std::invalid_argument("jet order exceeds truncation");
  TruncatedSeries out(dim_, k);
  for (const auto& [a, c] : coeffs_) {
    if (a.degree() > k) break;  // graded order
    out.coeffs_[a] = c;
  }
  return out;
}

TruncatedSeries TruncatedSeries::homogeneous_part(int m) const {
  if (m > trunc_) throw std::invalid_argument("degree exceeds truncation");
  TruncatedSeries out(dim_, trunc_);
  for (const auto& [a, c] : coeffs_)
    if (a.degree() == m) out.coeffs_[a] = c;
  return out;
}

TruncatedSeries TruncatedSeries::derivative(int var) const {
  if (var < 1 || var > dim_) throw std::invalid_argument("variable label out of range");
  if (trunc_ == 0) return TruncatedSeries(dim_, 0);
  TruncatedSeries out(dim_, trunc_ - 1);
  size_t v = static_cast<size_t>(var - 1);
  for (const auto& [a, c] : coeffs_) {
    if (a.exp[v] == 0) continue;
    MultiIndex b = a;
    int e = b.exp[v]--;
    out.coeffs_[b] = c * e;
  }
  return out;
}

TruncatedSeries TruncatedSeries::as_polynomial(int new_trunc) const {
  TruncatedSeries out(dim_, new_trunc);
  for (const auto& [a, c] : coeffs_) {
    if (a.degree() > new_trunc) break;
    out.coeffs_[a] = c;
  }
  return out;
}

int TruncatedSeries::valuation() const {
  if (coeffs_.empty()) return trunc_ + 1;
  return coeffs_.begin()->first.degree();
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries out(dim_, trunc_);
  for (const auto& [a, c] : coeffs_) out.coeffs_[a] = -c;
  return out;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  if (o.dim_ != dim_) throw std::invalid_argument("series dimension mismatch");
  trunc_ = std::min(trunc_, o.trunc_);
  for (const auto& [a, c] : o.coeffs_) {
    if (a.degree() > trunc_) break;
    Rat s = coeff(a) + c;
    if (sgn(s) == 0)
      coeffs_.erase(a);
    else
      coeffs_[a] = s;
  }
  // drop our own tail beyond the new common truncation
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (it->first.degree() > trunc_)
      it = coeffs_.erase(it);
    else
      ++it;
  }
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  return *this += -o;
}

TruncatedSeries& TruncatedSeries::operator*=(const Rat& s) {
  if (sgn(s) == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [a, c] : coeffs_) c *= s;
  return *this;
}

bool TruncatedSeries::same_jet(const TruncatedSeries& o) const {
  return same_jet(o, std::min(trunc_, o.trunc_));
}

bool TruncatedSeries::same_jet(const TruncatedSeries& o, int k) const {
  if (o.dim_ != dim_) return false;
  if (k > trunc_ || k > o.trunc_)
    throw std::invalid_argument("jet comparison beyond known order");
  TruncatedSeries d = jet(k);
  d -= o.jet(k);
  return d.is_zero();
}

TruncatedSeries mul_poly(const TruncatedSeries& a, const TruncatedSeries& b,
                         int trunc) {
  if (a.dim() != b.dim()) throw std::invalid_argument("series dimension mismatch");
  TruncatedSeries out(a.dim(), trunc);
  size_t d = static_cast<size_t>(a.dim());
  MultiIndex key(a.dim());
  for (const auto& [ia, ca] : a.coeffs_) {
    int da = ia.degree();
    if (da > trunc) break;
    for (const auto& [ib, cb] : b.coeffs_) {
      if (da + ib.degree() > trunc) break;
      for (size_t j = 0; j < d; ++j) key.exp[j] = ia.exp[j] + ib.exp[j];
      auto [it, inserted] = out.coeffs_.try_emplace(key, ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  }
  for (auto it = out.coeffs_.begin(); it != out.coeffs_.end();)
    it = sgn(it->second) == 0 ? out.coeffs_.erase(it) : std::next(it);
  return out;
}

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  return mul_poly(a, b, std::min(a.trunc(), b.trunc()));
}

std::vector<TruncatedSeries> compose_all(
    const std::vector<TruncatedSeries>& outers,
    const std::vector<TruncatedSeries>& inner) {
  if (outers.empty()) return {};
  int odim = outers.front().dim();
  for (const auto& o : outers)
    if (o.dim() != odim) throw std::invalid_argument("compose: outer dimension mismatch");
  if (static_cast<int>(inner.size()) != odim)
    throw std::invalid_argument("compose: outer dimension must equal number of inner series");
  int trunc = outers.front().trunc();
  for (const auto& o : outers) trunc = std::min(trunc, o.trunc());
  int dim = inner.front().dim();
  for (const auto& g : inner) {
    if (g.dim() != dim) throw std::invalid_argument("compose: inner dimension mismatch");
    if (sgn(g.constant_term()) != 0)
      throw std::invalid_argument("compose: inner series must have zero constant term");
    trunc = std::min(trunc, g.trunc());
  }
  // cache powers of each inner component as they are needed
  std::vector<std::vector<TruncatedSeries>> pows(inner.size());
  for (size_t i = 0; i < inner.size(); ++i)
    pows[i].push_back(TruncatedSeries::constant(dim, trunc, Rat(1)));
  auto power = [&](size_t i, int e) -> const TruncatedSeries& {
    while (static_cast<int>(pows[i].size()) <= e)
      pows[i].push_back(mul_poly(
          pows[i].back(), inner[i].jet(std::min(trunc, inner[i].trunc())), trunc));
    return pows[i][static_cast<size_t>(e)];
  };
  // one sorted stream of (exponent, coefficient, outer id), walked as a trie
  // so partial products of inner powers are shared across common prefixes
  struct Entry {
    const MultiIndex* alpha;
    const Rat* c;
    size_t id;
  };
  std::vector<Entry> entries;
  for (size_t id = 0; id < outers.size(); ++id)
    for (const auto& [a, c] : outers[id].coeffs_) {
      if (a.degree() > trunc) break;
      entries.push_back({&a, &c, id});
    }
  std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    return x.alpha->exp < y.alpha->exp;
  });
  std::vector<TruncatedSeries> out(outers.size(), TruncatedSeries(dim, trunc));
  std::function<void(size_t, size_t, size_t, const TruncatedSeries&)> walk =
      [&](size_t lo, size_t hi, size_t var, const TruncatedSeries& partial) {
        if (partial.is_zero()) return;
        if (var == static_cast<size_t>(odim)) {
          // all entries in [lo, hi) share the full exponent vector
          for (size_t t = lo; t < hi; ++t)
            out[entries[t].id] += *entries[t].c * partial;
          return;
        }
        size_t s = lo;
        while (s < hi) {
          int e = entries[s].alpha->exp[var];
          size_t t = s;
          while (t < hi && entries[t].alpha->exp[var] == e) ++t;
          walk(s, t, var + 1,
               e == 0 ? partial : mul_poly(partial, power(var, e), trunc));
          s = t;
        }
      };
  walk(0, entries.size(), 0, TruncatedSeries::constant(dim, trunc, Rat(1)));
  return out;
}

TruncatedSeries compose(const TruncatedSeries& outer,
                        const std::vector<TruncatedSeries>& inner) {
  return compose_all({outer}, inner).front();
}

MomentSpec::MomentSpec(int dim, std::vector<std::vector<Rat>> covariance)
    : dim_(dim), cov_(std::move(covariance)) {
  if (static_cast<int>(cov_.size()) != dim)
    throw std::invalid_argument("covariance size mismatch");
  for (const auto& row : cov_)
    if (static_cast<int>(row.size()) != dim)
      throw std::invalid_argument("covariance size mismatch");
  if (!is_symmetric(cov_)) throw std::invalid_argument("covariance must be symmetric");
  if (!is_positive_definite(cov_))
    throw std::invalid_argument("covariance must be positive-definite");
}

const Rat& MomentSpec::cov(int i, int j) const {
  return cov_[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)];
}

bool is_symmetric(const std::vector<std::vector<Rat>>& m) {
  size_t n = m.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (m[i][j] != m[j][i]) return false;
  return true;
}

Rat det(const std::vector<std::vector<Rat>>& m) {
  std::vector<std::vector<Rat>> a = m;
  size_t n = a.size();
  Rat d(1);
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && sgn(a[p][c]) == 0) ++p;
    if (p == n) return Rat(0);
    if (p != c) {
      std::swap(a[p], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (size_t r = c + 1; r < n; ++r) {
      Rat f = a[r][c] / a[c][c];
      for (size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return d;
}

bool is_positive_definite(const std::vector<std::vector<Rat>>& m) {
  size_t n = m.size();
  for (size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<Rat>> minor(k, std::vector<Rat>(k));
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j) minor[i][j] = m[i][j];
    if (sgn(det(minor)) <= 0) return false;
  }
  return true;
}

std::vector<Rat> solve_linear(std::vector<std::vector<Rat>> m,
                              std::vector<Rat> rhs) {
  size_t n = m.size();
  if (rhs.size() != n) throw std::invalid_argument("solve_linear: size mismatch");
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && sgn(m[p][c]) == 0) ++p;
    if (p == n) throw std::domain_error("solve_linear: singular matrix");
    std::swap(m[p], m[c]);
    std::swap(rhs[p], rhs[c]);
    for (size_t r = 0; r < n; ++r) {
      if (r == c || sgn(m[r][c]) == 0) continue;
      Rat f = m[r][c] / m[c][c];
      for (size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  std::vector<Rat> x(n);
  for (size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
  return x;
}

std::vector<std::vector<Rat>> inverse(const std::vector<std::vector<Rat>>& m) {
  size_t n = m.size();
  std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, Rat(0)));
  for (size_t col = 0; col < n; ++col) {
    std::vector<Rat> e(n, Rat(0));
    e[col] = Rat(1);
    std::vector<Rat> x = solve_linear(m, e);
    for (size_t i = 0; i < n; ++i) inv[i][col] = x[i];
  }
  return inv;
}

}  // namespace laplace
