#include "laplace/tensor.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "laplace/series.hpp"

namespace laplace {

namespace {

// Enumerates ways to pick `m` disjoint unordered pairs from `positions`;
// callback receives the pairs and the leftover positions. Each partition
// into pairs-plus-leftovers is visited exactly once: the front position is
// either declared a leftover or paired with a specific partner.
void pairing_rec(const std::vector<int>& positions, int m,
                 std::vector<std::pair<int, int>>& pairs,
                 std::vector<int>& leftovers,
                 const std::function<void(const std::vector<std::pair<int, int>>&,
                                          const std::vector<int>&)>& fn) {
  if (m == 0) {
    std::vector<int> rest = leftovers;
    rest.insert(rest.end(), positions.begin(), positions.end());
    fn(pairs, rest);
    return;
  }
  if (static_cast<int>(positions.size()) < 2 * m) return;
  int first = positions.front();
  std::vector<int> tail(positions.begin() + 1, positions.end());
  // front stays unpaired
  leftovers.push_back(first);
  pairing_rec(tail, m, pairs, leftovers, fn);
  leftovers.pop_back();
  // front pairs with each later position in turn
  for (size_t j = 0; j < tail.size(); ++j) {
    std::vector<int> rest;
    for (size_t t = 0; t < tail.size(); ++t)
      if (t != j) rest.push_back(tail[t]);
    pairs.emplace_back(first, tail[j]);
    pairing_rec(rest, m - 1, pairs, leftovers, fn);
    pairs.pop_back();
  }
}

void for_each_pairing(const std::vector<int>& positions, int m,
                      std::vector<std::pair<int, int>>& pairs,
                      const std::function<void(const std::vector<std::pair<int, int>>&,
                                               const std::vector<int>&)>& fn) {
  std::vector<int> leftovers;
  pairing_rec(positions, m, pairs, leftovers, fn);
}

Rat pow2(int m) {
  Rat r(1);
  for (int i = 0; i < m; ++i) r *= 2;
  return r;
}

}  // namespace

SymTensor::SymTensor(int dim, int order) : dim_(dim), order_(order) {
  if (dim < 1 || order < 0) throw std::invalid_argument("bad tensor shape");
}

Rat SymTensor::get(Key idx) const {
  std::sort(idx.begin(), idx.end());
  auto it = entries_.find(idx);
  return it == entries_.end() ? Rat(0) : it->second;
}

void SymTensor::set(Key idx, const Rat& value) {
  if (static_cast<int>(idx.size()) != order_)
    throw std::invalid_argument("tensor index length mismatch");
  for (int v : idx)
    if (v < 1 || v > dim_) throw std::invalid_argument("tensor index out of range");
  std::sort(idx.begin(), idx.end());
  if (sgn(value) == 0)
    entries_.erase(idx);
  else
    entries_[idx] = value;
}

void SymTensor::add(Key idx, const Rat& value) {
  std::sort(idx.begin(), idx.end());
  set(idx, get(idx) + value);
}

SymTensor SymTensor::operator-() const {
  SymTensor out(dim_, order_);
  for (const auto& [k, v] : entries_) out.entries_[k] = -v;
  return out;
}

SymTensor& SymTensor::operator+=(const SymTensor& o) {
  if (o.dim_ != dim_ || o.order_ != order_)
    throw std::invalid_argument("tensor shape mismatch");
  for (const auto& [k, v] : o.entries_) set(k, get(k) + v);
  return *this;
}

SymTensor& SymTensor::operator-=(const SymTensor& o) { return *this += -o; }

SymTensor& SymTensor::operator*=(const Rat& s) {
  if (sgn(s) == 0) {
    entries_.clear();
    return *this;
  }
  for (auto& [k, v] : entries_) v *= s;
  return *this;
}

bool SymTensor::operator==(const SymTensor& o) const {
  return dim_ == o.dim_ && order_ == o.order_ && entries_ == o.entries_;
}

std::vector<SymTensor::Key> SymTensor::sorted_tuples(int dim, int length) {
  std::vector<Key> out;
  Key cur;
  std::function<void(int)> go = [&](int lo) {
    if (static_cast<int>(cur.size()) == length) {
      out.push_back(cur);
      return;
    }
    for (int v = lo; v <= dim; ++v) {
      cur.push_back(v);
      go(v);
      cur.pop_back();
    }
  };
  go(1);
  return out;
}

SymTensor trace(const SymTensor& b) {
  if (b.order() < 2) throw std::invalid_argument("trace needs order >= 2");
  SymTensor out(b.dim(), b.order() - 2);
  for (const auto& key : SymTensor::sorted_tuples(b.dim(), b.order() - 2)) {
    Rat s(0);
    for (int i = 1; i <= b.dim(); ++i) {
      SymTensor::Key full = key;
      full.push_back(i);
      full.push_back(i);
      s += b.get(full);
    }
    if (sgn(s) != 0) out.set(key, s);
  }
  return out;
}

Rat complete_trace(const SymTensor& b) {
  if (b.order() % 2 != 0) return Rat(0);
  SymTensor cur = b;
  while (cur.order() > 0) cur = trace(cur);
  return cur.get({});
}

SymTensor metric_embed(const SymTensor& w, int k) {
  int q = w.order();
  if ((k - q) % 2 != 0 || k < q)
    throw std::invalid_argument("metric_embed: order parity mismatch");
  int m = (k - q) / 2;
  SymTensor out(w.dim(), k);
  if (w.is_zero()) return out;
  Rat coeff = pow2(m) * factorial(static_cast<unsigned>(m)) *
              factorial(static_cast<unsigned>(q)) /
              factorial(static_cast<unsigned>(k));
  std::vector<int> positions(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) positions[static_cast<size_t>(i)] = i;
  for (const auto& t : SymTensor::sorted_tuples(w.dim(), k)) {
    Rat s(0);
    std::vector<std::pair<int, int>> pairs;
    for_each_pairing(positions, m, pairs,
                     [&](const std::vector<std::pair<int, int>>& ps,
                         const std::vector<int>& rest) {
                       for (const auto& [a, bpos] : ps)
                         if (t[static_cast<size_t>(a)] != t[static_cast<size_t>(bpos)]) return;
                       SymTensor::Key widx;
                       for (int p : rest) widx.push_back(t[static_cast<size_t>(p)]);
                       s += w.get(widx);
                     });
    if (sgn(s) != 0) out.set(t, coeff * s);
  }
  return out;
}

std::vector<TraceComponent> trace_decompose(const SymTensor& b) {
  int k = b.order();
  std::vector<TraceComponent> out;
  if (b.is_zero()) return out;
  if (k <= 1) {
    out.push_back({k, b, b});
    return out;
  }
  // Split b = TF + sym(delta (x) u): solve tr(sym(delta (x) u)) = tr(b)
  // for u in S^{k-2}, then recurse on u.
  auto basis = SymTensor::sorted_tuples(b.dim(), k - 2);
  size_t n = basis.size();
  std::vector<std::vector<Rat>> mat(n, std::vector<Rat>(n, Rat(0)));
  for (size_t col = 0; col < n; ++col) {
    SymTensor e(b.dim(), k - 2);
    e.set(basis[col], Rat(1));
    SymTensor tcol = trace(metric_embed(e, k));
    for (size_t row = 0; row < n; ++row) mat[row][col] = tcol.get(basis[row]);
  }
  SymTensor tb = trace(b);
  std::vector<Rat> rhs(n);
  for (size_t row = 0; row < n; ++row) rhs[row] = tb.get(basis[row]);
  std::vector<Rat> sol = solve_linear(mat, rhs);
  SymTensor u(b.dim(), k - 2);
  for (size_t i = 0; i < n; ++i)
    if (sgn(sol[i]) != 0) u.set(basis[i], sol[i]);
  SymTensor tf = b - metric_embed(u, k);
  if (!tf.is_zero()) out.push_back({k, tf, tf});
  for (const auto& comp : trace_decompose(u))
    out.push_back({comp.q, metric_embed(comp.core, k), comp.core});
  return out;
}

KTensor::KTensor(int dim, int sym_order) : dim_(dim), sym_order_(sym_order) {
  if (dim < 1 || sym_order < 1) throw std::invalid_argument("bad K-tensor shape");
}

Rat KTensor::get(int first, std::vector<int> rest) const {
  std::sort(rest.begin(), rest.end());
  auto it = entries_.find({first, rest});
  return it == entries_.end() ? Rat(0) : it->second;
}

void KTensor::add(int first, std::vector<int> rest, const Rat& value) {
  if (static_cast<int>(rest.size()) != sym_order_)
    throw std::invalid_argument("K-tensor index length mismatch");
  std::sort(rest.begin(), rest.end());
  Key k{first, std::move(rest)};
  auto it = entries_.find(k);
  Rat s = (it == entries_.end() ? Rat(0) : it->second) + value;
  if (sgn(s) == 0) {
    if (it != entries_.end()) entries_.erase(it);
  } else {
    entries_[k] = s;
  }
}

KTensor& KTensor::operator+=(const KTensor& o) {
  if (o.dim_ != dim_ || o.sym_order_ != sym_order_)
    throw std::invalid_argument("K-tensor shape mismatch");
  for (const auto& [k, v] : o.entries_) add(k.first, k.second, v);
  return *this;
}

KTensor& KTensor::operator-=(const KTensor& o) {
  if (o.dim_ != dim_ || o.sym_order_ != sym_order_)
    throw std::invalid_argument("K-tensor shape mismatch");
  for (const auto& [k, v] : o.entries_) add(k.first, k.second, -v);
  return *this;
}

KTensor& KTensor::operator*=(const Rat& s) {
  if (sgn(s) == 0) {
    entries_.clear();
    return *this;
  }
  for (auto& [k, v] : entries_) v *= s;
  return *this;
}

SymTensor KTensor::full_symmetrization() const {
  SymTensor out(dim_, sym_order_ + 1);
  Rat inv(1, sym_order_ + 1);
  for (const auto& t : SymTensor::sorted_tuples(dim_, sym_order_ + 1)) {
    Rat s(0);
    for (size_t p = 0; p < t.size(); ++p) {
      std::vector<int> rest;
      for (size_t j = 0; j < t.size(); ++j)
        if (j != p) rest.push_back(t[j]);
      s += get(t[p], rest);
    }
    if (sgn(s) != 0) out.set(t, inv * s);
  }
  return out;
}

SymTensor t_contract(const KTensor& x) {
  int k = x.sym_order() - 1;
  SymTensor out(x.dim(), k);
  for (const auto& t : SymTensor::sorted_tuples(x.dim(), k)) {
    Rat s(0);
    for (int i = 1; i <= x.dim(); ++i) {
      std::vector<int> rest = t;
      rest.push_back(i);
      s += x.get(i, rest);
    }
    if (sgn(s) != 0) out.set(t, s);
  }
  return out;
}

KTensor solve_t(const SymTensor& z) {
  int d = z.dim(), k = z.order();
  if (d < 2) throw std::domain_error("solve_t requires dimension > 1");
  if (sgn(complete_trace(z)) != 0)
    throw std::domain_error("solve_t: nonzero complete trace, no preimage exists");
  KTensor x(d, k + 1);
  std::vector<int> positions(static_cast<size_t>(k + 1));
  for (int i = 0; i <= k; ++i) positions[static_cast<size_t>(i)] = i;
  for (const auto& comp : trace_decompose(z)) {
    int q = comp.q;
    if (q == 0) continue;  // killed by the complete-trace precondition
    int m = (k - q) / 2;
    const SymTensor& w = comp.core;
    Rat kfac = factorial(static_cast<unsigned>(k + 1));
    Rat ca = pow2(m) * factorial(static_cast<unsigned>(m)) *
             factorial(static_cast<unsigned>(q)) / kfac;
    Rat cb = pow2(m + 1) * factorial(static_cast<unsigned>(m + 1)) *
             factorial(static_cast<unsigned>(q - 1)) / kfac;
    Rat scale = Rat(k + 1) / Rat(d + q - 2);
    for (int i = 1; i <= d; ++i) {
      for (const auto& t : SymTensor::sorted_tuples(d, k + 1)) {
        Rat a_val(0);
        // first term: one delta carries the distinguished index
        for (size_t p = 0; p < t.size(); ++p) {
          if (t[p] != i) continue;
          std::vector<int> rem;
          for (size_t j = 0; j < t.size(); ++j)
            if (j != p) rem.push_back(static_cast<int>(j));
          // rem holds positions into t
          std::vector<std::pair<int, int>> pairs;
          for_each_pairing(rem, m, pairs,
                           [&](const std::vector<std::pair<int, int>>& ps,
                               const std::vector<int>& rest) {
                             for (const auto& [a, bp] : ps)
                               if (t[static_cast<size_t>(a)] != t[static_cast<size_t>(bp)]) return;
                             SymTensor::Key widx;
                             for (int pp : rest) widx.push_back(t[static_cast<size_t>(pp)]);
                             a_val += w.get(widx);
                           });
        }
        Rat b_val(0);
        // second term: the distinguished index sits in the last W slot
        {
          std::vector<std::pair<int, int>> pairs;
          for_each_pairing(positions, m + 1, pairs,
                           [&](const std::vector<std::pair<int, int>>& ps,
                               const std::vector<int>& rest) {
                             for (const auto& [a, bp] : ps)
                               if (t[static_cast<size_t>(a)] != t[static_cast<size_t>(bp)]) return;
                             SymTensor::Key widx;
                             for (int pp : rest) widx.push_back(t[static_cast<size_t>(pp)]);
                             widx.push_back(i);
                             b_val += w.get(widx);
                           });
        }
        Rat total = scale * (ca * a_val - cb * b_val);
        if (sgn(total) != 0) x.add(i, t, total);
      }
    }
  }
  if (!(t_contract(x) == z))
    throw std::logic_error("solve_t: constructed tensor fails T(X) = z");
  if (!x.full_symmetrization().is_zero())
    throw std::logic_error("solve_t: constructed tensor leaves K");
  return x;
}

}  // namespace laplace
