#ifndef LAPLACE_TENSOR_HPP
#define LAPLACE_TENSOR_HPP

#include <map>
#include <utility>
#include <vector>

#include "laplace/rational.hpp"

namespace laplace {

/// Totally symmetric order-k tensor over exact rationals. Only sorted index
/// tuples (1-based variable labels) are stored; lookups sort first.
class SymTensor {
 public:
  using Key = std::vector<int>;

  SymTensor(int dim, int order);

  int dim() const { return dim_; }
  int order() const { return order_; }
  const std::map<Key, Rat>& entries() const { return entries_; }

  Rat get(Key idx) const;
  void set(Key idx, const Rat& value);
  void add(Key idx, const Rat& value);

  bool is_zero() const { return entries_.empty(); }

  SymTensor operator-() const;
  SymTensor& operator+=(const SymTensor& o);
  SymTensor& operator-=(const SymTensor& o);
  SymTensor& operator*=(const Rat& s);
  friend SymTensor operator+(SymTensor a, const SymTensor& b) { return a += b; }
  friend SymTensor operator-(SymTensor a, const SymTensor& b) { return a -= b; }
  friend SymTensor operator*(const Rat& s, SymTensor a) { return a *= s; }

  bool operator==(const SymTensor& o) const;

  /// All sorted index tuples of a given length over 1..dim.
  static std::vector<Key> sorted_tuples(int dim, int length);

 private:
  int dim_;
  int order_;
  std::map<Key, Rat> entries_;
};

/// Single metric contraction over two slots: (tr b)_{j1..j_{k-2}} = b_{iij1..}.
SymTensor trace(const SymTensor& b);

/// Full pairwise contraction ctr_k; zero for odd order.
Rat complete_trace(const SymTensor& b);

/// Symmetrised embedding delta_{(..} ... delta_{..} W_{..)} of an order-q
/// tensor into order k = q + 2m.
SymTensor metric_embed(const SymTensor& w, int k);

/// One component of the trace decomposition of S^k.
struct TraceComponent {
  int q;               // trace-free level
  SymTensor embedded;  // order-k summand
  SymTensor core;      // trace-free order-q tensor it embeds
};

/// Decomposition b = sum_q metric_embed(W_q, k) with each W_q trace-free;
/// components listed with decreasing q and zero components omitted.
std::vector<TraceComponent> trace_decompose(const SymTensor& b);

/// Element of K in R^d (x) S^{k+1}(R^d): one distinguished index plus k+1
/// symmetric slots, with vanishing full symmetrisation.
class KTensor {
 public:
  using Key = std::pair<int, std::vector<int>>;

  KTensor(int dim, int sym_order);

  int dim() const { return dim_; }
  /// Number of symmetric slots (k+1 for an order-(k+2) tensor).
  int sym_order() const { return sym_order_; }
  const std::map<Key, Rat>& entries() const { return entries_; }

  Rat get(int first, std::vector<int> rest) const;
  void add(int first, std::vector<int> rest, const Rat& value);

  KTensor& operator+=(const KTensor& o);
  KTensor& operator-=(const KTensor& o);
  KTensor& operator*=(const Rat& s);

  /// Full symmetrisation over all sym_order()+1 indices, as a SymTensor.
  SymTensor full_symmetrization() const;

 private:
  int dim_;
  int sym_order_;
  std::map<Key, Rat> entries_;
};

/// The map T: contracts the distinguished index against one symmetric slot.
SymTensor t_contract(const KTensor& x);

/// Constructive solution of T(X) = z for z with vanishing complete trace
/// (one scaled term per trace-free component).
/// Requires dim > 1.
KTensor solve_t(const SymTensor& z);

}  // namespace laplace

#endif
