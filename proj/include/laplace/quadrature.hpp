#ifndef LAPLACE_QUADRATURE_HPP
#define LAPLACE_QUADRATURE_HPP

#include <vector>

#include "laplace/invariants.hpp"
#include "laplace/phylon.hpp"

namespace laplace {

struct QuadratureConfig {
  int points = 48;          // starting Gauss-Legendre points per axis
  int max_points = 1536;    // refinement cap
  double radius = 0.0;      // integration half-width; 0 selects automatically
  double tail_tol = 1e-14;  // target bound for the discarded Gaussian tail
  double rel_tol = 1e-11;   // refinement stop threshold
};

struct QuadratureReport {
  std::vector<double> n_values;
  int partial_order = 0;
  std::vector<double> numeric_integrals;  // raw integral per n
  std::vector<double> series_values;      // n^{d/2}-scaled partial sums
  std::vector<double> residuals;          // n^{d/2} I(n) - partial sum
  double fitted_slope = 0.0;              // log-log decay rate of residuals
};

/// Numeric value of the Laplace integral of exp(-n f) b over a box
/// containing the coercive region, by tensorized Gauss-Legendre with
/// point-doubling refinement. d <= 3.
double laplace_integral_numeric(const PairInstance& pair, double n,
                                const QuadratureConfig& cfg = {});

/// Double-precision value of a factored invariant.
double invariant_value(const ScaledInvariant& v);

/// Residuals of the order-K partial sum of the asymptotic expansion against
/// the numeric integral over the given n values, with a fitted decay slope.
QuadratureReport compare_expansion(const PairInstance& pair, int orders,
                                   const std::vector<double>& n_values,
                                   const QuadratureConfig& cfg = {});

}  // namespace laplace

#endif
