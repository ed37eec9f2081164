#include "laplace/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace laplace {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(static_cast<size_t>(n), 0.0);
  weights.assign(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<size_t>(i)] = -x;
    nodes[static_cast<size_t>(n - 1 - i)] = x;
    weights[static_cast<size_t>(i)] = w;
    weights[static_cast<size_t>(n - 1 - i)] = w;
  }
}

struct Poly {
  std::vector<std::pair<std::vector<int>, double>> terms;

  double eval(const std::vector<double>& x) const {
    double s = 0.0;
    for (const auto& [e, c] : terms) {
      double m = c;
      for (size_t v = 0; v < e.size(); ++v)
        for (int t = 0; t < e[v]; ++t) m *= x[v];
      s += m;
    }
    return s;
  }
};

Poly to_poly(const TruncatedSeries& s) {
  Poly p;
  for (const auto& [a, c] : s.coeffs()) p.terms.push_back({a.exp, to_double(c)});
  return p;
}

// Smallest eigenvalue of a small symmetric matrix by cyclic Jacobi.
double min_eigenvalue(std::vector<std::vector<double>> m) {
  size_t n = m.size();
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (size_t p = 0; p < n; ++p)
      for (size_t q = p + 1; q < n; ++q) off += m[p][q] * m[p][q];
    if (off < 1e-26) break;
    for (size_t p = 0; p < n; ++p)
      for (size_t q = p + 1; q < n; ++q) {
        if (std::abs(m[p][q]) < 1e-18) continue;
        double theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (size_t k = 0; k < n; ++k) {
          double akp = m[k][p], akq = m[k][q];
          m[k][p] = c * akp - s * akq;
          m[k][q] = s * akp + c * akq;
        }
        for (size_t k = 0; k < n; ++k) {
          double apk = m[p][k], aqk = m[q][k];
          m[p][k] = c * apk - s * aqk;
          m[q][k] = s * apk + c * aqk;
        }
      }
  }
  double mn = m[0][0];
  for (size_t i = 1; i < n; ++i) mn = std::min(mn, m[i][i]);
  return mn;
}

double integrate_once(const Poly& pf, const Poly& pb, int d, double n, double r,
                      int pts) {
  std::vector<double> nodes, weights;
  gauss_legendre(pts, nodes, weights);
  std::vector<double> x(static_cast<size_t>(d), 0.0);
  std::vector<int> idx(static_cast<size_t>(d), 0);
  double total = 0.0;
  for (;;) {
    double w = 1.0;
    for (int v = 0; v < d; ++v) {
      x[static_cast<size_t>(v)] = r * nodes[static_cast<size_t>(idx[static_cast<size_t>(v)])];
      w *= r * weights[static_cast<size_t>(idx[static_cast<size_t>(v)])];
    }
    total += w * std::exp(-n * pf.eval(x)) * pb.eval(x);
    int v = 0;
    for (; v < d; ++v) {
      if (++idx[static_cast<size_t>(v)] < pts) break;
      idx[static_cast<size_t>(v)] = 0;
    }
    if (v == d) break;
  }
  return total;
}

}  // namespace

double laplace_integral_numeric(const PairInstance& pair, double n,
                                const QuadratureConfig& cfg) {
  int d = pair.dim();
  if (d > 3) throw std::domain_error("quadrature oracle supports d <= 3 only");
  if (n <= 0) throw std::invalid_argument("n must be positive");
  auto hess = pair.hessian();
  std::vector<std::vector<double>> hd(static_cast<size_t>(d),
                                      std::vector<double>(static_cast<size_t>(d)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      hd[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          to_double(hess[static_cast<size_t>(i)][static_cast<size_t>(j)]);
  double c = min_eigenvalue(hd);  // f ~ (c/2) ||x||^2 near 0
  double r = cfg.radius;
  if (r <= 0.0) {
    // choose R from exp(-n c R^2 / 4) * (2R)^d <= tail_tol
    double need = -std::log(cfg.tail_tol);
    r = std::sqrt(4.0 * (need + 10.0) / (n * c));
  }
  Poly pf = to_poly(pair.f());
  Poly pb = to_poly(pair.b());
  // coercivity check of the truncation on the integration box
  {
    int g = 7;
    std::vector<double> x(static_cast<size_t>(d));
    std::vector<int> idx(static_cast<size_t>(d), 0);
    for (;;) {
      double nrm2 = 0.0;
      for (int v = 0; v < d; ++v) {
        x[static_cast<size_t>(v)] = r * (2.0 * idx[static_cast<size_t>(v)] / (g - 1) - 1.0);
        nrm2 += x[static_cast<size_t>(v)] * x[static_cast<size_t>(v)];
      }
      if (pf.eval(x) < 0.2 * c * nrm2 - 1e-12)
        throw std::domain_error(
            "laplace_integral_numeric: truncation not coercive on the domain");
      int v = 0;
      for (; v < d; ++v) {
        if (++idx[static_cast<size_t>(v)] < g) break;
        idx[static_cast<size_t>(v)] = 0;
      }
      if (v == d) break;
    }
  }
  double prev = integrate_once(pf, pb, d, n, r, cfg.points);
  for (int pts = cfg.points * 2; pts <= cfg.max_points; pts *= 2) {
    double cur = integrate_once(pf, pb, d, n, r, pts);
    if (std::abs(cur - prev) <= cfg.rel_tol * (1.0 + std::abs(cur))) return cur;
    prev = cur;
  }
  return prev;
}

double invariant_value(const ScaledInvariant& v) {
  return std::pow(2.0 * kPi, 0.5 * v.dim) / std::sqrt(to_double(v.det_f)) *
         to_double(v.rational_part);
}

QuadratureReport compare_expansion(const PairInstance& pair, int orders,
                                   const std::vector<double>& n_values,
                                   const QuadratureConfig& cfg) {
  QuadratureReport rep;
  rep.n_values = n_values;
  rep.partial_order = orders;
  InvariantSequence seq = invariant_sequence(pair, orders);
  int d = pair.dim();
  for (double n : n_values) {
    double integral = laplace_integral_numeric(pair, n, cfg);
    double partial = 0.0;
    for (int i = 0; i <= orders; ++i)
      partial += invariant_value(seq.values[static_cast<size_t>(i)]) *
                 std::pow(n, -0.5 * i);
    double scaled = std::pow(n, 0.5 * d) * integral;
    rep.numeric_integrals.push_back(integral);
    rep.series_values.push_back(partial);
    rep.residuals.push_back(scaled - partial);
  }
  // least-squares fit of log|residual| against log n
  size_t m = n_values.size();
  if (m >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < m; ++i) {
      double lx = std::log(n_values[i]);
      double ly = std::log(std::max(std::abs(rep.residuals[i]), 1e-300));
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    double denom = m * sxx - sx * sx;
    rep.fitted_slope = -(m * sxy - sx * sy) / denom;
  }
  return rep;
}

}  // namespace laplace
