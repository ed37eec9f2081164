#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gen.hpp"
#include "laplace/quadrature.hpp"

using namespace laplace;

namespace {

constexpr double kPi = 3.14159265358979323846;

TruncatedSeries poly1(int trunc, std::vector<Rat> coeffs) {
  TruncatedSeries s(1, trunc);
  for (size_t j = 0; j < coeffs.size(); ++j)
    s.set_coeff(MultiIndex({static_cast<int>(j)}), coeffs[j]);
  return s;
}

}  // namespace

TEST_CASE("gaussian integrals in closed form") {
  // d=1, f=x^2, b=1: integral is sqrt(pi/n)
  PairInstance p(poly1(6, {Rat(0), Rat(0), Rat(1)}), poly1(6, {Rat(1)}));
  double v = laplace_integral_numeric(p, 10.0, {});
  CHECK(std::abs(v - std::sqrt(kPi / 10.0)) < 1e-10);

  // d=1, f=x^2, b=1+x^2: sqrt(pi/n) (1 + 1/(2n))
  PairInstance p2(poly1(6, {Rat(0), Rat(0), Rat(1)}),
                  poly1(6, {Rat(1), Rat(0), Rat(1)}));
  for (double n : {10.0, 100.0, 1000.0}) {
    double got = laplace_integral_numeric(p2, n, {});
    double want = std::sqrt(kPi / n) * (1.0 + 0.5 / n);
    CHECK(std::abs(got - want) < 1e-10);
  }

  // d=2, f=|x|^2, b=1, n=4: pi/4
  TruncatedSeries q(2, 6);
  q.set_coeff(MultiIndex({2, 0}), Rat(1));
  q.set_coeff(MultiIndex({0, 2}), Rat(1));
  PairInstance p3(q, TruncatedSeries::constant(2, 6, Rat(1)));
  double v3 = laplace_integral_numeric(p3, 4.0, {});
  CHECK(std::abs(v3 - kPi / 4.0) < 1e-8);
}

TEST_CASE("compare_expansion on an exactly-terminating expansion") {
  PairInstance p(poly1(8, {Rat(0), Rat(0), Rat(1)}),
                 poly1(8, {Rat(1), Rat(0), Rat(1)}));
  auto rep = compare_expansion(p, 2, {10.0, 100.0, 1000.0}, {});
  for (double r : rep.residuals) CHECK(std::abs(r) < 1e-8);
  // odd-order partial sums add a vanishing term
  auto rep3 = compare_expansion(p, 3, {10.0, 100.0}, {});
  CHECK(rep3.series_values[0] == doctest::Approx(rep.series_values[0]));
}

TEST_CASE("residual decay slope at order zero") {
  // generic d=1 instance: after Lambda_0 the next surviving term is n^{-1}
  PairInstance p(poly1(8, {Rat(0), Rat(0), Rat(1), Rat(1), Rat(1)}),
                 poly1(8, {Rat(1), Rat(1), Rat(1)}));
  auto rep = compare_expansion(p, 0, {10.0, 100.0, 1000.0}, {});
  CHECK(rep.fitted_slope > 0.8);
  CHECK(rep.fitted_slope < 1.2);
}

TEST_CASE("numeric invariance under an exact change of variables") {
  // linear changes of variables transport truncated polynomials exactly,
  // so the numeric integrals must agree to quadrature tolerance
  PairInstance p(poly1(8, {Rat(0), Rat(0), Rat(1), Rat(0), Rat(1)}),
                 poly1(8, {Rat(1), Rat(1)}));
  auto psi = PhylonMap::linear(9, {{Rat(2)}});
  auto moved = act_on_pair(psi, p);
  for (double n : {5.0, 50.0}) {
    double a = laplace_integral_numeric(p, n, {});
    double c = laplace_integral_numeric(moved, n, {});
    CHECK(std::abs(a - c) < 1e-9 * (1.0 + std::abs(a)));
  }

  // d=2 rational rotation
  TruncatedSeries q(2, 6);
  q.set_coeff(MultiIndex({2, 0}), Rat(1));
  q.set_coeff(MultiIndex({0, 2}), Rat(1));
  q.set_coeff(MultiIndex({4, 0}), rat(1, 2));
  q.set_coeff(MultiIndex({0, 4}), rat(1, 2));
  TruncatedSeries b(2, 6);
  b.set_coeff(MultiIndex({0, 0}), Rat(1));
  b.set_coeff(MultiIndex({1, 0}), rat(1, 3));
  PairInstance p2(q, b);
  auto rot = PhylonMap::linear(
      7, {{rat(3, 5), rat(4, 5)}, {rat(-4, 5), rat(3, 5)}});
  auto moved2 = act_on_pair(rot, p2);
  double a2 = laplace_integral_numeric(p2, 6.0, {});
  double c2 = laplace_integral_numeric(moved2, 6.0, {});
  CHECK(std::abs(a2 - c2) < 1e-8 * (1.0 + std::abs(a2)));
}

TEST_CASE("error conditions") {
  // non-coercive truncation on the automatic domain
  PairInstance bad(poly1(6, {Rat(0), Rat(0), Rat(1), Rat(-1)}),
                   poly1(6, {Rat(1)}));
  CHECK_THROWS_AS(laplace_integral_numeric(bad, 1.0, {}), std::domain_error);

  // dimension too large for the tensorized grid
  TruncatedSeries q4(4, 4);
  for (int v = 0; v < 4; ++v) {
    MultiIndex a(4);
    a.exp[static_cast<size_t>(v)] = 2;
    q4.set_coeff(a, Rat(1));
  }
  PairInstance p4(q4, TruncatedSeries::constant(4, 4, Rat(1)));
  CHECK_THROWS_AS(laplace_integral_numeric(p4, 2.0, {}), std::domain_error);

  CHECK_THROWS_AS(
      laplace_integral_numeric(
          PairInstance(poly1(4, {Rat(0), Rat(0), Rat(1)}), poly1(4, {Rat(1)})),
          -1.0, {}),
      std::invalid_argument);
}

TEST_CASE("invariant_value") {
  ScaledInvariant v{1, 0, Rat(2), Rat(1)};
  CHECK(invariant_value(v) == doctest::Approx(std::sqrt(kPi)));
  ScaledInvariant v2{2, 2, Rat(4), rat(1, 2)};
  CHECK(invariant_value(v2) == doctest::Approx(kPi / 2.0));
}
