#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gen.hpp"
#include "laplace/series.hpp"

using namespace laplace;

namespace {

TruncatedSeries poly1(int trunc, std::vector<Rat> coeffs) {
  TruncatedSeries s(1, trunc);
  for (size_t j = 0; j < coeffs.size(); ++j)
    s.set_coeff(MultiIndex({static_cast<int>(j)}), coeffs[j]);
  return s;
}

}  // namespace

TEST_CASE("mul basics") {
  // (1+x)(1-x) = 1-x^2 at trunc 2
  auto a = poly1(2, {Rat(1), Rat(1)});
  auto b = poly1(2, {Rat(1), Rat(-1)});
  auto p = mul(a, b);
  CHECK(p.coeff(MultiIndex({0})) == 1);
  CHECK(p.coeff(MultiIndex({1})) == 0);
  CHECK(p.coeff(MultiIndex({2})) == -1);

  // multiplication by one is the identity
  auto one = TruncatedSeries::constant(1, 2, Rat(1));
  CHECK(mul(a, one).same_jet(a));

  // x^3 * x^3 = x^6 at trunc 7
  auto c = poly1(7, {Rat(0), Rat(0), Rat(0), Rat(1)});
  auto c2 = mul(c, c);
  CHECK(c2.coeff(MultiIndex({6})) == 1);
  CHECK(c2.coeffs().size() == 1);

  // result truncation is the minimum of the operands'
  CHECK(mul(poly1(5, {Rat(1)}), poly1(3, {Rat(1)})).trunc() == 3);
}

TEST_CASE("mul errors") {
  TruncatedSeries a(1, 3), b(2, 3);
  CHECK_THROWS_AS(mul(a, b), std::invalid_argument);
}

TEST_CASE("compose basics") {
  // x^2 composed with x + x^2 at trunc 4
  auto outer = poly1(4, {Rat(0), Rat(0), Rat(1)});
  auto inner = poly1(4, {Rat(0), Rat(1), Rat(1)});
  auto r = compose(outer, {inner});
  CHECK(r.coeff(MultiIndex({2})) == 1);
  CHECK(r.coeff(MultiIndex({3})) == 2);
  CHECK(r.coeff(MultiIndex({4})) == 1);

  // identity inner reproduces outer
  auto id = poly1(4, {Rat(0), Rat(1)});
  gen::Gen g(11);
  for (int t = 0; t < 5; ++t) {
    TruncatedSeries a(1, 4);
    g.sprinkle(a, 0, 4, 2);
    CHECK(compose(a, {id}).same_jet(a));
  }

  // projection outer x^i returns the i-th inner component
  TruncatedSeries proj(2, 4);
  proj.set_coeff(MultiIndex({1, 0}), Rat(1));
  TruncatedSeries i1(2, 4), i2(2, 4);
  i1.set_coeff(MultiIndex({0, 1}), Rat(3));
  i1.set_coeff(MultiIndex({2, 0}), Rat(5));
  i2.set_coeff(MultiIndex({1, 0}), Rat(1));
  CHECK(compose(proj, {i1, i2}).same_jet(i1));
}

TEST_CASE("compose errors") {
  auto outer = poly1(3, {Rat(0), Rat(1)});
  auto bad = poly1(3, {Rat(1), Rat(1)});  // nonzero constant term
  CHECK_THROWS_AS(compose(outer, {bad}), std::invalid_argument);
  TruncatedSeries outer2(2, 3);
  CHECK_THROWS_AS(compose(outer2, {poly1(3, {Rat(0), Rat(1)})}),
                  std::invalid_argument);
}

TEST_CASE("jet") {
  auto a = poly1(2, {Rat(1), Rat(1), Rat(1)});
  auto j1 = a.jet(1);
  CHECK(j1.trunc() == 1);
  CHECK(j1.coeff(MultiIndex({0})) == 1);
  CHECK(j1.coeff(MultiIndex({1})) == 1);
  CHECK(j1.coeffs().size() == 2);

  // jet at order zero is the constant term
  auto j0 = a.jet(0);
  CHECK(j0.coeffs().size() == 1);
  CHECK(j0.constant_term() == 1);

  // jet at the truncation order is the identity
  CHECK(a.jet(a.trunc()).same_jet(a));
  CHECK_THROWS_AS(a.jet(3), std::invalid_argument);
}

TEST_CASE("tensor_coeff conversion") {
  // (x^1)^2: entry (1,1) is 2! * 1 = 2
  TruncatedSeries a(1, 4);
  a.set_coeff(MultiIndex({2}), Rat(1));
  CHECK(a.tensor_coeff({1, 1}) == 2);

  // x^1 x^2 in d=2: entry (1,2) is 1!1! * 1 = 1
  TruncatedSeries c(2, 4);
  c.set_coeff(MultiIndex({1, 1}), Rat(1));
  CHECK(c.tensor_coeff({1, 2}) == 1);
  CHECK(c.tensor_coeff({2, 1}) == 1);  // symmetric in the labels

  // x^3/6: entry (1,1,1) is 3!/6 = 1
  TruncatedSeries e(1, 4);
  e.set_coeff(MultiIndex({3}), rat(1, 6));
  CHECK(e.tensor_coeff({1, 1, 1}) == 1);
}

TEST_CASE("tensor_coeff permutation invariance and reconstruction") {
  gen::Gen g(5);
  TruncatedSeries a(3, 5);
  g.sprinkle(a, 0, 5, 4);
  std::vector<int> idx = {1, 3, 2, 3};
  std::sort(idx.begin(), idx.end());
  Rat base = a.tensor_coeff(idx);
  do {
    CHECK(a.tensor_coeff(idx) == base);
  } while (std::next_permutation(idx.begin(), idx.end()));

  // reconstruction: c_alpha = a_{tuple(alpha)} / alpha!
  for (const auto& [alpha, c] : a.coeffs()) {
    std::vector<int> tuple;
    Rat afac(1);
    for (int v = 0; v < alpha.dim(); ++v) {
      for (int t = 0; t < alpha.exp[static_cast<size_t>(v)]; ++t)
        tuple.push_back(v + 1);
      afac *= factorial(static_cast<unsigned>(alpha.exp[static_cast<size_t>(v)]));
    }
    CHECK(a.tensor_coeff(tuple) == c * afac);
  }
}

TEST_CASE("homogeneous_part") {
  auto a = poly1(3, {Rat(1), Rat(1), Rat(1)});
  auto h1 = a.homogeneous_part(1);
  CHECK(h1.coeffs().size() == 1);
  CHECK(h1.coeff(MultiIndex({1})) == 1);
  CHECK(a.homogeneous_part(3).is_zero());

  TruncatedSeries q(2, 3);
  q.set_coeff(MultiIndex({2, 0}), Rat(1));
  q.set_coeff(MultiIndex({0, 2}), Rat(1));
  CHECK(q.homogeneous_part(2).same_jet(q));
}

TEST_CASE("algebraic properties on random series") {
  gen::Gen g(77);
  for (int t = 0; t < 10; ++t) {
    int d = g.uniform(1, 3);
    TruncatedSeries a(d, 5), b(d, 5), c(d, 5);
    g.sprinkle(a, 0, 5, 2);
    g.sprinkle(b, 0, 5, 2);
    g.sprinkle(c, 0, 5, 2);
    CHECK(mul(a, b).same_jet(mul(b, a)));
    CHECK(mul(mul(a, b), c).same_jet(mul(a, mul(b, c))));
    CHECK(mul(a, b + c).same_jet(mul(a, b) + mul(a, c)));
    // jet is a homomorphism for mul
    for (int k = 0; k <= 5; ++k)
      CHECK(mul(a, b).jet(k).same_jet(mul(a.jet(k), b.jet(k)), k));
  }
}

TEST_CASE("compose associativity at a common truncation") {
  gen::Gen g(13);
  for (int t = 0; t < 6; ++t) {
    int d = 2;
    TruncatedSeries a(d, 5);
    g.sprinkle(a, 0, 5, 3);
    std::vector<TruncatedSeries> psi, phi;
    for (int i = 0; i < d; ++i) {
      TruncatedSeries u(d, 5), v(d, 5);
      g.sprinkle(u, 1, 5, 2);
      g.sprinkle(v, 1, 5, 2);
      psi.push_back(u);
      phi.push_back(v);
    }
    // (a o psi) o phi = a o (psi o phi)
    std::vector<TruncatedSeries> psiphi;
    for (int i = 0; i < d; ++i)
      psiphi.push_back(compose(psi[static_cast<size_t>(i)], phi));
    CHECK(compose(compose(a, psi), phi).same_jet(compose(a, psiphi)));
  }
}

TEST_CASE("derivative and valuation") {
  auto a = poly1(4, {Rat(1), Rat(2), Rat(3), Rat(4)});
  auto da = a.derivative(1);
  CHECK(da.trunc() == 3);
  CHECK(da.coeff(MultiIndex({0})) == 2);
  CHECK(da.coeff(MultiIndex({1})) == 6);
  CHECK(da.coeff(MultiIndex({2})) == 12);

  TruncatedSeries z(2, 4);
  CHECK(z.valuation() == 5);
  z.set_coeff(MultiIndex({1, 2}), Rat(7));
  CHECK(z.valuation() == 3);
}

TEST_CASE("exact linear algebra") {
  std::vector<std::vector<Rat>> m = {{Rat(2), Rat(1)}, {Rat(1), Rat(2)}};
  CHECK(is_symmetric(m));
  CHECK(is_positive_definite(m));
  CHECK(det(m) == 3);
  auto inv = inverse(m);
  CHECK(inv[0][0] == rat(2, 3));
  CHECK(inv[0][1] == rat(-1, 3));
  auto x = solve_linear(m, {Rat(1), Rat(0)});
  CHECK(x[0] == rat(2, 3));
  CHECK(x[1] == rat(-1, 3));

  std::vector<std::vector<Rat>> npd = {{Rat(1), Rat(2)}, {Rat(2), Rat(1)}};
  CHECK(!is_positive_definite(npd));
  std::vector<std::vector<Rat>> sing = {{Rat(1), Rat(1)}, {Rat(1), Rat(1)}};
  CHECK_THROWS_AS(inverse(sing), std::exception);

  gen::Gen g(3);
  for (int t = 0; t < 8; ++t) {
    int d = g.uniform(1, 4);
    auto a = g.invertible_matrix(d);
    auto ai = inverse(a);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Rat s(0);
        for (int k = 0; k < d; ++k)
          s += a[static_cast<size_t>(i)][static_cast<size_t>(k)] *
               ai[static_cast<size_t>(k)][static_cast<size_t>(j)];
        CHECK(s == (i == j ? Rat(1) : Rat(0)));
      }
    CHECK(is_positive_definite(g.spd_matrix(d)));
  }
}

TEST_CASE("MomentSpec validation") {
  CHECK_THROWS_AS(MomentSpec(2, {{Rat(1), Rat(2)}, {Rat(2), Rat(1)}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(MomentSpec(2, {{Rat(1), Rat(2)}, {Rat(3), Rat(1)}}),
                  std::invalid_argument);
  MomentSpec ok(2, {{Rat(2), Rat(1)}, {Rat(1), Rat(2)}});
  CHECK(ok.cov(1, 2) == 1);
}

TEST_CASE("set_coeff bounds") {
  TruncatedSeries a(1, 2);
  CHECK_THROWS_AS(a.set_coeff(MultiIndex({3}), Rat(1)), std::invalid_argument);
}
