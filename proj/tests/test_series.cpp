#include <random>

#include <doctest.h>

#include "strahler/errors.hpp"
#include "strahler/series.hpp"

using namespace strahler;
using namespace strahler::series;

namespace {

TruncSeries z_series(std::size_t order, std::initializer_list<long> c) {
  return TruncSeries::from_integers(Var::Z, order, c);
}

TruncSeries u_series(std::size_t order, std::initializer_list<long> c) {
  return TruncSeries::from_integers(Var::U, order, c);
}

// Random exact-rational series: small numerators, denominators in 1..5, some zeros.
TruncSeries random_series(std::mt19937_64& rng, std::size_t order, bool unit = false) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 5);
  std::vector<Rational> c(order + 1);
  for (auto& x : c) {
    x = Rational(num(rng), den(rng));
    x.canonicalize();
  }
  if (unit && sgn(c[0]) == 0) c[0] = 1;
  return TruncSeries(Var::Z, order, std::move(c));
}

}  // namespace

TEST_CASE("construction and truncation") {
  const auto s = z_series(5, {1, 2, 0, 0});
  CHECK(s.order() == 5);
  CHECK(s.stored().size() == 2);
  CHECK(s[4] == 0);
  CHECK_THROWS_AS(s[6], DomainError);
  CHECK_THROWS_AS(TruncSeries(Var::Z, 1, {1, 2, 3}), DomainError);
  CHECK(s.truncated(0) == z_series(0, {1}));
  CHECK_THROWS_AS(s.truncated(6), DomainError);
  CHECK(z_series(3, {0, 0, 5}).valuation() == 2);
  CHECK(TruncSeries(Var::Z, 3).valuation() == 4);
}

TEST_CASE("arithmetic keeps the smaller order") {
  const auto a = z_series(10, {1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1});
  const auto b = z_series(4, {1, 2});
  CHECK((a + b).order() == 4);
  CHECK((a * b).order() == 4);
  CHECK((a - a).is_zero());
  CHECK_THROWS_AS(a + u_series(4, {1}), DomainError);
}

TEST_CASE("mul") {
  SUBCASE("(1+z)(1-z) = 1 - z^2") {
    CHECK(mul(z_series(6, {1, 1}), z_series(6, {1, -1})) == z_series(6, {1, 0, -1}));
  }
  SUBCASE("[z^2] B*B = 5") {
    // Catalan convolution C0C2 + C1C1 + C2C0 = 2 + 1 + 2
    const auto b = z_series(6, {1, 1, 2, 5, 14, 42, 132});
    CHECK(mul(b, b)[2] == 5);
  }
  SUBCASE("identity") {
    const auto f = z_series(6, {3, -1, 4, 1, -5, 9});
    CHECK(mul(f, TruncSeries::constant(Var::Z, 6, 1)) == f);
  }
  SUBCASE("variable mismatch") {
    CHECK_THROWS_AS(mul(z_series(3, {1}), u_series(3, {1})), DomainError);
  }
}

TEST_CASE("recip") {
  CHECK(recip(z_series(5, {1, -1})) == z_series(5, {1, 1, 1, 1, 1, 1}));
  CHECK(recip(u_series(7, {1, 1, 1})) == u_series(7, {1, -1, 0, 1, -1, 0, 1, -1}));
  const auto f = z_series(8, {2, 3, -1, 0, 7});
  CHECK(recip(recip(f)) == f);
  CHECK_THROWS_AS(recip(z_series(4, {0, 1})), DomainError);
}

TEST_CASE("ring properties on random rational series") {
  std::mt19937_64 rng(20240917);
  for (int trial = 0; trial < 25; ++trial) {
    const auto f = random_series(rng, 32);
    const auto g = random_series(rng, 32);
    const auto h = random_series(rng, 32);
    CHECK(f * g == g * f);
    CHECK((f * g) * h == f * (g * h));
    CHECK(f * (g + h) == f * g + f * h);
    const auto unit = random_series(rng, 32, true);
    CHECK(recip(recip(unit)) == unit);
    CHECK(unit * recip(unit) == TruncSeries::constant(Var::Z, 32, 1));
  }
}

TEST_CASE("solve_u") {
  const auto u = solve_u(4);
  CHECK(u == z_series(4, {0, 1, 2, 5, 14}));
  CHECK(u[1] == 1);

  SUBCASE("u - z(1+u)^2 vanishes") {
    const std::size_t order = 60;
    const auto big_u = solve_u(order);
    const auto one_plus = big_u + TruncSeries::constant(Var::Z, order, 1);
    const auto residual = big_u - TruncSeries::monomial(Var::Z, order, 1) * one_plus * one_plus;
    CHECK(residual.is_zero());
  }
  SUBCASE("compose(u/(1+u)^2, u(z)) = z") {
    const std::size_t order = 30;
    const auto inv_sq = recip(u_series(order, {1, 2, 1}));
    const auto f = mul(u_series(order, {0, 1}), inv_sq);
    CHECK(compose(f, solve_u(order)) == TruncSeries::monomial(Var::Z, order, 1));
  }
}

TEST_CASE("compose") {
  const std::size_t order = 12;
  const auto u = solve_u(order);
  CHECK(compose(u_series(order, {0, 1}), u) == u);

  SUBCASE("1+u gives the Catalan series, which satisfies B = 1 + zB^2") {
    const auto b = compose(u_series(order, {1, 1}), u);
    CHECK(b.truncated(4) == z_series(4, {1, 1, 2, 5, 14}));
    const auto z = TruncSeries::monomial(Var::Z, order, 1);
    CHECK(b == TruncSeries::constant(Var::Z, order, 1) + z * b * b);
  }
  SUBCASE("u(1+u) gives A") {
    CHECK(compose(u_series(order, {0, 1, 1}), u).truncated(4) == z_series(4, {0, 1, 3, 9, 28}));
  }
  SUBCASE("errors and orders") {
    CHECK_THROWS_AS(compose(u_series(3, {1}), z_series(3, {1, 1})), DomainError);
    CHECK_THROWS_AS(compose(z_series(3, {1}), z_series(3, {0, 1})), DomainError);
    // f known to u^2 only: f(g) is known to z^2 when g has valuation 1
    CHECK(compose(u_series(2, {1, 1, 1}), u).order() == 2);
    // with valuation 2, to z^5
    CHECK(compose(u_series(2, {1, 1, 1}), z_series(12, {0, 0, 1})).order() == 5);
  }
}

TEST_CASE("expand") {
  using P = SparsePoly;
  SUBCASE("u(1-u^2)/(1-u^4) = u/(1+u^2)") {
    const URational r{P::monomial(1) * P::one_minus(2), P::one_minus(4)};
    CHECK(expand(r, 7) == u_series(7, {0, 1, 0, -1, 0, 1, 0, -1}));
  }
  SUBCASE("(1-u)/(1-u^3)") {
    const URational r{P::one_minus(1), P::one_minus(3)};
    CHECK(expand(r, 7) == u_series(7, {1, -1, 0, 1, -1, 0, 1, -1}));
  }
  SUBCASE("(1-u^2)/u * u^2/(1-u^2) = u") {
    const URational r{(P::one_minus(2) * P::monomial(2)).divided_by_u(1), P::one_minus(2)};
    CHECK(expand(r, 9) == u_series(9, {0, 1}));
  }
  SUBCASE("non-unit constant term uses rational arithmetic") {
    const URational r{P::constant(1), P({{0, 2}, {1, -1}})};  // 1/(2-u)
    const auto e = expand(r, 3);
    CHECK(e[0] == Rational(1, 2));
    CHECK(e[3] == Rational(1, 16));
  }
  SUBCASE("negative powers are rejected") {
    CHECK_THROWS_AS(P::one_minus(2).divided_by_u(1), DomainError);
    const URational r{P::constant(1), P::monomial(1)};
    CHECK_THROWS_AS(expand(r, 4), DomainError);
  }
}

TEST_CASE("sparse polynomials") {
  using P = SparsePoly;
  CHECK(P::geometric(3) == P({{0, 1}, {1, 1}, {2, 1}}));
  CHECK(P::geometric(5) * P::one_minus(1) == P::one_minus(5));
  CHECK((P::one_minus(3) - P::one_minus(3)).is_zero());
  CHECK(P({{4, 2}, {1, 3}, {4, -2}}).terms().size() == 1);
  CHECK(P({{0, 1}, {1, 1}}).pow(3).coefficient(2) == 3);
  const auto big = P::monomial(std::uint64_t{1} << 40);
  CHECK(big.degree() == (std::uint64_t{1} << 40));
}

TEST_CASE("lagrange_coeff") {
  SUBCASE("f = u gives Catalan numbers") {
    CHECK(lagrange_coeff(u_series(3, {1}), 4) == 14);
  }
  SUBCASE("f = u(1+u) gives [z^4]A = 28") {
    CHECK(lagrange_coeff(u_series(3, {1, 2}), 4) == 28);
  }
  SUBCASE("f = T_2 in u gives [z^4]T_2 = 13") {
    // u^3 (1+u)(2+u+u^2) / ((1+u^2)(1+u+u^2)) = 2u^3 + u^4 - 3u^5 + ...
    const auto f = u_series(8, {0, 0, 0, 2, 1, -3, 0, 3, -1});
    CHECK(lagrange_coeff(f.derivative(), 3) == 2);
    CHECK(lagrange_coeff(f.derivative(), 4) == 13);
  }
  SUBCASE("agrees with composition, including rational coefficients") {
    const std::size_t order = 24;
    std::mt19937_64 rng(7);
    const auto u = solve_u(order);
    for (int trial = 0; trial < 5; ++trial) {
      auto f = random_series(rng, order);
      f = TruncSeries(Var::U, order, std::vector<Rational>(f.stored().begin(), f.stored().end()));
      const auto composed = compose(f, u);
      for (std::size_t n = 1; n <= order; ++n) CHECK(lagrange_coeff(f.derivative(), n) == composed[n]);
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(lagrange_coeff(u_series(2, {1}), 5), DomainError);
    CHECK_THROWS_AS(lagrange_coeff(u_series(2, {1}), 0), DomainError);
    CHECK_THROWS_AS(lagrange_coeff(z_series(8, {1}), 2), DomainError);
  }
}

TEST_CASE("lagrange_series matches compose") {
  const std::size_t order = 30;
  std::vector<Integer> f(order + 1);
  for (std::size_t k = 0; k <= order; ++k) f[k] = static_cast<long>(k % 7) - 3;
  std::vector<Rational> q(f.begin(), f.end());
  const TruncSeries fu(Var::U, order, std::move(q));
  CHECK(lagrange_series(f, order) == compose(fu, solve_u(order)));
  CHECK_THROWS_AS(lagrange_series(f, order + 1), DomainError);
}

TEST_CASE("USubstitution matches compose") {
  const std::size_t order = 40;
  const USubstitution subst(order);
  const auto u = solve_u(order);
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 3; ++trial) {
    auto f = random_series(rng, order);
    f = TruncSeries(Var::U, order, std::vector<Rational>(f.stored().begin(), f.stored().end()));
    CHECK(subst.apply(f) == compose(f, u));
  }
  CHECK(subst.apply(u_series(order, {1, 1})) == compose(u_series(order, {1, 1}), u));
}
