#include <catch2/catch_amalgamated.hpp>

#include "pso/hermite.hpp"
#include "test_util.hpp"

using namespace pso;
using pso::testing::Rng;

TEST_CASE("first hermite polynomials") {
  auto x = Poly<Rational>::variable(Var::x);
  auto one = Poly<Rational>::constant(Var::x, Rational(1));
  CHECK(hermite(0) == one);
  CHECK(hermite(1) == x);
  CHECK(hermite(2) == x * x - one);
  CHECK(hermite(3) == x * x * x - Rational(3) * x);
  CHECK(hermite(4) == x * x * x * x - Rational(6) * x * x + Rational(3) * one);
  CHECK_THROWS_AS(hermite(-1), std::invalid_argument);
}

TEST_CASE("hermite via the raising operator") {
  auto one = Poly<Rational>::constant(Var::x, Rational(1));
  CHECK(delta(one) == Poly<Rational>::variable(Var::x));
  CHECK(delta(Poly<Rational>::variable(Var::x)) == hermite(2));
  CHECK(delta_iterated(one, 3) == hermite(3));
  for (int n = 1; n <= 15; ++n) REQUIRE(delta(hermite(n - 1)) == hermite(n));
  CHECK_THROWS_AS(delta(Poly<Rational>::variable(Var::t)), std::invalid_argument);
}

TEST_CASE("recurrence and derivative identities up to degree 30") {
  auto x = Poly<Rational>::variable(Var::x);
  for (int n = 1; n <= 30; ++n) {
    REQUIRE(hermite(n + 1) == x * hermite(n) - Rational(n) * hermite(n - 1));
    REQUIRE(hermite(n).derivative() == Rational(n) * hermite(n - 1));
    REQUIRE(hermite(n).leading() == 1);
    REQUIRE(hermite(n).degree() == n);
  }
}

TEST_CASE("gaussian moments") {
  CHECK(gaussian_moment(0) == 1);
  CHECK(gaussian_moment(1) == 0);
  CHECK(gaussian_moment(2) == 1);
  CHECK(gaussian_moment(4) == 3);
  CHECK(gaussian_moment(6) == 15);
  CHECK(gaussian_moment(7) == 0);
  CHECK(gaussian_moment(10) == 945);
}

TEST_CASE("orthogonality matrix is diag(n!)") {
  for (int m = 0; m <= 10; ++m) {
    for (int n = 0; n <= 10; ++n) {
      Rational want = (m == n) ? Rational(factorial(static_cast<unsigned>(n))) : Rational(0);
      REQUIRE(gaussian_expectation(hermite(m) * hermite(n)) == want);
    }
  }
}

TEST_CASE("expectation examples") {
  CHECK(gaussian_expectation(hermite(3) * hermite(3)) == 6);
  CHECK(gaussian_expectation(hermite(2) * hermite(4)) == 0);
  CHECK(gaussian_expectation(hermite(2)) == 0);
  CHECK_THROWS_AS(gaussian_expectation(Poly<Rational>::variable(Var::t)),
                  std::invalid_argument);
}

TEST_CASE("hermite basis conversion") {
  auto x = Poly<Rational>::variable(Var::x);
  auto c = to_hermite(x * x);
  REQUIRE(c.size() == 2);
  CHECK(c.at(0) == 1);
  CHECK(c.at(2) == 1);
  CHECK(to_hermite(hermite(5)) == HermiteCoefficients{{5, Rational(1)}});
  CHECK(to_hermite(Poly<Rational>::zero(Var::x)).empty());

  Rng rng(240502);
  for (int trial = 0; trial < 100; ++trial) {
    auto p = pso::testing::random_poly<Rational>(rng, Var::x, 20);
    auto cs = to_hermite(p);
    for (const auto& [k, v] : cs) REQUIRE(v != 0);
    REQUIRE(from_hermite(cs) == p);
  }
}
