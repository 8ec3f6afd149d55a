#include <catch2/catch_amalgamated.hpp>

#include "pso/pso.hpp"
#include "test_util.hpp"

using namespace pso;
using pso::testing::Rng;

namespace {

WeylElement<Rational> parse_terms(std::initializer_list<std::tuple<int, int, long>> ts) {
  WeylElement<Rational> e(Var::x);
  for (auto& [n, k, c] : ts) e.add_term(n, k, Rational(c));
  return e;
}

}  // namespace

TEST_CASE("membership by the integration-by-parts residual") {
  CHECK(is_member(stein_g()).member);

  // D^2 - x^2 + 1
  auto L2 = parse_terms({{0, 2, 1}, {2, 0, -1}, {0, 0, 1}});
  CHECK(is_member(L2).member);

  // D + x has residual 2x
  auto bad = parse_terms({{0, 1, 1}, {1, 0, 1}});
  auto mr = is_member(bad);
  CHECK_FALSE(mr.member);
  CHECK(mr.residual == Rational(2) * Poly<Rational>::variable(Var::x));

  CHECK(is_member(WeylElement<Rational>::zero(Var::x)).member);
  CHECK_FALSE(is_member(WeylElement<Rational>::constant(Var::x, Rational(1))).member);
  CHECK_THROWS_AS(is_member(WeylElement<Rational>::derivative_gen(Var::t)),
                  std::invalid_argument);
}

TEST_CASE("basis decomposition") {
  auto L2 = parse_terms({{0, 2, 1}, {2, 0, -1}, {0, 0, 1}});
  CHECK(basis_decompose(L2) == HermiteDecomposition{{{0, 2}, Rational(1)}});

  // x D - x^2 + 1 = H_1 D - H_2
  auto S11 = parse_terms({{1, 1, 1}, {2, 0, -1}, {0, 0, 1}});
  CHECK(basis_decompose(S11) == HermiteDecomposition{{{1, 1}, Rational(1)}});

  auto combo = Rational(3) * stein_g() + L2;
  CHECK(basis_decompose(combo) ==
        HermiteDecomposition{{{0, 1}, Rational(3)}, {{0, 2}, Rational(1)}});

  auto bad = parse_terms({{0, 1, 1}, {1, 0, 1}});
  CHECK_THROWS_AS(basis_decompose(bad), std::domain_error);
}

TEST_CASE("reconstruction from basis coordinates is exact") {
  Rng rng(460200);
  std::uniform_int_distribution<std::uint64_t> seeds;
  for (int trial = 0; trial < 100; ++trial) {
    auto S = random_member(seeds(rng), 5, 5, 5);
    REQUIRE(expand(basis_decompose(S)) == S);
  }
}

TEST_CASE("division by the generator") {
  auto fact = divide_by_G(stein_g());
  CHECK(fact.cofactor == WeylElement<Rational>::constant(Var::x, Rational(1)));
  CHECK(fact.remainder.is_zero());

  auto L2 = parse_terms({{0, 2, 1}, {2, 0, -1}, {0, 0, 1}});
  auto f2 = divide_by_G(L2);
  CHECK(f2.cofactor == parse_terms({{1, 0, 1}, {0, 1, 1}}));  // x + D
  CHECK(f2.remainder.is_zero());

  auto bad = parse_terms({{0, 1, 1}, {1, 0, 1}});
  auto f3 = divide_by_G(bad);
  CHECK(f3.cofactor == WeylElement<Rational>::constant(Var::x, Rational(1)));
  CHECK(f3.remainder == Rational(2) * Poly<Rational>::variable(Var::x));

  // order-0 input: quotient 0, remainder the input itself
  auto c = Poly<Rational>(Var::x, {Rational(2), Rational(5)});
  auto f4 = divide_by_G(WeylElement<Rational>::from_poly(c));
  CHECK(f4.cofactor.is_zero());
  CHECK(f4.remainder == c);
}

TEST_CASE("division agrees with membership on random elements") {
  Rng rng(77123);
  std::uniform_int_distribution<std::uint64_t> seeds;
  for (int trial = 0; trial < 200; ++trial) {
    auto S = (trial % 2 == 0) ? random_member(seeds(rng), 4, 4, 4)
                              : pso::testing::random_weyl<Rational>(rng, Var::x, 4, 4);
    auto fact = divide_by_G(S);
    auto mr = is_member(S);
    REQUIRE(fact.remainder.is_zero() == mr.member);
    REQUIRE(weyl_mul(stein_g(), fact.cofactor) +
                WeylElement<Rational>::from_poly(fact.remainder) ==
            S);
  }
}

TEST_CASE("explicit cofactors of basis members") {
  CHECK(cofactor_of_basis(0, 1) == WeylElement<Rational>::constant(Var::x, Rational(1)));
  CHECK(cofactor_of_basis(0, 2) == parse_terms({{1, 0, 1}, {0, 1, 1}}));  // x + D
  CHECK(cofactor_of_basis(1, 1) == parse_terms({{1, 0, 1}}));             // x

  for (int k = 0; k <= 6; ++k)
    for (int t = 1; t <= 6; ++t)
      REQUIRE(weyl_mul(stein_g(), cofactor_of_basis(k, t)) == basis_element(k, t));

  CHECK_THROWS_AS(cofactor_of_basis(-1, 1), std::invalid_argument);
  CHECK_THROWS_AS(cofactor_of_basis(0, 0), std::invalid_argument);
  CHECK(std::string(cofactor_index_convention()).find("H_{k+t-r}") != std::string::npos);
}

TEST_CASE("the shifted cofactor variant lands one index up") {
  // sum_{r=1..t} H_{k+t+1-r} D^{r-1} multiplies to the (k+1, t) basis member,
  // which is why the convention above subtracts r from k+t instead.
  for (int k = 0; k <= 3; ++k) {
    for (int t = 1; t <= 4; ++t) {
      std::vector<Poly<Rational>> q(static_cast<size_t>(t), Poly<Rational>::zero(Var::x));
      for (int r = 1; r <= t; ++r) q[static_cast<size_t>(r - 1)] = hermite(k + t + 1 - r);
      auto Q = WeylElement<Rational>::from_coefficient_form(Var::x, q);
      REQUIRE(weyl_mul(stein_g(), Q) == basis_element(k + 1, t));
    }
  }
}

TEST_CASE("named families are members") {
  for (int m = 1; m <= 10; ++m) REQUIRE(is_member(family_s(m)).member);
  for (int m = 1; m <= 8; ++m) REQUIRE(is_member(family_l(m)).member);
  for (int k = 0; k <= 6; ++k)
    for (int t = 1; t <= 6; ++t) REQUIRE(is_member(basis_element(k, t)).member);
  for (int n = 0; n <= 8; ++n) REQUIRE(is_member(family_xnd(n)).member);
  for (int m = 1; m <= 8; ++m) REQUIRE(is_member(family_r(m)).member);

  Rng rng(31337);
  for (int trial = 0; trial < 50; ++trial) {
    auto p = pso::testing::random_nonzero_poly<Rational>(rng, Var::x, 6);
    REQUIRE(is_member(first_order_member(p)).member);
  }
}

TEST_CASE("family closed forms") {
  // S_2 = x D - x^2 + 1
  CHECK(family_s(2) == parse_terms({{1, 1, 1}, {2, 0, -1}, {0, 0, 1}}));
  CHECK(family_s(1) == stein_g());
  CHECK(family_l(2) == parse_terms({{0, 2, 1}, {2, 0, -1}, {0, 0, 1}}));
  // n=1: x D + 1 - x^2
  CHECK(family_xnd(1) == parse_terms({{1, 1, 1}, {0, 0, 1}, {2, 0, -1}}));
  CHECK(family_xnd(0) == stein_g());
  // p = 1: D - x
  CHECK(first_order_member(Poly<Rational>::constant(Var::x, Rational(1))) == stein_g());

  CHECK(family_r(1) == stein_g());
  CHECK(family_r(2) == family_l(2));
  CHECK(family_r(3) == parse_terms({{0, 3, 1}, {0, 1, 3}, {3, 0, -1}}));  // D^3 + 3D - x^3

  CHECK_THROWS_AS(family_s(0), std::invalid_argument);
  CHECK_THROWS_AS(family_r(0), std::invalid_argument);
  CHECK_THROWS_AS(family_xnd(-1), std::invalid_argument);
  CHECK_THROWS_AS(first_order_member(Poly<Rational>::zero(Var::x)), std::invalid_argument);
}

TEST_CASE("exact zero expectation") {
  auto x2 = Poly<Rational>::monomial(Var::x, 2);
  auto x4 = Poly<Rational>::monomial(Var::x, 4);
  CHECK(exact_zero_expectation(stein_g(), x2) == 0);
  CHECK(exact_zero_expectation(family_l(2), x4) == 0);
  auto bad = parse_terms({{0, 1, 1}, {1, 0, 1}});
  CHECK(exact_zero_expectation(bad, Poly<Rational>::variable(Var::x)) == 2);

  Rng rng(990011);
  std::uniform_int_distribution<std::uint64_t> seeds;
  for (int trial = 0; trial < 100; ++trial) {
    auto S = random_member(seeds(rng), 4, 4, 4);
    auto f = pso::testing::random_poly<Rational>(rng, Var::x, 12);
    REQUIRE(exact_zero_expectation(S, f) == 0);
  }
}

TEST_CASE("members form a right ideal but not a left ideal") {
  Rng rng(5522);
  std::uniform_int_distribution<std::uint64_t> seeds;
  for (int trial = 0; trial < 100; ++trial) {
    auto S = random_member(seeds(rng), 3, 3, 3);
    auto A = pso::testing::random_weyl<Rational>(rng, Var::x, 3, 3);
    REQUIRE(is_member(weyl_mul(S, A)).member);
  }
  // left multiplication by x leaves the ideal: x(D - x) has residual -1
  auto left = weyl_mul(WeylElement<Rational>::variable(Var::x), stein_g());
  auto mr = is_member(left);
  CHECK_FALSE(mr.member);
  CHECK(mr.residual == Poly<Rational>::constant(Var::x, Rational(-1)));
}

TEST_CASE("random members and perturbations") {
  for (std::uint64_t seed : {1ull, 2ull, 77ull, 123456789ull}) {
    auto S = random_member(seed, 4, 4, 4);
    REQUIRE(is_member(S).member);
    REQUIRE(S.d_order() <= 4);
    REQUIRE(random_member(seed, 4, 4, 4) == S);  // deterministic
    auto bumped = S + WeylElement<Rational>::constant(Var::x, Rational(1));
    REQUIRE_FALSE(is_member(bumped).member);
  }
}

TEST_CASE("operator dispatcher") {
  CHECK(make_operator("G", {}) == stein_g());
  CHECK(make_operator("S", {Rational(2)}) == family_s(2));
  CHECK(make_operator("L", {Rational(3)}) == family_l(3));
  CHECK(make_operator("skt", {Rational(1), Rational(2)}) == basis_element(1, 2));
  CHECK(make_operator("xnd", {Rational(4)}) == family_xnd(4));
  CHECK(make_operator("R", {Rational(3)}) == family_r(3));
  CHECK(make_operator("firstorder", {Rational(1), Rational(0), Rational(2)}) ==
        first_order_member(Poly<Rational>(Var::x, {Rational(1), Rational(0), Rational(2)})));
  CHECK(make_operator("random", {Rational(7)}) == random_member(7));

  CHECK_THROWS_AS(make_operator("nope", {}), std::invalid_argument);
  CHECK_THROWS_AS(make_operator("S", {}), std::invalid_argument);
  CHECK_THROWS_AS(make_operator("S", {make_rational(BigInt(1), BigInt(2))}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_operator("G", {Rational(1)}), std::invalid_argument);
}
