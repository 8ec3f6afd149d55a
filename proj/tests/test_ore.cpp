#include "pso/ore.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "pso/hermite.hpp"
#include "pso/pso.hpp"
#include "test_util.hpp"

using namespace pso;
using pso::testing::Rng;
using RF = OrePoly::RF;
using GP = Poly<GaussianRational>;

namespace {

GP tp(std::initializer_list<Rational> ascending) {
  GP p = GP::zero(Var::t);
  int n = 0;
  for (const auto& c : ascending) {
    if (c != 0) p = p + GP::monomial(Var::t, n, GaussianRational(c));
    ++n;
  }
  return p;
}

OrePoly op(std::initializer_list<GP> ascending) {
  std::vector<RF> cs;
  for (const auto& p : ascending) cs.push_back(RF::from_poly(p));
  return OrePoly(std::move(cs));
}

RF random_rf(Rng& rng, bool allow_denominator) {
  auto num = pso::testing::random_poly<GaussianRational>(rng, Var::t, 2);
  if (!allow_denominator) return RF::from_poly(num);
  auto den = pso::testing::random_nonzero_poly<GaussianRational>(rng, Var::t, 1);
  return RF(num, den);
}

OrePoly random_ore(Rng& rng, int max_order, bool allow_denominator) {
  std::uniform_int_distribution<int> ord(0, max_order);
  int d = ord(rng);
  std::vector<RF> cs;
  for (int k = 0; k < d; ++k) cs.push_back(random_rf(rng, allow_denominator));
  // nonzero leading keeps the sampled order honest
  RF lead(Var::t);
  do {
    lead = random_rf(rng, allow_denominator);
  } while (lead.is_zero());
  cs.push_back(lead);
  return OrePoly(std::move(cs));
}

const OrePoly kD = OrePoly::d_power(1);
const OrePoly kOne = OrePoly::d_power(0);

}  // namespace

TEST_CASE("ore product implements the skew commutation rule") {
  RF inv_t(tp({1}), tp({0, 1}));
  // D * (1/t) = (1/t) D - 1/t^2
  OrePoly left = ore_mul(kD, OrePoly::from_rf(inv_t));
  OrePoly expected = OrePoly::d_power(1, inv_t) + OrePoly::from_rf(RF(tp({-1}), tp({0, 0, 1})));
  CHECK(left == expected);

  // (D + t)(D + 2t) = D^2 + 3t D + (2t^2 + 2)
  OrePoly dpt = op({tp({0, 1}), tp({1})});
  OrePoly dp2t = op({tp({0, 2}), tp({1})});
  CHECK(ore_mul(dpt, dp2t) == op({tp({2, 0, 2}), tp({0, 3}), tp({1})}));
  CHECK(ore_mul(dp2t, dpt) == op({tp({1, 0, 2}), tp({0, 3}), tp({1})}));

  CHECK(ore_mul(dpt, kOne) == dpt);
  CHECK(ore_mul(kOne, dpt) == dpt);
  CHECK(ore_mul(dpt, OrePoly::zero()).is_zero());
}

TEST_CASE("ore ring axioms on random operators") {
  Rng rng(0x0817aa11);
  for (int trial = 0; trial < 60; ++trial) {
    OrePoly a = random_ore(rng, 2, trial % 3 == 0);
    OrePoly b = random_ore(rng, 2, trial % 3 == 1);
    OrePoly c = random_ore(rng, 2, false);
    CHECK(ore_mul(ore_mul(a, b), c) == ore_mul(a, ore_mul(b, c)));
    CHECK(ore_mul(a, b + c) == ore_mul(a, b) + ore_mul(a, c));
    CHECK(ore_mul(a + b, c) == ore_mul(a, c) + ore_mul(b, c));
    CHECK(ore_mul(a, b).order() == a.order() + b.order());
  }
}

TEST_CASE("right division examples") {
  auto [q1, r1] = right_divide(ore_mul(kD, kD), kD);
  CHECK(q1 == kD);
  CHECK(r1.is_zero());

  // A = (D + t)(D + 2t), so the right factor is D + 2t
  OrePoly A = op({tp({2, 0, 2}), tp({0, 3}), tp({1})});
  auto [q2, r2] = right_divide(A, op({tp({0, 2}), tp({1})}));
  CHECK(q2 == op({tp({0, 1}), tp({1})}));  // D + t
  CHECK(r2.is_zero());

  auto [q3, r3] = right_divide(op({tp({0, 1}), tp({1})}), op({tp({0, 2}), tp({1})}));
  CHECK(q3 == kOne);
  CHECK(r3 == op({tp({0, -1})}));

  CHECK_THROWS_AS(right_divide(kD, OrePoly::zero()), std::domain_error);
}

TEST_CASE("right division identity and order drop on random pairs") {
  Rng rng(0x0817bb22);
  for (int trial = 0; trial < 300; ++trial) {
    OrePoly a = random_ore(rng, 4, trial % 5 == 0);
    OrePoly b = random_ore(rng, 3, trial % 7 == 0);
    auto [q, r] = right_divide(a, b);
    CHECK(a == ore_mul(q, b) + r);
    CHECK(r.order() < b.order());
  }
}

TEST_CASE("gcrd basics") {
  OrePoly dpt = op({tp({0, 1}), tp({1})});
  OrePoly dp2t = op({tp({0, 2}), tp({1})});
  CHECK(gcrd(dpt, dp2t) == kOne);

  // a common right factor survives into the gcrd
  OrePoly g = dpt;
  OrePoly a = ore_mul(op({tp({0, 2}), tp({1})}), g);
  OrePoly b = ore_mul(op({tp({0, -1}), tp({1})}), g);
  OrePoly d = gcrd(a, b);
  CHECK(d.order() >= 1);
  CHECK(right_divide(d, g).second.is_zero());

  CHECK(gcrd(OrePoly::zero(), dpt) == dpt.monic());
  CHECK_THROWS_AS(gcrd(OrePoly::zero(), OrePoly::zero()), std::domain_error);
}

TEST_CASE("lclm golden value and its two factorizations") {
  OrePoly dpt = op({tp({0, 1}), tp({1})});
  OrePoly dp2t = op({tp({0, 2}), tp({1})});
  OrePoly L = lclm(dpt, dp2t);
  CHECK(L.order() == 2);

  OrePoly golden = op({tp({0, 0, 0, 2}), tp({-1, 0, 3}), tp({0, 1})});
  CHECK(golden == ore_mul(op({tp({-1, 0, 2}), tp({0, 1})}), dpt));
  CHECK(golden == ore_mul(op({tp({-1, 0, 1}), tp({0, 1})}), dp2t));
  CHECK(content_normalize(clear_denominators(L)) ==
        content_normalize(clear_denominators(golden.monic())));

  auto cleared = content_normalize(clear_denominators(L));
  WeylElement<GaussianRational> want(Var::t);
  want.add_term(1, 2, GaussianRational(1));
  want.add_term(2, 1, GaussianRational(3));
  want.add_term(0, 1, GaussianRational(-1));
  want.add_term(3, 0, GaussianRational(2));
  CHECK(cleared == want);
}

TEST_CASE("lclm of an operator with itself is itself") {
  Rng rng(0x0817cc33);
  for (int trial = 0; trial < 25; ++trial) {
    OrePoly a = random_ore(rng, 2, trial % 4 == 0);
    OrePoly L = lclm(a, a);
    CHECK(L == a.monic());
  }
}

namespace {

// Independent order-witness for lclm: run the Euclidean remainder sequence
// with cofactor bookkeeping r_i = u_i a + v_i b; when the remainder hits
// zero, u a = -v b is a common left multiple of minimal order.
OrePoly syzygy_lclm(const OrePoly& a, const OrePoly& b) {
  OrePoly r0 = a, r1 = b;
  OrePoly u0 = OrePoly::d_power(0), u1 = OrePoly::zero();
  while (!r1.is_zero()) {
    auto [q, r2] = right_divide(r0, r1);
    OrePoly u2 = u0 - ore_mul(q, u1);
    r0 = r1;
    r1 = r2;
    u0 = u1;
    u1 = u2;
  }
  return ore_mul(u1, a).monic();
}

}  // namespace

TEST_CASE("lclm agrees with the Euclidean syzygy construction") {
  Rng rng(0x0817dd44);
  for (int trial = 0; trial < 20; ++trial) {
    OrePoly a = random_ore(rng, 2, false);
    OrePoly b = random_ore(rng, 2, false);
    if (a.order() == 0 || b.order() == 0) continue;
    OrePoly L = lclm(a, b);
    OrePoly S = syzygy_lclm(a, b);
    CHECK(S.order() == L.order());
    CHECK(right_divide(S, L).second.is_zero());
    CHECK(right_divide(L, a).second.is_zero());
    CHECK(right_divide(L, b).second.is_zero());
  }
}

TEST_CASE("denominator clearing and content normalization") {
  RF inv_t(tp({1}), tp({0, 1}));
  RF inv_t2(tp({-1}), tp({0, 0, 1}));
  OrePoly a = OrePoly::d_power(1, inv_t) + OrePoly::from_rf(inv_t2);
  WeylElement<GaussianRational> cleared = clear_denominators(a);
  WeylElement<GaussianRational> want(Var::t);
  want.add_term(1, 1, GaussianRational(1));
  want.add_term(0, 0, GaussianRational(-1));
  CHECK(cleared == want);

  // common polynomial factor and integer content both stripped: 2t D + 4t -> D + 2
  WeylElement<GaussianRational> raw(Var::t);
  raw.add_term(1, 1, GaussianRational(2));
  raw.add_term(1, 0, GaussianRational(4));
  WeylElement<GaussianRational> norm = content_normalize(raw);
  WeylElement<GaussianRational> want2(Var::t);
  want2.add_term(0, 1, GaussianRational(1));
  want2.add_term(0, 0, GaussianRational(2));
  CHECK(norm == want2);

  // unit normalization turns the leading coefficient positive real
  WeylElement<GaussianRational> neg = WeylElement<GaussianRational>::term(Var::t, 0, 1, GaussianRational(-1));
  CHECK(content_normalize(neg) == WeylElement<GaussianRational>::term(Var::t, 0, 1, GaussianRational(1)));

  WeylElement<GaussianRational> mixedu(Var::t);
  mixedu.add_term(0, 1, GaussianRational::i());
  mixedu.add_term(1, 0, GaussianRational(1));
  WeylElement<GaussianRational> wantu(Var::t);
  wantu.add_term(0, 1, GaussianRational(1));
  wantu.add_term(1, 0, -GaussianRational::i());
  CHECK(content_normalize(mixedu) == wantu);

  // fractional coefficients scale to coprime integers: (1/2) D + (3/4) t -> 2 D + 3 t
  WeylElement<GaussianRational> frac(Var::t);
  frac.add_term(0, 1, GaussianRational(Rational(1, 2)));
  frac.add_term(1, 0, GaussianRational(Rational(3, 4)));
  WeylElement<GaussianRational> wantf(Var::t);
  wantf.add_term(0, 1, GaussianRational(2));
  wantf.add_term(1, 0, GaussianRational(3));
  CHECK(content_normalize(frac) == wantf);
}

TEST_CASE("mixture spec validation") {
  CHECK_THROWS_AS(MixtureSpec({}), std::invalid_argument);
  CHECK_THROWS_AS(MixtureSpec({Rational(1), Rational(1)}), std::invalid_argument);
  CHECK_THROWS_AS(MixtureSpec({Rational(0)}), std::invalid_argument);
  CHECK_THROWS_AS(MixtureSpec({Rational(-2)}), std::invalid_argument);
  CHECK_THROWS_AS(MixtureSpec({Rational(1), Rational(2)}, {Rational(1, 2)}), std::invalid_argument);
  CHECK_THROWS_AS(MixtureSpec({Rational(1), Rational(2)}, {Rational(1, 2), Rational(1, 4)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(MixtureSpec({Rational(1), Rational(2)}, {Rational(3, 2), Rational(-1, 2)}),
                  std::invalid_argument);
  MixtureSpec def({Rational(1), Rational(2)});
  CHECK(def.weights == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
}

TEST_CASE("mixture annihilator goldens") {
  auto one = mixture_annihilator(MixtureSpec({Rational(1)}));
  WeylElement<GaussianRational> dpt(Var::t);
  dpt.add_term(0, 1, GaussianRational(1));
  dpt.add_term(1, 0, GaussianRational(1));
  CHECK(one == dpt);

  auto two = mixture_annihilator(MixtureSpec({Rational(1), Rational(2)}));
  WeylElement<GaussianRational> want(Var::t);
  want.add_term(1, 2, GaussianRational(1));
  want.add_term(2, 1, GaussianRational(3));
  want.add_term(0, 1, GaussianRational(-1));
  want.add_term(3, 0, GaussianRational(2));
  CHECK(two == want);
  CHECK(act_on_cf(two, CFFamily(Rational(1), Rational(0))).is_zero());
  CHECK(act_on_cf(two, CFFamily(Rational(2), Rational(0))).is_zero());
  CHECK_FALSE(act_on_cf(two, CFFamily(Rational(4), Rational(0))).is_zero());

  auto three = mixture_annihilator(MixtureSpec({Rational(1), Rational(2), Rational(3)}));
  CHECK(three.d_order() == 3);
  for (long s : {1, 2, 3})
    CHECK(act_on_cf(three, CFFamily(Rational(s), Rational(0))).is_zero());
  CHECK_FALSE(act_on_cf(three, CFFamily(Rational(4), Rational(0))).is_zero());
}

TEST_CASE("mixture annihilator order matches the component count") {
  CHECK(mixture_annihilator(MixtureSpec({Rational(1), Rational(2), Rational(3), Rational(4)}))
            .d_order() == 4);
  CHECK(mixture_annihilator(MixtureSpec({Rational(1, 2), Rational(1), Rational(3, 2), Rational(5, 2)}))
            .d_order() == 4);
}

TEST_CASE("mixture operator ignores the weights") {
  std::vector<Rational> vars{Rational(1), Rational(2)};
  auto a = mixture_stein_operator(MixtureSpec(vars, {Rational(1, 2), Rational(1, 2)}));
  auto b = mixture_stein_operator(MixtureSpec(vars, {Rational(1, 3), Rational(2, 3)}));
  auto c = mixture_stein_operator(MixtureSpec(vars, {Rational(1, 4), Rational(3, 4)}));
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("mixture operator on the x side") {
  auto single = mixture_stein_operator(MixtureSpec({Rational(1)}));
  CHECK(single == stein_g());

  auto two = mixture_stein_operator(MixtureSpec({Rational(1), Rational(2)}));
  WeylElement<Rational> want(Var::x);
  want.add_term(0, 3, Rational(2));
  want.add_term(1, 2, Rational(-3));
  want.add_term(2, 1, Rational(1));
  want.add_term(1, 0, Rational(-1));
  CHECK(two == want);

  // a mixture containing the standard component gives a standard-Gaussian
  // Stein operator; expectations vanish exactly
  CHECK(is_member(two).member);
  CHECK(is_member(mixture_stein_operator(MixtureSpec({Rational(1), Rational(3)}))).member);
  CHECK(is_member(mixture_stein_operator(MixtureSpec({Rational(1), Rational(2), Rational(3)}))).member);
  Rng rng(0x0817ee55);
  for (int trial = 0; trial < 30; ++trial) {
    auto f = pso::testing::random_poly<Rational>(rng, Var::x, 12);
    CHECK(exact_zero_expectation(two, f) == 0);
  }

  // without the standard component the operator leaves the class
  CHECK_FALSE(is_member(mixture_stein_operator(MixtureSpec({Rational(2), Rational(3)}))).member);
}

TEST_CASE("semicircle annihilator and its x-side image") {
  auto sc = semicircle_annihilator();
  WeylElement<GaussianRational> want(Var::t);
  want.add_term(1, 2, GaussianRational(1));
  want.add_term(0, 1, GaussianRational(3));
  want.add_term(1, 0, GaussianRational(1));
  CHECK(sc == want);

  auto xside = to_real_by_unit(psi_inverse(sc));
  WeylElement<Rational> wantx(Var::x);
  wantx.add_term(2, 1, Rational(1));
  wantx.add_term(0, 1, Rational(-1));
  wantx.add_term(1, 0, Rational(3));
  CHECK(xside == wantx);
}

TEST_CASE("intersection operator") {
  // joining the Gaussian annihilator with itself returns the Stein generator
  CHECK(intersection_operator(gaussian_cf_annihilator(Rational(1))) == stein_g());

  // the joint annihilator has t-side order 3, which lands in the x-side
  // polynomial degree under the transform
  auto joint = intersection_operator(semicircle_annihilator());
  CHECK(joint.var_degree() == 3);
  CHECK(is_member(joint).member);

  // its transform is a common left multiple of both input annihilators
  auto back = OrePoly::from_weyl(psi(joint));
  CHECK(back.order() == 3);
  CHECK(right_divide(back, OrePoly::from_weyl(gaussian_cf_annihilator(Rational(1)))).second.is_zero());
  CHECK(right_divide(back, OrePoly::from_weyl(semicircle_annihilator())).second.is_zero());

  CHECK_THROWS_AS(intersection_operator(WeylElement<GaussianRational>(Var::t)),
                  std::invalid_argument);
}
