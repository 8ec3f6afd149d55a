#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pso/hermite.hpp"
#include "pso/weyl.hpp"

namespace pso {

// The generator of the (right) ideal of Gaussian Stein operators: D - x.
inline WeylElement<Rational> stein_g() {
  WeylElement<Rational> g(Var::x);
  g.add_term(0, 1, Rational(1));
  g.add_term(1, 0, Rational(-1));
  return g;
}

// Basis member H_k D^t - H_{k+t}; requires t >= 1 (at t = 0 the difference
// collapses to zero, so those indices are excluded).
inline WeylElement<Rational> basis_element(int k, int t) {
  if (k < 0 || t < 1) throw std::invalid_argument("basis_element: need k >= 0, t >= 1");
  std::vector<Poly<Rational>> ps(static_cast<size_t>(t) + 1, Poly<Rational>::zero(Var::x));
  ps[0] = -hermite(k + t);
  ps[static_cast<size_t>(t)] = hermite(k);
  return WeylElement<Rational>::from_coefficient_form(Var::x, ps);
}

struct MembershipResult {
  bool member;
  Poly<Rational> residual;  // p_0 + sum_{t>=1} delta^t p_t; zero iff member
};

// Zero-expectation test for S = sum p_t D^t against the standard Gaussian:
// Gaussian integration by parts turns E[S f] into E[f * residual], so S is a
// Stein operator exactly when the residual polynomial vanishes.
inline MembershipResult is_member(const WeylElement<Rational>& S) {
  check_same_var(S.var(), Var::x, "is_member");
  auto ps = as_coefficient_form(S);
  Poly<Rational> residual = Poly<Rational>::zero(Var::x);
  for (size_t t = 0; t < ps.size(); ++t)
    residual += delta_iterated(ps[t], static_cast<int>(t));
  return {residual.is_zero(), residual};
}

// Coordinates of a member in the basis {H_k D^t - H_{k+t}}: key (k, t), t >= 1.
using HermiteDecomposition = std::map<std::pair<int, int>, Rational>;

inline WeylElement<Rational> expand(const HermiteDecomposition& cs) {
  WeylElement<Rational> out(Var::x);
  for (const auto& [kt, c] : cs) out += c * basis_element(kt.first, kt.second);
  return out;
}

// The coefficient of D^t in Hermite coordinates gives the (k, t) entries
// directly; the order-0 part is then forced by membership.
inline HermiteDecomposition basis_decompose(const WeylElement<Rational>& S) {
  auto mr = is_member(S);
  if (!mr.member)
    throw std::domain_error("basis_decompose: not a Stein operator, residual " +
                            to_string(mr.residual));
  HermiteDecomposition out;
  auto ps = as_coefficient_form(S);
  for (size_t t = 1; t < ps.size(); ++t) {
    for (const auto& [k, c] : to_hermite(ps[t])) out.emplace(std::pair{k, static_cast<int>(t)}, c);
  }
  return out;
}

struct GFactorization {
  WeylElement<Rational> cofactor;   // Q
  Poly<Rational> remainder;         // r, derivative-free
};

// Right division by D - x: S = (D - x) Q + r with r of order 0. Solving
// coefficient by coefficient from the top gives q_{T-1} = p_T and
// q_{s-1} = p_s - q_s' + x q_s; the result is re-multiplied as a check.
inline GFactorization divide_by_G(const WeylElement<Rational>& S) {
  check_same_var(S.var(), Var::x, "divide_by_G");
  const auto x = Poly<Rational>::variable(Var::x);
  auto ps = as_coefficient_form(S);
  int T = S.d_order();
  GFactorization out{WeylElement<Rational>(Var::x), Poly<Rational>::zero(Var::x)};
  if (T <= 0) {
    out.remainder = ps.empty() ? Poly<Rational>::zero(Var::x) : ps[0];
  } else {
    std::vector<Poly<Rational>> q(static_cast<size_t>(T), Poly<Rational>::zero(Var::x));
    q[static_cast<size_t>(T - 1)] = ps[static_cast<size_t>(T)];
    for (int s = T - 1; s >= 1; --s) {
      const auto& qs = q[static_cast<size_t>(s)];
      q[static_cast<size_t>(s - 1)] = ps[static_cast<size_t>(s)] - qs.derivative() + x * qs;
    }
    out.cofactor = WeylElement<Rational>::from_coefficient_form(Var::x, q);
    out.remainder = ps[0] - (q[0].derivative() - x * q[0]);
  }
  if (weyl_mul(stein_g(), out.cofactor) + WeylElement<Rational>::from_poly(out.remainder) != S)
    throw std::logic_error("divide_by_G: factorization check failed");
  return out;
}

// Explicit cofactor of a basis member: sum_{r=1..t} H_{k+t-r} D^{r-1}.
// The product identity (D - x)(H_j D^l) = H_j D^{l+1} - H_{j+1} D^l makes the
// sum telescope to H_k D^t - H_{k+t}; the multiplication is still performed
// and checked rather than trusted.
inline WeylElement<Rational> cofactor_of_basis(int k, int t) {
  if (k < 0 || t < 1) throw std::invalid_argument("cofactor_of_basis: need k >= 0, t >= 1");
  std::vector<Poly<Rational>> q(static_cast<size_t>(t), Poly<Rational>::zero(Var::x));
  for (int r = 1; r <= t; ++r) q[static_cast<size_t>(r - 1)] = hermite(k + t - r);
  auto Q = WeylElement<Rational>::from_coefficient_form(Var::x, q);
  if (weyl_mul(stein_g(), Q) != basis_element(k, t))
    throw std::logic_error("cofactor_of_basis: multiplication check failed");
  return Q;
}

// Which index convention survives the multiplication check; kept as a plain
// string so reports can cite it.
inline const char* cofactor_index_convention() {
  return "cofactor(k,t) = sum_{r=1..t} H_{k+t-r}*D^(r-1), verified by (D-x)*Q = "
         "H_k*D^t - H_{k+t}; the variant using H_{k+t+1-r} multiplies out to "
         "H_{k+1}*D^t - H_{k+t+1} and is therefore the cofactor of (k+1,t)";
}

// H_{m-1} D - H_m
inline WeylElement<Rational> family_s(int m) {
  if (m < 1) throw std::invalid_argument("family_s: need m >= 1");
  return basis_element(m - 1, 1);
}

// D^m - H_m
inline WeylElement<Rational> family_l(int m) {
  if (m < 1) throw std::invalid_argument("family_l: need m >= 1");
  return basis_element(0, m);
}

// x^n D + (n x^{n-1} - x^{n+1})
inline WeylElement<Rational> family_xnd(int n) {
  if (n < 0) throw std::invalid_argument("family_xnd: need n >= 0");
  WeylElement<Rational> out(Var::x);
  out.add_term(n, 1, Rational(1));
  if (n >= 1) out.add_term(n - 1, 0, Rational(n));
  out.add_term(n + 1, 0, Rational(-1));
  return out;
}

// p D - (x p - p'), the order-1 member built from any nonzero polynomial p.
inline WeylElement<Rational> first_order_member(const Poly<Rational>& p) {
  check_same_var(p.var(), Var::x, "first_order_member");
  if (p.is_zero()) throw std::invalid_argument("first_order_member: zero polynomial");
  std::vector<Poly<Rational>> ps{-delta(p), p};
  return WeylElement<Rational>::from_coefficient_form(Var::x, ps);
}

// H_m with -i*D substituted for the variable, times (-1)^m, minus i^m x^m.
// The result is a Gaussian-rational element equal to a real one times a unit;
// the unit is stripped so the family lands in the rational algebra.
inline WeylElement<Rational> family_r(int m) {
  if (m < 1) throw std::invalid_argument("family_r: need m >= 1");
  auto hm = hermite(m);
  WeylElement<GaussianRational> out(Var::x);
  const GaussianRational sign = (m % 2 == 0) ? GaussianRational(1) : GaussianRational(-1);
  for (int j = 0; j <= hm.degree(); ++j) {
    if (hm.coeff(j) == 0) continue;
    // (-i)^j = i^{-j}
    out.add_term(0, j, sign * GaussianRational(hm.coeff(j)) * GaussianRational::i_power(-j));
  }
  out.add_term(m, 0, -GaussianRational::i_power(m));
  return to_real_by_unit(out);
}

// E[(S f)(N)] for the standard Gaussian, exact.
inline Rational exact_zero_expectation(const WeylElement<Rational>& S, const Poly<Rational>& f) {
  return gaussian_expectation(pso::apply(S, f));
}

// Deterministic random combination of basis members; always a member.
inline WeylElement<Rational> random_member(std::uint64_t seed, int max_k = 4, int max_t = 4,
                                           int max_terms = 4) {
  if (max_k < 0 || max_t < 1 || max_terms < 1)
    throw std::invalid_argument("random_member: bad bounds");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<int> kd(0, max_k);
  std::uniform_int_distribution<int> td(1, max_t);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 4);
  WeylElement<Rational> out(Var::x);
  int n = nterms(rng);
  for (int j = 0; j < n; ++j) {
    long a = num(rng);
    if (a == 0) a = 1;
    out += make_rational(BigInt(a), BigInt(den(rng))) * basis_element(kd(rng), td(rng));
  }
  if (out.is_zero()) out = basis_element(0, 1);
  return out;
}

// Dispatcher used by the command surface. Families and their parameters:
//   "G" [] | "S" [m] | "L" [m] | "skt" [k t] | "xnd" [n] |
//   "firstorder" [c0 c1 ...] | "R" [m] | "random" [seed [k t terms]]
inline WeylElement<Rational> make_operator(const std::string& family,
                                           const std::vector<Rational>& params) {
  auto want_int = [&](size_t idx) -> int {
    if (idx >= params.size())
      throw std::invalid_argument("make_operator: missing parameter for " + family);
    const Rational& q = params[idx];
    if (denominator_of(q) != 1)
      throw std::invalid_argument("make_operator: parameter must be an integer");
    return static_cast<int>(numerator_of(q).convert_to<long>());
  };
  if (family == "G") {
    if (!params.empty()) throw std::invalid_argument("make_operator: G takes no parameters");
    return stein_g();
  }
  if (family == "S") return family_s(want_int(0));
  if (family == "L") return family_l(want_int(0));
  if (family == "skt") return basis_element(want_int(0), want_int(1));
  if (family == "xnd") return family_xnd(want_int(0));
  if (family == "R") return family_r(want_int(0));
  if (family == "firstorder") {
    std::vector<Rational> cs(params.begin(), params.end());
    return first_order_member(Poly<Rational>(Var::x, std::move(cs)));
  }
  if (family == "random") {
    if (params.empty()) throw std::invalid_argument("make_operator: random needs a seed");
    auto seed = static_cast<std::uint64_t>(want_int(0));
    if (params.size() >= 4) return random_member(seed, want_int(1), want_int(2), want_int(3));
    return random_member(seed);
  }
  throw std::invalid_argument("make_operator: unknown family \"" + family + "\"");
}

}  // namespace pso
