#pragma once

#include "pso/hermite.hpp"
#include "pso/weyl.hpp"

namespace pso {

// Gaussian-type characteristic function phi(t) = exp(-sigma2*t^2/2 + i*mu*t).
struct CFFamily {
  Rational sigma2;
  Rational mu;

  CFFamily(Rational s2, Rational m) : sigma2(std::move(s2)), mu(std::move(m)) {
    if (sigma2 < 0) throw std::invalid_argument("CFFamily: sigma2 must be >= 0");
  }

  static CFFamily standard() { return CFFamily(Rational(1), Rational(0)); }
};

// The transform x^n D^k -> i^{k-n} t^k D^n, extended linearly. It reverses
// products: psi(a b) = psi(b) psi(a).
inline WeylElement<GaussianRational> psi(const WeylElement<GaussianRational>& S) {
  check_same_var(S.var(), Var::x, "psi");
  WeylElement<GaussianRational> out(Var::t);
  for (const auto& [key, c] : S.terms()) {
    const int n = key.first, k = key.second;
    out.add_term(k, n, c * GaussianRational::i_power(k - n));
  }
  return out;
}

inline WeylElement<GaussianRational> psi(const WeylElement<Rational>& S) {
  return psi(to_gaussian(S));
}

// Inverse transform t^a D^b -> i^{b-a} x^b D^a.
inline WeylElement<GaussianRational> psi_inverse(const WeylElement<GaussianRational>& A) {
  check_same_var(A.var(), Var::t, "psi_inverse");
  WeylElement<GaussianRational> out(Var::x);
  for (const auto& [key, c] : A.terms()) {
    const int a = key.first, b = key.second;
    out.add_term(b, a, c * GaussianRational::i_power(b - a));
  }
  return out;
}

inline WeylElement<GaussianRational> psi_inverse(const WeylElement<Rational>& A) {
  return psi_inverse(to_gaussian(A));
}

// Divides out the unit part of the leading coefficient (largest derivative
// power, then largest variable power) so printed images read cleanly; the
// value changes only by a scalar unit, which no annihilation or membership
// question can see.
template <class K>
WeylElement<GaussianRational> display_normalized(const WeylElement<K>& A) {
  auto G = to_gaussian(A);
  if (G.is_zero()) return G;
  std::pair<int, int> best{-1, -1};
  GaussianRational lead(0);
  for (const auto& [key, c] : G.terms()) {
    std::pair<int, int> dk{key.second, key.first};
    if (dk > best) {
      best = dk;
      lead = c;
    }
  }
  // some rotation by i^k always makes Re(lead) positive
  for (int k = 0; k < 4; ++k) {
    GaussianRational u = GaussianRational::i_power(k);
    if ((lead * u).re > 0) return u * G;
  }
  return G;
}

namespace detail {

inline Poly<GaussianRational> lift_to_t(const Poly<Rational>& p) {
  std::vector<GaussianRational> cs;
  cs.reserve(static_cast<size_t>(p.degree() + 1));
  for (int n = 0; n <= p.degree(); ++n) cs.emplace_back(p.coeff(n));
  return Poly<GaussianRational>(Var::t, std::move(cs));
}

}  // namespace detail

// Applies A to phi symbolically. The function class q(t)*phi(t) is closed
// under both generators: t scales by t, and D sends q to q' + (i*mu -
// sigma2*t) q. The return value is the unique q with A(phi) = q*phi, so
// annihilation is exactly q = 0.
inline Poly<GaussianRational> act_on_cf(const WeylElement<GaussianRational>& A,
                                        const CFFamily& cf) {
  check_same_var(A.var(), Var::t, "act_on_cf");
  const Poly<GaussianRational> logderiv(
      Var::t, {GaussianRational(Rational(0), cf.mu), GaussianRational(-cf.sigma2)});
  Poly<GaussianRational> out = Poly<GaussianRational>::zero(Var::t);
  for (const auto& [key, c] : A.terms()) {
    Poly<GaussianRational> q = Poly<GaussianRational>::constant(Var::t, GaussianRational(1));
    for (int j = 0; j < key.second; ++j) q = q.derivative() + logderiv * q;
    out += Poly<GaussianRational>::monomial(Var::t, key.first, c) * q;
  }
  return out;
}

inline Poly<GaussianRational> act_on_cf(const WeylElement<Rational>& A, const CFFamily& cf) {
  return act_on_cf(to_gaussian(A), cf);
}

template <class K>
bool annihilates_gaussian(const WeylElement<K>& A) {
  return act_on_cf(to_gaussian(A), CFFamily::standard()).is_zero();
}

// D^m - (-1)^m H_m(t) applied to the standard CF must vanish: derivatives of
// the Gaussian CF are Hermite multiples of it.
inline bool rodriguez_check(int m) {
  if (m < 1) throw std::invalid_argument("rodriguez_check: need m >= 1");
  WeylElement<GaussianRational> A(Var::t);
  A.add_term(0, m, GaussianRational(1));
  auto hm = hermite(m);
  const Rational sign = (m % 2 == 0) ? Rational(-1) : Rational(1);
  for (int j = 0; j <= hm.degree(); ++j) {
    if (hm.coeff(j) == 0) continue;
    A.add_term(j, 0, GaussianRational(sign * hm.coeff(j)));
  }
  return annihilates_gaussian(A);
}

}  // namespace pso
