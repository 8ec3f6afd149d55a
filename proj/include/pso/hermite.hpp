#pragma once

#include <map>

#include "pso/poly.hpp"
#include "pso/rational.hpp"

namespace pso {

// x*f - f', the raising operator generating the Hermite family.
inline Poly<Rational> delta(const Poly<Rational>& f) {
  check_same_var(f.var(), Var::x, "delta");
  return Poly<Rational>::variable(Var::x) * f - f.derivative();
}

inline Poly<Rational> delta_iterated(Poly<Rational> f, int times) {
  for (int j = 0; j < times; ++j) f = delta(f);
  return f;
}

// Probabilist's Hermite polynomial H_n: monic, H_0 = 1, H_{n+1} = x*H_n - n*H_{n-1}.
inline Poly<Rational> hermite(int n) {
  if (n < 0) throw std::invalid_argument("hermite: negative index");
  Poly<Rational> prev = Poly<Rational>::constant(Var::x, Rational(1));
  if (n == 0) return prev;
  Poly<Rational> cur = Poly<Rational>::variable(Var::x);
  const Poly<Rational> x = cur;
  for (int k = 1; k < n; ++k) {
    Poly<Rational> next = x * cur - Rational(k) * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

// Coefficients in the Hermite basis: f = sum_k c_k H_k, zero entries absent.
using HermiteCoefficients = std::map<int, Rational>;

// Triangular elimination against the monic family, highest degree first.
inline HermiteCoefficients to_hermite(const Poly<Rational>& f) {
  check_same_var(f.var(), Var::x, "to_hermite");
  HermiteCoefficients out;
  Poly<Rational> rest = f;
  while (!rest.is_zero()) {
    int n = rest.degree();
    Rational c = rest.leading();
    out.emplace(n, c);
    rest -= c * hermite(n);
  }
  return out;
}

inline Poly<Rational> from_hermite(const HermiteCoefficients& cs) {
  Poly<Rational> out = Poly<Rational>::zero(Var::x);
  for (const auto& [k, c] : cs) out += c * hermite(k);
  return out;
}

// E[N^n] for N standard Gaussian: 0 for odd n, (n-1)!! for even n.
inline Rational gaussian_moment(unsigned n) {
  if (n % 2 == 1) return 0;
  return Rational(double_factorial(static_cast<long>(n) - 1));
}

inline Rational gaussian_expectation(const Poly<Rational>& f) {
  check_same_var(f.var(), Var::x, "gaussian_expectation");
  Rational acc = 0;
  for (int n = 0; n <= f.degree(); ++n)
    acc += f.coeff(n) * gaussian_moment(static_cast<unsigned>(n));
  return acc;
}

}  // namespace pso
