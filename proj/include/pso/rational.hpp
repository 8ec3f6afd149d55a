#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace pso {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational scalar. cpp_rational keeps the canonical form we rely on
// everywhere: always reduced, denominator > 0, zero stored as 0/1.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("rational: zero denominator");
  // the backend insists on a positive denominator
  if (den < 0) return Rational(-num, -den);
  return Rational(num, den);
}

inline BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned k = 2; k <= n; ++k) r *= k;
  return r;
}

inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (unsigned j = 0; j < k; ++j) {
    r *= (n - j);
    r /= (j + 1);
  }
  return r;
}

// n(n-1)...(n-r+1)
inline BigInt falling_factorial(unsigned n, unsigned r) {
  BigInt v = 1;
  for (unsigned j = 0; j < r; ++j) v *= (n - j);
  return v;
}

// (n-1)!! for even n >= 0 is handled by the caller; this is the plain m!! walk.
inline BigInt double_factorial(long m) {
  BigInt r = 1;
  for (long k = m; k >= 2; k -= 2) r *= k;
  return r;
}

inline Rational rational_pow(const Rational& q, unsigned e) {
  Rational r = 1;
  Rational base = q;
  unsigned n = e;
  while (n > 0) {
    if (n & 1u) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

// "a" for integers, "a/b" otherwise; sign on the numerator.
inline std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

// Always "a/b", the wire form used in JSON output.
inline std::string to_fraction_string(const Rational& q) {
  std::ostringstream os;
  os << numerator_of(q) << "/" << denominator_of(q);
  return os.str();
}

inline double to_double(const Rational& q) { return static_cast<double>(q); }

// Element of Q(i): re + im*i with exact rational parts.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() : re(0), im(0) {}
  GaussianRational(long v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational r) : re(std::move(r)), im(0) {}  // NOLINT
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussianRational i() { return GaussianRational(Rational(0), Rational(1)); }

  // i^k for any integer k (negative allowed).
  static GaussianRational i_power(long k) {
    long m = ((k % 4) + 4) % 4;
    switch (m) {
      case 0: return GaussianRational(1);
      case 1: return i();
      case 2: return GaussianRational(-1);
      default: return GaussianRational(Rational(0), Rational(-1));
    }
  }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  GaussianRational conj() const { return {re, -im}; }
  Rational norm() const { return re * re + im * im; }

  GaussianRational operator-() const { return {-re, -im}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    Rational n = o.norm();
    if (n == 0) throw std::domain_error("gaussian rational: division by zero");
    GaussianRational c = o.conj();
    *this *= c;
    re /= n;
    im /= n;
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

inline GaussianRational pow(const GaussianRational& z, unsigned e) {
  GaussianRational r(1);
  GaussianRational base = z;
  unsigned n = e;
  while (n > 0) {
    if (n & 1u) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

// "3", "-1/2", "i", "-i", "3/2*i", "(1 + 1/2*i)"
inline std::string to_string(const GaussianRational& z) {
  if (z.im == 0) return to_string(z.re);
  std::string imag;
  if (z.im == 1)
    imag = "i";
  else if (z.im == -1)
    imag = "-i";
  else
    imag = to_string(z.im) + "*i";
  if (z.re == 0) return imag;
  std::ostringstream os;
  os << "(" << to_string(z.re) << (z.im > 0 ? " + " : " - ");
  Rational a = z.im > 0 ? z.im : Rational(-z.im);
  if (a == 1)
    os << "i";
  else
    os << to_string(a) << "*i";
  os << ")";
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
  return os << to_string(z);
}

// Scalar kind helpers used by the templated layers.
template <class K>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static bool is_zero(const Rational& v) { return v == 0; }
  static Rational from_rational(const Rational& v) { return v; }
  static constexpr bool is_complex = false;
};

template <>
struct scalar_traits<GaussianRational> {
  static bool is_zero(const GaussianRational& v) { return v.is_zero(); }
  static GaussianRational from_rational(const Rational& v) { return GaussianRational(v); }
  static constexpr bool is_complex = true;
};

}  // namespace pso
