#pragma once

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pso/rational.hpp"

namespace pso {

enum class Var : unsigned char { x, t };

inline const char* var_name(Var v) { return v == Var::x ? "x" : "t"; }

inline void check_same_var(Var a, Var b, const char* where) {
  if (a != b) {
    throw std::invalid_argument(std::string(where) + ": variable tag mismatch (" + var_name(a) +
                                " vs " + var_name(b) + ")");
  }
}

// Dense univariate polynomial over an exact scalar field K.
// Coefficients are stored by ascending degree with no trailing zeros; the
// zero polynomial has an empty coefficient vector and degree() == -1.
template <class K>
class Poly {
 public:
  explicit Poly(Var v = Var::x) : var_(v) {}

  Poly(Var v, std::vector<K> coeffs) : var_(v), c_(std::move(coeffs)) { trim(); }

  static Poly zero(Var v) { return Poly(v); }

  static Poly constant(Var v, K value) {
    Poly p(v);
    if (!scalar_traits<K>::is_zero(value)) p.c_.push_back(std::move(value));
    return p;
  }

  // c * var^n
  static Poly monomial(Var v, int n, K coeff = K(1)) {
    Poly p(v);
    if (scalar_traits<K>::is_zero(coeff)) return p;
    p.c_.assign(static_cast<size_t>(n) + 1, K(0));
    p.c_.back() = std::move(coeff);
    return p;
  }

  static Poly variable(Var v) { return monomial(v, 1); }

  Var var() const { return var_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  const K& coeff(int n) const {
    static const K kZero(0);
    if (n < 0 || n >= static_cast<int>(c_.size())) return kZero;
    return c_[static_cast<size_t>(n)];
  }

  const std::vector<K>& coeffs() const { return c_; }

  const K& leading() const {
    if (c_.empty()) throw std::domain_error("poly: leading coefficient of zero");
    return c_.back();
  }

  bool is_constant() const { return c_.size() <= 1; }

  bool is_one() const { return c_.size() == 1 && c_[0] == K(1); }

  Poly operator-() const {
    Poly r(var_);
    r.c_.reserve(c_.size());
    for (const K& v : c_) r.c_.push_back(-v);
    return r;
  }

  Poly& operator+=(const Poly& o) {
    check_same_var(var_, o.var_, "poly add");
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), K(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }

  Poly& operator-=(const Poly& o) {
    check_same_var(var_, o.var_, "poly sub");
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), K(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    check_same_var(a.var_, b.var_, "poly mul");
    Poly r(a.var_);
    if (a.is_zero() || b.is_zero()) return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, K(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (scalar_traits<K>::is_zero(a.c_[i])) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
  }

  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly& operator*=(const K& s) {
    if (scalar_traits<K>::is_zero(s)) {
      c_.clear();
      return *this;
    }
    for (K& v : c_) v *= s;
    return *this;
  }

  friend Poly operator*(Poly a, const K& s) { return a *= s; }
  friend Poly operator*(const K& s, Poly a) { return a *= s; }

  Poly& operator/=(const K& s) {
    if (scalar_traits<K>::is_zero(s)) throw std::domain_error("poly: division by zero scalar");
    for (K& v : c_) v /= s;
    return *this;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.var_ == b.var_ && a.c_ == b.c_;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly derivative() const {
    Poly r(var_);
    if (c_.size() <= 1) return r;
    r.c_.resize(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i] * K(static_cast<long>(i));
    r.trim();
    return r;
  }

  K evaluate(const K& x) const {
    K acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  double evaluate(double x) const {
    double acc = 0.0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + coeff_to_double(c_[i]);
    return acc;
  }

  Poly monic() const {
    if (is_zero()) throw std::domain_error("poly: monic of zero");
    Poly r = *this;
    K lead = c_.back();
    r /= lead;
    return r;
  }

  // Substitute var^1 -> q, i.e. composition p(q).
  Poly compose(const Poly& q) const {
    Poly acc(q.var());
    for (size_t i = c_.size(); i-- > 0;) {
      acc = acc * q + Poly::constant(q.var(), c_[i]);
    }
    return acc;
  }

  // Quotient and remainder over the field K.
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    check_same_var(a.var_, b.var_, "poly divmod");
    if (b.is_zero()) throw std::domain_error("poly: division by zero polynomial");
    Poly q(a.var_);
    Poly r = a;
    int db = b.degree();
    if (r.degree() >= db) q.c_.assign(static_cast<size_t>(r.degree() - db) + 1, K(0));
    while (!r.is_zero() && r.degree() >= db) {
      int shift = r.degree() - db;
      K factor = r.leading() / b.leading();
      q.c_[static_cast<size_t>(shift)] += factor;
      for (size_t i = 0; i < b.c_.size(); ++i) {
        r.c_[static_cast<size_t>(shift) + i] -= factor * b.c_[i];
      }
      r.trim();
    }
    q.trim();
    return {q, r};
  }

 private:
  static double coeff_to_double(const Rational& v) { return to_double(v); }
  static double coeff_to_double(const GaussianRational& v) {
    if (v.im != 0) throw std::domain_error("poly: double evaluation of complex coefficient");
    return to_double(v.re);
  }

  void trim() {
    while (!c_.empty() && scalar_traits<K>::is_zero(c_.back())) c_.pop_back();
  }

  Var var_;
  std::vector<K> c_;
};

// Monic gcd by the classical Euclidean algorithm over the field K.
// gcd(p, 0) = monic(p); both zero is an error.
template <class K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b) {
  check_same_var(a.var(), b.var(), "poly gcd");
  if (a.is_zero() && b.is_zero()) throw std::domain_error("poly gcd: both inputs zero");
  while (!b.is_zero()) {
    auto [q, r] = divmod(a, b);
    (void)q;
    a = std::move(b);
    // renormalizing each remainder keeps coefficient growth linear instead
    // of compounding through the remainder sequence
    b = r.is_zero() ? std::move(r) : r.monic();
  }
  return a.monic();
}

template <class K>
Poly<K> poly_pow(const Poly<K>& p, unsigned e) {
  Poly<K> r = Poly<K>::constant(p.var(), K(1));
  Poly<K> base = p;
  unsigned n = e;
  while (n > 0) {
    if (n & 1u) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

namespace detail {

template <class K>
bool coeff_needs_parens(const K& v);

inline bool coeff_needs_parens(const Rational& v) {
  (void)v;
  return false;
}
inline bool coeff_needs_parens(const GaussianRational& v) { return v.re != 0 && v.im != 0; }

// Sign splitting used by the printers: only pure real/imaginary scalars are
// given an external sign; mixed complex values print in parentheses as-is.
inline bool is_negative_for_print(const Rational& v) { return v < 0; }
inline bool is_negative_for_print(const GaussianRational& v) {
  if (v.re != 0 && v.im != 0) return false;
  if (v.im == 0) return v.re < 0;
  return v.im < 0;
}

inline Rational abs_for_print(const Rational& v) { return v < 0 ? Rational(-v) : v; }
inline GaussianRational abs_for_print(const GaussianRational& v) {
  return is_negative_for_print(v) ? -v : v;
}

template <class K>
std::string coeff_factor_string(const K& v) {
  return to_string(v);
}

// One printed product "c*var^n" (with 1-elision), no leading sign.
template <class K>
std::string monomial_string(const K& coeff, Var var, int n) {
  std::string cs = coeff_factor_string(coeff);
  if (n == 0) return cs;
  std::string vs = var_name(var);
  if (n > 1) vs += "^" + std::to_string(n);
  if (coeff == K(1)) return vs;
  return cs + "*" + vs;
}

}  // namespace detail

// Grammar-compatible rendering, descending powers: "3*x^2 - x + 1/2".
template <class K>
std::string to_string(const Poly<K>& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int n = p.degree(); n >= 0; --n) {
    const K& c = p.coeff(n);
    if (scalar_traits<K>::is_zero(c)) continue;
    bool neg = detail::is_negative_for_print(c);
    K mag = detail::abs_for_print(c);
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    os << detail::monomial_string(mag, p.var(), n);
  }
  return os.str();
}

template <class K>
std::ostream& operator<<(std::ostream& os, const Poly<K>& p) {
  return os << to_string(p);
}

}  // namespace pso
