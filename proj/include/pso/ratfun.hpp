#pragma once

#include <string>
#include <utility>

#include "pso/poly.hpp"

namespace pso {

// Reduced fraction of polynomials over a field K: gcd(num, den) = 1 and the
// denominator is monic, so equal values have identical representations.
template <class K>
class RationalFunction {
 public:
  explicit RationalFunction(Var v = Var::t)
      : num_(Poly<K>::zero(v)), den_(Poly<K>::constant(v, K(1))) {}

  RationalFunction(Poly<K> num, Poly<K> den) : num_(std::move(num)), den_(std::move(den)) {
    check_same_var(num_.var(), den_.var(), "ratfun");
    if (den_.is_zero()) throw std::domain_error("ratfun: zero denominator");
    reduce();
  }

  static RationalFunction from_poly(Poly<K> p) {
    Var v = p.var();
    return RationalFunction(std::move(p), Poly<K>::constant(v, K(1)));
  }

  static RationalFunction constant(Var v, K value) {
    return from_poly(Poly<K>::constant(v, std::move(value)));
  }

  Var var() const { return num_.var(); }
  const Poly<K>& num() const { return num_; }
  const Poly<K>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_poly() const { return den_.is_one(); }

  RationalFunction operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
  }

  // a/b + c/d with g = gcd(b, d): t = a(d/g) + c(b/g) over b(d/g); only t vs g
  // can still share a factor. Keeps every gcd small instead of reducing b*d.
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_.is_one() && b.den_.is_one())
      return RationalFunction(a.num_ + b.num_, a.den_, Canonical{});
    Poly<K> g = cofactor_gcd(a.den_, b.den_);
    Poly<K> dg = divmod(b.den_, g).first;
    Poly<K> t = a.num_ * dg + b.num_ * divmod(a.den_, g).first;
    if (t.is_zero()) return RationalFunction(a.var());
    Poly<K> h = cofactor_gcd(t, g);
    return RationalFunction(divmod(t, h).first, divmod(a.den_, h).first * dg, Canonical{});
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return a + (-b);
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return RationalFunction(a.var());
    Poly<K> g1 = cofactor_gcd(a.num_, b.den_);
    Poly<K> g2 = cofactor_gcd(b.num_, a.den_);
    return RationalFunction(divmod(a.num_, g1).first * divmod(b.num_, g2).first,
                            divmod(a.den_, g2).first * divmod(b.den_, g1).first, Canonical{});
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw std::domain_error("ratfun: division by zero");
    RationalFunction binv(b.var());
    binv.num_ = b.den_;
    binv.den_ = b.num_;
    return a * binv;
  }

  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) {
    return !(a == b);
  }

  // (n/d)' = (n'd - nd')/d^2, with the common factor g = gcd(d, d') stripped
  // up front so the reducing constructor sees small operands.
  RationalFunction derivative() const {
    if (den_.is_one()) return RationalFunction(num_.derivative(), den_, Canonical{});
    Poly<K> g = cofactor_gcd(den_, den_.derivative());
    Poly<K> dh = divmod(den_, g).first;
    return RationalFunction(num_.derivative() * dh - num_ * divmod(den_.derivative(), g).first,
                            den_ * dh);
  }

 private:
  struct Canonical {};

  // Construction from parts already known to be coprime; only renormalizes.
  RationalFunction(Poly<K> num, Poly<K> den, Canonical)
      : num_(std::move(num)), den_(std::move(den)) {
    if (num_.is_zero()) {
      den_ = Poly<K>::constant(num_.var(), K(1));
      return;
    }
    K lead = den_.leading();
    if (!(lead == K(1))) {
      num_ /= lead;
      den_ /= lead;
    }
  }

  static Poly<K> cofactor_gcd(const Poly<K>& p, const Poly<K>& q) {
    if (p.degree() < 1 || q.degree() < 1) return Poly<K>::constant(p.var(), K(1));
    return poly_gcd(p, q);
  }

  void reduce() {
    if (num_.is_zero()) {
      den_ = Poly<K>::constant(num_.var(), K(1));
      return;
    }
    if (num_.degree() > 0 && den_.degree() > 0) {
      Poly<K> g = poly_gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = divmod(num_, g).first;
        den_ = divmod(den_, g).first;
      }
    }
    K lead = den_.leading();
    num_ /= lead;
    den_ /= lead;
  }

  Poly<K> num_;
  Poly<K> den_;
};

template <class K>
std::string to_string(const RationalFunction<K>& f) {
  if (f.is_poly()) return to_string(f.num());
  return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

}  // namespace pso
