#pragma once

#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pso/poly.hpp"
#include "pso/rational.hpp"

namespace pso {

// Element of the first Weyl algebra in normal form: a finite sum of terms
// c * var^n * D^k with all variable powers written left of all derivative
// powers. The term map holds nonzero coefficients only, so equality of
// elements is equality of maps.
template <class K>
class WeylElement {
 public:
  // (varpow n, dpow k) -> coefficient
  using Key = std::pair<int, int>;
  using TermMap = std::map<Key, K>;

  explicit WeylElement(Var v = Var::x) : var_(v) {}

  static WeylElement zero(Var v) { return WeylElement(v); }

  static WeylElement term(Var v, int varpow, int dpow, K coeff) {
    WeylElement e(v);
    e.add_term(varpow, dpow, std::move(coeff));
    return e;
  }

  static WeylElement constant(Var v, K value) { return term(v, 0, 0, std::move(value)); }
  static WeylElement variable(Var v) { return term(v, 1, 0, K(1)); }
  static WeylElement derivative_gen(Var v) { return term(v, 0, 1, K(1)); }

  static WeylElement from_poly(const Poly<K>& p) {
    WeylElement e(p.var());
    for (int n = 0; n <= p.degree(); ++n) {
      if (!scalar_traits<K>::is_zero(p.coeff(n))) e.add_term(n, 0, p.coeff(n));
    }
    return e;
  }

  // Build sum p_t * D^t from coefficient polynomials indexed by t.
  static WeylElement from_coefficient_form(Var v, const std::vector<Poly<K>>& ps) {
    WeylElement e(v);
    for (size_t t = 0; t < ps.size(); ++t) {
      check_same_var(v, ps[t].var(), "weyl from coefficients");
      for (int n = 0; n <= ps[t].degree(); ++n) {
        if (!scalar_traits<K>::is_zero(ps[t].coeff(n)))
          e.add_term(n, static_cast<int>(t), ps[t].coeff(n));
      }
    }
    return e;
  }

  Var var() const { return var_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Order in D; -1 for the zero element.
  int d_order() const {
    int k = -1;
    for (const auto& [key, c] : terms_) k = std::max(k, key.second);
    return k;
  }

  int var_degree() const {
    int n = -1;
    for (const auto& [key, c] : terms_) n = std::max(n, key.first);
    return n;
  }

  K coeff(int varpow, int dpow) const {
    auto it = terms_.find({varpow, dpow});
    return it == terms_.end() ? K(0) : it->second;
  }

  void add_term(int varpow, int dpow, K coeff) {
    if (scalar_traits<K>::is_zero(coeff)) return;
    auto [it, inserted] = terms_.try_emplace(Key{varpow, dpow}, std::move(coeff));
    if (!inserted) {
      it->second += coeff;
      if (scalar_traits<K>::is_zero(it->second)) terms_.erase(it);
    }
  }

  WeylElement operator-() const {
    WeylElement r(var_);
    for (const auto& [key, c] : terms_) r.terms_.emplace(key, -c);
    return r;
  }

  WeylElement& operator+=(const WeylElement& o) {
    check_same_var(var_, o.var_, "weyl add");
    for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, c);
    return *this;
  }
  WeylElement& operator-=(const WeylElement& o) {
    check_same_var(var_, o.var_, "weyl sub");
    for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, -c);
    return *this;
  }

  friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
  friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }

  WeylElement& operator*=(const K& s) {
    if (scalar_traits<K>::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [key, c] : terms_) c *= s;
    return *this;
  }
  friend WeylElement operator*(WeylElement a, const K& s) { return a *= s; }
  friend WeylElement operator*(const K& s, WeylElement a) { return a *= s; }

  friend bool operator==(const WeylElement& a, const WeylElement& b) {
    return a.var_ == b.var_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const WeylElement& a, const WeylElement& b) { return !(a == b); }

 private:
  Var var_;
  TermMap terms_;
};

// Normally ordered product. The reordering rule is
//   D^k x^m = sum_{r=0}^{min(k,m)} C(k,r) * m!/(m-r)! * x^{m-r} D^{k-r},
// applied termwise to (x^a D^b)(x^c D^d).
template <class K>
WeylElement<K> weyl_mul(const WeylElement<K>& a, const WeylElement<K>& b) {
  check_same_var(a.var(), b.var(), "weyl mul");
  WeylElement<K> out(a.var());
  for (const auto& [ka, ca] : a.terms()) {
    const int n1 = ka.first, k1 = ka.second;
    for (const auto& [kb, cb] : b.terms()) {
      const int n2 = kb.first, k2 = kb.second;
      const K prod = ca * cb;
      const int rmax = std::min(k1, n2);
      for (int r = 0; r <= rmax; ++r) {
        BigInt w = binomial(static_cast<unsigned>(k1), static_cast<unsigned>(r)) *
                   falling_factorial(static_cast<unsigned>(n2), static_cast<unsigned>(r));
        K c = prod * scalar_traits<K>::from_rational(Rational(w));
        out.add_term(n1 + n2 - r, k1 + k2 - r, std::move(c));
      }
    }
  }
  return out;
}

template <class K>
WeylElement<K> operator*(const WeylElement<K>& a, const WeylElement<K>& b) {
  return weyl_mul(a, b);
}

template <class K>
WeylElement<K> commutator(const WeylElement<K>& a, const WeylElement<K>& b) {
  return weyl_mul(a, b) - weyl_mul(b, a);
}

// Module action sum c * var^n * f^(k).
template <class K>
Poly<K> apply(const WeylElement<K>& L, const Poly<K>& f) {
  check_same_var(L.var(), f.var(), "weyl apply");
  Poly<K> out = Poly<K>::zero(f.var());
  for (const auto& [key, c] : L.terms()) {
    Poly<K> d = f;
    for (int k = 0; k < key.second && !d.is_zero(); ++k) d = d.derivative();
    if (d.is_zero()) continue;
    out += Poly<K>::monomial(f.var(), key.first, c) * d;
  }
  return out;
}

// Integration-by-parts dual: c x^n D^k -> c (-1)^k D^k (x^n .), normally
// ordered. Involutive and product-reversing.
template <class K>
WeylElement<K> formal_adjoint(const WeylElement<K>& L) {
  WeylElement<K> out(L.var());
  for (const auto& [key, c] : L.terms()) {
    WeylElement<K> dk = WeylElement<K>::term(L.var(), 0, key.second, K(1));
    WeylElement<K> xn = WeylElement<K>::term(L.var(), key.first, 0, K(1));
    K sign = (key.second % 2 == 0) ? K(1) : K(-1);
    out += (c * sign) * weyl_mul(dk, xn);
  }
  return out;
}

// Coefficient polynomials p_0..p_T with L = sum p_t D^t; empty for zero.
template <class K>
std::vector<Poly<K>> as_coefficient_form(const WeylElement<K>& L) {
  std::vector<Poly<K>> out;
  int T = L.d_order();
  if (T < 0) return out;
  std::vector<std::vector<K>> cs(static_cast<size_t>(T) + 1);
  for (const auto& [key, c] : L.terms()) {
    auto& v = cs[static_cast<size_t>(key.second)];
    if (static_cast<int>(v.size()) <= key.first) v.resize(static_cast<size_t>(key.first) + 1, K(0));
    v[static_cast<size_t>(key.first)] = c;
  }
  out.reserve(cs.size());
  for (auto& v : cs) out.emplace_back(L.var(), std::move(v));
  return out;
}

template <class K>
WeylElement<GaussianRational> to_gaussian(const WeylElement<K>& L) {
  WeylElement<GaussianRational> out(L.var());
  for (const auto& [key, c] : L.terms()) out.add_term(key.first, key.second, GaussianRational(c));
  return out;
}

inline WeylElement<GaussianRational> to_gaussian(const WeylElement<GaussianRational>& L) {
  return L;
}

// Checked narrowing to rational coefficients.
inline WeylElement<Rational> to_rational(const WeylElement<GaussianRational>& L) {
  WeylElement<Rational> out(L.var());
  for (const auto& [key, c] : L.terms()) {
    if (!c.is_real())
      throw std::domain_error("weyl: element has non-real coefficients");
    out.add_term(key.first, key.second, c.re);
  }
  return out;
}

// Multiplies by the unique unit in {1, i, -1, -i} that makes every
// coefficient real, preferring the one whose leading term (max dpow, then
// max varpow) ends up with positive real part. Throws if no unit works.
inline WeylElement<Rational> to_real_by_unit(const WeylElement<GaussianRational>& L) {
  if (L.is_zero()) return WeylElement<Rational>(L.var());
  for (int u = 0; u < 4; ++u) {
    GaussianRational unit = GaussianRational::i_power(u);
    bool all_real = true;
    for (const auto& [key, c] : L.terms()) {
      if (!(c * unit).is_real()) {
        all_real = false;
        break;
      }
    }
    if (!all_real) continue;
    WeylElement<Rational> out = to_rational(unit * L);
    // leading term by (dpow, varpow)
    std::pair<int, int> best{-1, -1};
    Rational lead = 0;
    for (const auto& [key, c] : out.terms()) {
      std::pair<int, int> dk{key.second, key.first};
      if (dk > best) {
        best = dk;
        lead = c;
      }
    }
    if (lead < 0) out = out * Rational(-1);
    return out;
  }
  throw std::domain_error("weyl: no single unit makes all coefficients real");
}

namespace detail {

template <class K>
std::string group_string(const Poly<K>& p, int t, bool& negated) {
  // Renders p * D^t for t >= 1; for single-monomial p the sign is pulled
  // out via `negated` so the joiner can emit " - ".
  negated = false;
  std::ostringstream os;
  int nterms = 0;
  for (int n = 0; n <= p.degree(); ++n)
    if (!scalar_traits<K>::is_zero(p.coeff(n))) ++nterms;
  std::string d = (t == 1) ? "D" : ("D^" + std::to_string(t));
  if (nterms == 1) {
    int n = p.degree();
    K c = p.coeff(n);
    if (is_negative_for_print(c)) {
      negated = true;
      c = abs_for_print(c);
    }
    if (c == K(1) && n == 0) return d;
    if (n == 0) return to_string(c) + "*" + d;
    return monomial_string(c, p.var(), n) + "*" + d;
  }
  os << "(" << to_string(p) << ")*" << d;
  return os.str();
}

}  // namespace detail

// Pretty form grouped by derivative power, highest first, e.g.
// "t*D^2 + (3*t^2 - 1)*D + 2*t^3". Parses back to the same element.
template <class K>
std::string to_string(const WeylElement<K>& L) {
  if (L.is_zero()) return "0";
  auto ps = as_coefficient_form(L);
  std::ostringstream os;
  bool first = true;
  auto emit = [&](bool negated, const std::string& body) {
    if (first) {
      if (negated) os << "-";
      first = false;
    } else {
      os << (negated ? " - " : " + ");
    }
    os << body;
  };
  for (int t = static_cast<int>(ps.size()) - 1; t >= 1; --t) {
    if (ps[static_cast<size_t>(t)].is_zero()) continue;
    bool negated = false;
    std::string g = detail::group_string(ps[static_cast<size_t>(t)], t, negated);
    emit(negated, g);
  }
  // The derivative-free part joins the sum term by term.
  const Poly<K>& p0 = ps.front();
  for (int n = p0.degree(); n >= 0; --n) {
    const K& c = p0.coeff(n);
    if (scalar_traits<K>::is_zero(c)) continue;
    emit(detail::is_negative_for_print(c),
         detail::monomial_string(detail::abs_for_print(c), p0.var(), n));
  }
  return os.str();
}

template <class K>
std::ostream& operator<<(std::ostream& os, const WeylElement<K>& L) {
  return os << to_string(L);
}

}  // namespace pso
