#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "pso/fourier.hpp"
#include "pso/ratfun.hpp"
#include "pso/weyl.hpp"

namespace pso {

// Skew polynomial in D over the field of rational functions of t, with the
// commutation rule D f = f D + f'. Coefficients ascend by D power with no
// trailing zeros, so order() is -1 exactly for the zero operator.
class OrePoly {
 public:
  using RF = RationalFunction<GaussianRational>;

  OrePoly() = default;

  explicit OrePoly(std::vector<RF> coeffs) : c_(std::move(coeffs)) { trim(); }

  static OrePoly zero() { return OrePoly(); }

  static OrePoly from_rf(RF f) {
    OrePoly p;
    if (!f.is_zero()) c_push(p, std::move(f));
    return p;
  }

  static OrePoly d_power(int k, RF coeff = one_rf()) {
    OrePoly p;
    if (coeff.is_zero()) return p;
    p.c_.assign(static_cast<size_t>(k) + 1, RF(Var::t));
    p.c_.back() = std::move(coeff);
    return p;
  }

  static RF one_rf() { return RF::constant(Var::t, GaussianRational(1)); }

  static OrePoly from_weyl(const WeylElement<GaussianRational>& A) {
    check_same_var(A.var(), Var::t, "ore from weyl");
    auto ps = as_coefficient_form(A);
    std::vector<RF> cs;
    cs.reserve(ps.size());
    for (auto& p : ps) cs.push_back(RF::from_poly(std::move(p)));
    return OrePoly(std::move(cs));
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  const RF& coeff(int k) const {
    static const RF kZero(Var::t);
    if (k < 0 || k >= static_cast<int>(c_.size())) return kZero;
    return c_[static_cast<size_t>(k)];
  }

  const RF& leading() const {
    if (c_.empty()) throw std::domain_error("ore: leading coefficient of zero");
    return c_.back();
  }

  // Left-multiplies by 1/leading, making the operator monic.
  OrePoly monic() const {
    if (is_zero()) throw std::domain_error("ore: monic of zero");
    OrePoly r = *this;
    RF lead = r.c_.back();
    for (RF& f : r.c_) f /= lead;
    return r;
  }

  OrePoly operator-() const {
    OrePoly r = *this;
    for (RF& f : r.c_) f = -f;
    return r;
  }

  friend OrePoly operator+(const OrePoly& a, const OrePoly& b) {
    OrePoly r = a;
    if (b.c_.size() > r.c_.size()) r.c_.resize(b.c_.size(), RF(Var::t));
    for (size_t i = 0; i < b.c_.size(); ++i) r.c_[i] += b.c_[i];
    r.trim();
    return r;
  }
  friend OrePoly operator-(const OrePoly& a, const OrePoly& b) { return a + (-b); }

  friend bool operator==(const OrePoly& a, const OrePoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const OrePoly& a, const OrePoly& b) { return !(a == b); }

  friend OrePoly operator*(const RF& s, OrePoly p) {
    if (s.is_zero()) return OrePoly();
    for (RF& f : p.c_) f = s * f;
    return p;
  }

 private:
  static void c_push(OrePoly& p, RF f) { p.c_.push_back(std::move(f)); }

  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<RF> c_;
};

// D^k f = sum_j C(k,j) f^(j) D^(k-j), extended bilinearly.
inline OrePoly ore_mul(const OrePoly& a, const OrePoly& b) {
  using RF = OrePoly::RF;
  if (a.is_zero() || b.is_zero()) return OrePoly();
  std::vector<RF> out(static_cast<size_t>(a.order() + b.order()) + 1, RF(Var::t));
  for (int ka = 0; ka <= a.order(); ++ka) {
    const RF& fa = a.coeff(ka);
    if (fa.is_zero()) continue;
    for (int kb = 0; kb <= b.order(); ++kb) {
      const RF& fb = b.coeff(kb);
      if (fb.is_zero()) continue;
      RF deriv = fb;
      for (int j = 0; j <= ka; ++j) {
        RF weight = RF::constant(
            Var::t, GaussianRational(Rational(binomial(static_cast<unsigned>(ka),
                                                       static_cast<unsigned>(j)))));
        out[static_cast<size_t>(ka - j + kb)] += fa * weight * deriv;
        deriv = deriv.derivative();
      }
    }
  }
  return OrePoly(std::move(out));
}

inline OrePoly operator*(const OrePoly& a, const OrePoly& b) { return ore_mul(a, b); }

inline OrePoly ore_add(const OrePoly& a, const OrePoly& b) { return a + b; }

// a = q*b + r with order(r) < order(b).
inline std::pair<OrePoly, OrePoly> right_divide(const OrePoly& a, const OrePoly& b) {
  if (b.is_zero()) throw std::domain_error("ore: division by zero operator");
  OrePoly q;
  OrePoly r = a;
  while (!r.is_zero() && r.order() >= b.order()) {
    int shift = r.order() - b.order();
    OrePoly term = OrePoly::d_power(shift, r.leading() / b.leading());
    q = q + term;
    r = r - ore_mul(term, b);
  }
  return {q, r};
}

// Euclidean remainder sequence; result is monic, or zero only for two zero
// inputs (rejected).
inline OrePoly gcrd(OrePoly a, OrePoly b) {
  if (a.is_zero() && b.is_zero()) throw std::domain_error("gcrd: both inputs zero");
  while (!b.is_zero()) {
    OrePoly r = right_divide(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

namespace detail {

// Any nonzero kernel vector of the given matrix over the rational-function
// field, or nullopt if the kernel is trivial. Plain Gaussian elimination;
// the free column of largest index is set to one.
inline std::optional<std::vector<OrePoly::RF>> kernel_vector(
    std::vector<std::vector<OrePoly::RF>> m, size_t cols) {
  using RF = OrePoly::RF;
  size_t rows = m.size();
  std::vector<size_t> pivot_of_row;
  size_t row = 0;
  std::vector<bool> is_pivot(cols, false);
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t sel = row;
    while (sel < rows && m[sel][col].is_zero()) ++sel;
    if (sel == rows) continue;
    std::swap(m[row], m[sel]);
    RF inv = OrePoly::one_rf() / m[row][col];
    for (size_t j = col; j < cols; ++j) m[row][j] = inv * m[row][j];
    for (size_t i = 0; i < rows; ++i) {
      if (i == row || m[i][col].is_zero()) continue;
      RF f = m[i][col];
      for (size_t j = col; j < cols; ++j) m[i][j] = m[i][j] - f * m[row][j];
    }
    is_pivot[col] = true;
    pivot_of_row.push_back(col);
    ++row;
  }
  size_t free_col = cols;
  for (size_t col = cols; col-- > 0;) {
    if (!is_pivot[col]) {
      free_col = col;
      break;
    }
  }
  if (free_col == cols) return std::nullopt;
  std::vector<RF> v(cols, RF(Var::t));
  v[free_col] = OrePoly::one_rf();
  for (size_t i = 0; i < pivot_of_row.size(); ++i) v[pivot_of_row[i]] = -m[i][free_col];
  return v;
}

}  // namespace detail

// Minimal-order common left multiple: the smallest L with L = u*a = v*b.
// For each candidate order the conditions "a and b right-divide L" are linear
// in the unknown coefficients of L over the rational-function field; the
// first order with a nontrivial kernel is the answer. Result is monic and
// always re-verified by right division.
inline OrePoly lclm(const OrePoly& a, const OrePoly& b) {
  using RF = OrePoly::RF;
  if (a.is_zero() || b.is_zero()) throw std::domain_error("lclm: zero input");
  const int da = a.order(), db = b.order();
  // remainders of D^k modulo a and b, k = 0 .. da+db
  std::vector<OrePoly> ra, rb;
  OrePoly powk = OrePoly::d_power(0);
  const OrePoly d1 = OrePoly::d_power(1);
  for (int k = 0; k <= da + db; ++k) {
    ra.push_back(right_divide(powk, a).second);
    rb.push_back(right_divide(powk, b).second);
    powk = ore_mul(d1, powk);
  }
  for (int m = std::max(da, db); m <= da + db; ++m) {
    size_t cols = static_cast<size_t>(m) + 1;
    std::vector<std::vector<RF>> mat;
    for (int p = 0; p < da; ++p) {
      std::vector<RF> rowv(cols, RF(Var::t));
      for (int k = 0; k <= m; ++k) rowv[static_cast<size_t>(k)] = ra[static_cast<size_t>(k)].coeff(p);
      mat.push_back(std::move(rowv));
    }
    for (int p = 0; p < db; ++p) {
      std::vector<RF> rowv(cols, RF(Var::t));
      for (int k = 0; k <= m; ++k) rowv[static_cast<size_t>(k)] = rb[static_cast<size_t>(k)].coeff(p);
      mat.push_back(std::move(rowv));
    }
    auto kv = detail::kernel_vector(std::move(mat), cols);
    if (!kv) continue;
    OrePoly L(std::move(*kv));
    if (L.order() != m)
      throw std::logic_error("lclm: kernel vector lost its top coefficient");
    L = L.monic();
    if (!right_divide(L, a).second.is_zero() || !right_divide(L, b).second.is_zero())
      throw std::logic_error("lclm: divisibility check failed");
    return L;
  }
  throw std::logic_error("lclm: no common multiple up to the order bound");
}

// Least common denominator times the operator: lands in polynomial
// coefficients.
inline WeylElement<GaussianRational> clear_denominators(const OrePoly& a) {
  using P = Poly<GaussianRational>;
  P lcd = P::constant(Var::t, GaussianRational(1));
  for (int k = 0; k <= a.order(); ++k) {
    const auto& den = a.coeff(k).den();
    if (den.is_one()) continue;
    // lcd = lcd * den / gcd(lcd, den)
    P g = poly_gcd(lcd, den);
    lcd = lcd * divmod(den, g).first;
  }
  WeylElement<GaussianRational> out(Var::t);
  for (int k = 0; k <= a.order(); ++k) {
    const auto& f = a.coeff(k);
    if (f.is_zero()) continue;
    P scaled = f.num() * divmod(lcd, f.den()).first;
    for (int n = 0; n <= scaled.degree(); ++n) out.add_term(n, k, scaled.coeff(n));
  }
  return out;
}

// Canonical representative of the left K(t)-orbit with polynomial
// coefficients: common polynomial factor removed, coefficients scaled to
// coprime integers, unit chosen so the leading coefficient has positive real
// part (or positive imaginary part when the real part is zero).
inline WeylElement<GaussianRational> content_normalize(const WeylElement<GaussianRational>& A) {
  using P = Poly<GaussianRational>;
  if (A.is_zero()) return A;
  auto ps = as_coefficient_form(A);
  P g = P::zero(Var::t);
  for (const auto& p : ps) {
    if (p.is_zero()) continue;
    g = g.is_zero() ? p : poly_gcd(g, p);
  }
  if (g.degree() > 0)
    for (auto& p : ps) p = divmod(p, g).first;

  BigInt den_lcm = 1, num_gcd = 0;
  auto feed = [&](const Rational& q) {
    if (q == 0) return;
    den_lcm = boost::multiprecision::lcm(den_lcm, denominator_of(q));
  };
  for (const auto& p : ps)
    for (int n = 0; n <= p.degree(); ++n) {
      feed(p.coeff(n).re);
      feed(p.coeff(n).im);
    }
  for (const auto& p : ps)
    for (int n = 0; n <= p.degree(); ++n) {
      for (const Rational& part : {p.coeff(n).re, p.coeff(n).im}) {
        if (part == 0) continue;
        BigInt v = numerator_of(part * Rational(den_lcm));
        num_gcd = boost::multiprecision::gcd(num_gcd, boost::multiprecision::abs(v));
      }
    }
  Rational scale = num_gcd == 0 ? Rational(1) : Rational(den_lcm) / Rational(num_gcd);
  WeylElement<GaussianRational> out(Var::t);
  for (size_t k = 0; k < ps.size(); ++k)
    for (int n = 0; n <= ps[k].degree(); ++n) {
      GaussianRational c = ps[k].coeff(n) * GaussianRational(scale);
      out.add_term(n, static_cast<int>(k), std::move(c));
    }

  std::pair<int, int> best{-1, -1};
  GaussianRational lead(0);
  for (const auto& [key, c] : out.terms()) {
    std::pair<int, int> dk{key.second, key.first};
    if (dk > best) {
      best = dk;
      lead = c;
    }
  }
  for (int k = 0; k < 4; ++k) {
    GaussianRational u = GaussianRational::i_power(k);
    if ((lead * u).re > 0) return u * out;
  }
  return out;
}

// First-order annihilator of the centered Gaussian CF with variance sigma2:
// D + sigma2 * t.
inline WeylElement<GaussianRational> gaussian_cf_annihilator(const Rational& sigma2) {
  if (sigma2 <= 0) throw std::invalid_argument("gaussian_cf_annihilator: sigma2 must be > 0");
  WeylElement<GaussianRational> a(Var::t);
  a.add_term(0, 1, GaussianRational(1));
  a.add_term(1, 0, GaussianRational(sigma2));
  return a;
}

struct MixtureSpec {
  std::vector<Rational> variances;
  std::vector<Rational> weights;  // verification only; the operator ignores them

  MixtureSpec(std::vector<Rational> vars, std::vector<Rational> ws = {})
      : variances(std::move(vars)), weights(std::move(ws)) {
    if (variances.empty()) throw std::invalid_argument("mixture: no variances");
    for (const auto& v : variances)
      if (v <= 0) throw std::invalid_argument("mixture: variances must be > 0");
    for (size_t i = 0; i < variances.size(); ++i)
      for (size_t j = i + 1; j < variances.size(); ++j)
        if (variances[i] == variances[j])
          throw std::invalid_argument("mixture: variances must be distinct");
    if (weights.empty()) {
      weights.assign(variances.size(),
                     Rational(1) / Rational(static_cast<long>(variances.size())));
    }
    if (weights.size() != variances.size())
      throw std::invalid_argument("mixture: weight/variance count mismatch");
    Rational sum = 0;
    for (const auto& w : weights) {
      if (w <= 0) throw std::invalid_argument("mixture: weights must be > 0");
      sum += w;
    }
    if (sum != 1) throw std::invalid_argument("mixture: weights must sum to 1");
  }
};

// Minimal operator annihilating every component CF exp(-sigma_j^2 t^2 / 2):
// the iterated least common left multiple of the first-order annihilators,
// cleared to polynomial coefficients and content-normalized. Weights play no
// role, which is the point: one operator serves every mixture of the same
// components. Each component annihilation is re-checked symbolically.
inline WeylElement<GaussianRational> mixture_annihilator(const MixtureSpec& spec) {
  OrePoly acc = OrePoly::from_weyl(gaussian_cf_annihilator(spec.variances[0]));
  for (size_t j = 1; j < spec.variances.size(); ++j)
    acc = lclm(acc, OrePoly::from_weyl(gaussian_cf_annihilator(spec.variances[j])));
  auto out = content_normalize(clear_denominators(acc));
  for (const auto& v : spec.variances)
    if (!act_on_cf(out, CFFamily(v, Rational(0))).is_zero())
      throw std::logic_error("mixture_annihilator: component annihilation check failed");
  return out;
}

// The x-side Stein operator of the mixture: inverse transform of the
// annihilator, unit-stripped to real coefficients.
inline WeylElement<Rational> mixture_stein_operator(const MixtureSpec& spec) {
  return to_real_by_unit(psi_inverse(mixture_annihilator(spec)));
}

// Annihilator of the radius-1 semicircle CF 2 J_1(t)/t, which satisfies
// t f'' + 3 f' + t f = 0 (Bessel recursion); validated against the moment
// engine rather than assumed.
inline WeylElement<GaussianRational> semicircle_annihilator() {
  WeylElement<GaussianRational> a(Var::t);
  a.add_term(1, 2, GaussianRational(1));
  a.add_term(0, 1, GaussianRational(3));
  a.add_term(1, 0, GaussianRational(1));
  return a;
}

// Common member of the Gaussian Stein class and the class determined by the
// other CF annihilator: inverse transform of lclm(D + t, other).
inline WeylElement<Rational> intersection_operator(const WeylElement<GaussianRational>& other) {
  if (other.is_zero()) throw std::invalid_argument("intersection_operator: zero operator");
  auto joint = lclm(OrePoly::from_weyl(gaussian_cf_annihilator(Rational(1))),
                    OrePoly::from_weyl(other));
  return to_real_by_unit(psi_inverse(content_normalize(clear_denominators(joint))));
}

}  // namespace pso
