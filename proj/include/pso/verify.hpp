#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "pso/hermite.hpp"
#include "pso/ore.hpp"
#include "pso/weyl.hpp"

namespace pso {

struct GaussianLaw {
  Rational mu;
  Rational sigma2;
  GaussianLaw(Rational mean, Rational variance) : mu(std::move(mean)), sigma2(std::move(variance)) {
    if (sigma2 <= 0) throw std::invalid_argument("gaussian law: sigma2 must be > 0");
  }
};

struct SemicircleLaw {
  Rational radius;
  explicit SemicircleLaw(Rational r) : radius(std::move(r)) {
    if (radius <= 0) throw std::invalid_argument("semicircle law: radius must be > 0");
  }
};

using DistributionSpec = std::variant<GaussianLaw, MixtureSpec, SemicircleLaw>;

// E[X^n], exact. Gaussian moments come from the binomial expansion of
// (mu + sigma Z)^n; centered even moments are sigma2^(k/2) (k-1)!!.
// Semicircle even moments are Catalan numbers scaled by (r/2)^(2m).
inline Rational exact_moment(const DistributionSpec& dist, unsigned n) {
  struct Visitor {
    unsigned n;
    Rational operator()(const GaussianLaw& g) const {
      Rational sum = 0;
      for (unsigned k = 0; k <= n; k += 2) {
        Rational term = Rational(binomial(n, k)) *
                        rational_pow(g.mu, n - k) *
                        rational_pow(g.sigma2, k / 2) *
                        Rational(double_factorial(static_cast<long>(k) - 1));
        sum += term;
      }
      return sum;
    }
    Rational operator()(const MixtureSpec& m) const {
      if (n % 2 == 1) return 0;
      Rational sum = 0;
      for (size_t j = 0; j < m.variances.size(); ++j)
        sum += m.weights[j] * rational_pow(m.variances[j], n / 2) *
               Rational(double_factorial(static_cast<long>(n) - 1));
      return sum;
    }
    Rational operator()(const SemicircleLaw& s) const {
      if (n % 2 == 1) return 0;
      unsigned m = n / 2;
      Rational catalan = Rational(binomial(2 * m, m)) / Rational(static_cast<long>(m) + 1);
      return catalan * rational_pow(s.radius, n) /
             rational_pow(Rational(4), m);
    }
  };
  return std::visit(Visitor{n}, dist);
}

inline Rational exact_expectation(const DistributionSpec& dist, const Poly<Rational>& f) {
  check_same_var(f.var(), Var::x, "exact_expectation");
  Rational sum = 0;
  for (int k = 0; k <= f.degree(); ++k) {
    if (f.coeff(k) == 0) continue;
    sum += f.coeff(k) * exact_moment(dist, static_cast<unsigned>(k));
  }
  return sum;
}

// f(x) = exp(-alpha x^2) (pc(x) cos(b x) + ps(x) sin(b x)). The family is
// closed under d/dx and multiplication by x, so any operator of the algebra
// maps it to itself with the same (alpha, b); integrals stay in closed form
// for the quadrature engine while the derivative is exact symbolically.
struct TestFunction {
  Rational alpha;
  Rational freq;
  Poly<Rational> cos_part;
  Poly<Rational> sin_part;

  TestFunction(Rational a, Rational b, Poly<Rational> pc, Poly<Rational> ps)
      : alpha(std::move(a)), freq(std::move(b)), cos_part(std::move(pc)), sin_part(std::move(ps)) {
    if (alpha < 0) throw std::invalid_argument("test function: alpha must be >= 0");
    check_same_var(cos_part.var(), Var::x, "test function");
    check_same_var(sin_part.var(), Var::x, "test function");
  }

  static TestFunction polynomial(Poly<Rational> p) {
    Var v = p.var();
    return TestFunction(Rational(0), Rational(0), std::move(p), Poly<Rational>::zero(v));
  }

  bool is_zero() const { return cos_part.is_zero() && sin_part.is_zero(); }

  TestFunction derivative() const {
    auto x = Poly<Rational>::variable(Var::x);
    Poly<Rational> two_ax = x * Rational(2) * alpha;
    Poly<Rational> pc = cos_part.derivative() - two_ax * cos_part + sin_part * freq;
    Poly<Rational> ps = sin_part.derivative() - two_ax * sin_part - cos_part * freq;
    return TestFunction(alpha, freq, std::move(pc), std::move(ps));
  }

  TestFunction mul_by_x_power(int a) const {
    auto xa = Poly<Rational>::monomial(Var::x, a);
    return TestFunction(alpha, freq, cos_part * xa, sin_part * xa);
  }

  TestFunction scaled(const Rational& c) const {
    return TestFunction(alpha, freq, cos_part * c, sin_part * c);
  }

  friend TestFunction operator+(const TestFunction& a, const TestFunction& b) {
    if (a.alpha != b.alpha || a.freq != b.freq)
      throw std::invalid_argument("test function: mismatched damping or frequency");
    return TestFunction(a.alpha, a.freq, a.cos_part + b.cos_part, a.sin_part + b.sin_part);
  }

  double evaluate(double x) const {
    double a = to_double(alpha), b = to_double(freq);
    double damp = std::exp(-a * x * x);
    double value = cos_part.evaluate(x) * std::cos(b * x);
    if (!sin_part.is_zero()) value += sin_part.evaluate(x) * std::sin(b * x);
    return damp * value;
  }
};

inline TestFunction apply(const WeylElement<Rational>& S, const TestFunction& f) {
  check_same_var(S.var(), Var::x, "apply");
  TestFunction out(f.alpha, f.freq, Poly<Rational>::zero(Var::x), Poly<Rational>::zero(Var::x));
  for (const auto& [key, c] : S.terms()) {
    auto [varpow, dpow] = key;
    TestFunction g = f;
    for (int j = 0; j < dpow; ++j) g = g.derivative();
    out = out + g.mul_by_x_power(varpow).scaled(c);
  }
  return out;
}

// Fixed, versioned collection of probe functions. The set mixes plain
// polynomials with damped trigonometric shapes so both the exact and the
// quadrature paths get exercised away from the polynomial-only case.
inline std::vector<TestFunction> test_suite(const std::string& version) {
  if (version != "v1") throw std::invalid_argument("unknown test suite: " + version);
  using P = Poly<Rational>;
  auto x = P::variable(Var::x);
  auto one = P::constant(Var::x, Rational(1));
  auto zero = P::zero(Var::x);
  Rational q0(0);
  std::vector<TestFunction> fs;
  fs.emplace_back(TestFunction::polynomial(one));
  fs.emplace_back(TestFunction::polynomial(x));
  fs.emplace_back(TestFunction::polynomial(x * x - one));
  fs.emplace_back(TestFunction::polynomial(x * x * x));
  fs.emplace_back(TestFunction::polynomial(poly_pow(x, 5) - x * x * Rational(2) + Rational(3, 2) * one));
  fs.emplace_back(Rational(1, 4), q0, one, zero);
  fs.emplace_back(Rational(1, 4), Rational(1), one, zero);
  fs.emplace_back(Rational(1, 4), Rational(1), zero, x);
  fs.emplace_back(Rational(1, 2), Rational(2), x * x, one);
  fs.emplace_back(Rational(1, 8), Rational(1, 2), x * x * x - x, zero);
  return fs;
}

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

// Orthonormal-recurrence evaluation: e_k = He_k(x)/sqrt(k!) keeps values
// bounded in the oscillatory region. e_{k+1} = (x e_k - sqrt(k) e_{k-1})/sqrt(k+1).
inline std::vector<double> hermite_orthonormal_row(int n, double x) {
  std::vector<double> e(static_cast<size_t>(n) + 1);
  e[0] = 1.0;
  if (n >= 1) e[1] = x;
  for (int k = 1; k < n; ++k)
    e[static_cast<size_t>(k) + 1] =
        (x * e[static_cast<size_t>(k)] - std::sqrt(static_cast<double>(k)) * e[static_cast<size_t>(k) - 1]) /
        std::sqrt(static_cast<double>(k) + 1.0);
  return e;
}

inline double hermite_orthonormal(int n, double x) { return hermite_orthonormal_row(n, x).back(); }

}  // namespace detail

// Gauss rule for the standard Gaussian weight: nodes are the zeros of the
// degree-n Hermite polynomial, found by interlacing-bracketed bisection plus
// Newton polish; weights follow from the orthonormal row. Cached per n.
inline const QuadratureRule& gauss_hermite_rule(int n) {
  if (n < 1 || n > 512) throw std::invalid_argument("gauss_hermite_rule: need 1 <= n <= 512");
  static std::map<int, QuadratureRule> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<double> roots{0.0};
  for (int k = 2; k <= n; ++k) {
    double outer = 2.0 * std::sqrt(static_cast<double>(k)) + 2.0;
    std::vector<double> brackets;
    brackets.push_back(-outer);
    for (double r : roots) brackets.push_back(r);
    brackets.push_back(outer);
    std::vector<double> next;
    for (size_t i = 0; i + 1 < brackets.size(); ++i) {
      double lo = brackets[i], hi = brackets[i + 1];
      double flo = detail::hermite_orthonormal(k, lo);
      for (int iter = 0; iter < 60; ++iter) {
        double mid = 0.5 * (lo + hi);
        double fmid = detail::hermite_orthonormal(k, mid);
        if ((flo < 0) == (fmid < 0)) {
          lo = mid;
          flo = fmid;
        } else {
          hi = mid;
        }
      }
      double xr = 0.5 * (lo + hi);
      for (int iter = 0; iter < 4; ++iter) {
        auto row = detail::hermite_orthonormal_row(k, xr);
        double fx = row[static_cast<size_t>(k)];
        double dfx = std::sqrt(static_cast<double>(k)) * row[static_cast<size_t>(k) - 1];
        if (dfx == 0.0) break;
        double step = fx / dfx;
        if (std::abs(step) > 1.0) break;
        xr -= step;
      }
      next.push_back(xr);
    }
    roots = std::move(next);
  }
  // enforce the exact +/- symmetry of the node set; descending order
  std::reverse(roots.begin(), roots.end());
  for (size_t i = 0; i < roots.size() / 2; ++i) {
    double s = 0.5 * (roots[i] - roots[roots.size() - 1 - i]);
    roots[i] = s;
    roots[roots.size() - 1 - i] = -s;
  }
  if (roots.size() % 2 == 1) roots[roots.size() / 2] = 0.0;

  QuadratureRule rule;
  rule.nodes = roots;
  for (double xr : roots) {
    auto row = detail::hermite_orthonormal_row(n - 1, xr);
    double s = 0.0;
    for (double v : row) s += v * v;
    rule.weights.push_back(1.0 / s);
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

// Gauss rule for the semicircle density of the given radius: Chebyshev
// second-kind nodes r cos(j pi / (n+1)) with weights 2 sin^2(j pi/(n+1))/(n+1).
inline QuadratureRule chebyshev_u_rule(int n, double radius) {
  if (n < 1) throw std::invalid_argument("chebyshev_u_rule: need n >= 1");
  if (!(radius > 0)) throw std::invalid_argument("chebyshev_u_rule: radius must be > 0");
  QuadratureRule rule;
  const double pi = std::acos(-1.0);
  for (int j = 1; j <= n; ++j) {
    double theta = pi * static_cast<double>(j) / (static_cast<double>(n) + 1.0);
    rule.nodes.push_back(radius * std::cos(theta));
    double s = std::sin(theta);
    rule.weights.push_back(2.0 / (static_cast<double>(n) + 1.0) * s * s);
  }
  // bitwise mirror symmetry so odd integrands cancel exactly in pairs
  size_t m = rule.nodes.size();
  for (size_t i = 0; i < m / 2; ++i) {
    double s = 0.5 * (rule.nodes[i] - rule.nodes[m - 1 - i]);
    rule.nodes[i] = s;
    rule.nodes[m - 1 - i] = -s;
    double w = 0.5 * (rule.weights[i] + rule.weights[m - 1 - i]);
    rule.weights[i] = w;
    rule.weights[m - 1 - i] = w;
  }
  if (m % 2 == 1) rule.nodes[m / 2] = 0.0;
  return rule;
}

namespace detail {

inline double integrate(const TestFunction& g, const DistributionSpec& dist, int n) {
  struct Visitor {
    const TestFunction& g;
    int n;
    double operator()(const GaussianLaw& law) const {
      const QuadratureRule& rule = gauss_hermite_rule(n);
      double mu = to_double(law.mu), sigma = std::sqrt(to_double(law.sigma2));
      double sum = 0.0;
      for (size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * g.evaluate(mu + sigma * rule.nodes[i]);
      return sum;
    }
    double operator()(const MixtureSpec& mix) const {
      const QuadratureRule& rule = gauss_hermite_rule(n);
      double sum = 0.0;
      for (size_t j = 0; j < mix.variances.size(); ++j) {
        double w = to_double(mix.weights[j]);
        double sigma = std::sqrt(to_double(mix.variances[j]));
        double inner = 0.0;
        for (size_t i = 0; i < rule.nodes.size(); ++i)
          inner += rule.weights[i] * g.evaluate(sigma * rule.nodes[i]);
        sum += w * inner;
      }
      return sum;
    }
    double operator()(const SemicircleLaw& law) const {
      QuadratureRule rule = chebyshev_u_rule(n, to_double(law.radius));
      double sum = 0.0;
      for (size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * g.evaluate(rule.nodes[i]);
      return sum;
    }
  };
  return std::visit(Visitor{g, n}, dist);
}

}  // namespace detail

struct NumericExpectation {
  double value;
  double error_proxy;  // |n-node result - 2n-node result|
};

// E[ (S f)(X) ] by Gauss quadrature; the operator is applied symbolically
// first, so the integrand is exact and only the integral is numeric.
inline NumericExpectation numeric_expectation(const WeylElement<Rational>& S,
                                              const TestFunction& f,
                                              const DistributionSpec& dist, int nodes = 64) {
  if (nodes < 8) throw std::invalid_argument("numeric_expectation: need nodes >= 8");
  TestFunction g = pso::apply(S, f);
  double v1 = detail::integrate(g, dist, nodes);
  double v2 = detail::integrate(g, dist, 2 * nodes);
  return {v1, std::abs(v1 - v2)};
}

struct DiscrepancyReport {
  double max_abs;          // worst |E[Sf]| over the suite
  double max_error_proxy;  // worst quadrature error proxy over the suite
  size_t argmax;           // index of the worst function
};

// Largest |E[Sf]| over the versioned suite: near zero exactly when S is a
// Stein operator for the law.
inline DiscrepancyReport discrepancy_probe(const WeylElement<Rational>& S,
                                           const DistributionSpec& dist, int nodes = 64) {
  DiscrepancyReport report{0.0, 0.0, 0};
  auto fs = test_suite("v1");
  for (size_t i = 0; i < fs.size(); ++i) {
    NumericExpectation e = numeric_expectation(S, fs[i], dist, nodes);
    if (std::abs(e.value) > report.max_abs) {
      report.max_abs = std::abs(e.value);
      report.argmax = i;
    }
    report.max_error_proxy = std::max(report.max_error_proxy, e.error_proxy);
  }
  return report;
}

}  // namespace pso
