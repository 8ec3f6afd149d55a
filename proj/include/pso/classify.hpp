#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "pso/rational.hpp"

namespace pso {

// Fate of one solution branch of the order-m CF equation: the branch carries
// a factor exp(-w t^2 / 2) with w on the unit circle, so Re(w) alone decides
// growth.
enum class BranchKind { decaying, oscillatory_bounded, blowing_up };

inline std::string to_string(BranchKind k) {
  switch (k) {
    case BranchKind::decaying: return "decaying";
    case BranchKind::oscillatory_bounded: return "oscillatory-bounded";
    case BranchKind::blowing_up: return "blowing-up";
  }
  return "?";
}

// One branch j of m: exponent coefficient -w/2 with w = exp(2 pi i (j-1)/m).
// The doubles are always filled; the exact fields are present when the
// angle lands on a multiple of pi/2 (both parts) or pi/3 (real part), the
// only cases where cosine or sine is rational.
struct Branch {
  int index;  // j, 1-based; j = 1 is the Gaussian branch
  double exponent_re;
  double exponent_im;
  std::optional<Rational> exact_re;
  std::optional<Rational> exact_im;
  BranchKind kind;
};

struct ClassificationReport {
  int m;
  std::vector<Branch> branches;
  // true when every branch besides j = 1 blows up, so boundedness of the
  // solution singles out the Gaussian
  bool characterising;
};

namespace detail {

// sign of cos(2 pi a / b) decided exactly by the quadrant of a/b mod 1
inline int cos_sign(long a, long b) {
  long r = ((a % b) + b) % b;  // angle fraction r/b in [0, 1)
  long four = 4 * r;
  if (four < b || four > 3 * b) return 1;
  if (four == b || four == 3 * b) return 0;
  return -1;
}

// cos(k pi / 2) for exact angles, as a rational
inline Rational cos_quarter(long k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return Rational(1);
    case 1: return Rational(0);
    case 2: return Rational(-1);
    default: return Rational(0);
  }
}

inline Rational sin_quarter(long k) { return cos_quarter(k - 1); }

// cos(k pi / 3) for exact angles, as a rational
inline Rational cos_sixth(long k) {
  switch (((k % 6) + 6) % 6) {
    case 0: return Rational(1);
    case 1: return Rational(1, 2);
    case 2: return Rational(-1, 2);
    case 3: return Rational(-1);
    case 4: return Rational(-1, 2);
    default: return Rational(1, 2);
  }
}

}  // namespace detail

inline ClassificationReport classify(int m) {
  if (m < 1) throw std::invalid_argument("classify: need m >= 1");
  ClassificationReport report;
  report.m = m;
  const double pi = std::acos(-1.0);
  bool tail_blows_up = true;
  for (int j = 1; j <= m; ++j) {
    Branch br;
    br.index = j;
    long num = 2L * (j - 1);  // angle = num * pi / m
    double theta = pi * static_cast<double>(num) / static_cast<double>(m);
    br.exponent_re = -std::cos(theta) / 2.0;
    br.exponent_im = -std::sin(theta) / 2.0;
    if ((num * 2) % m == 0) {
      long k = num * 2 / m;  // angle = k pi/2
      br.exact_re = -detail::cos_quarter(k) / 2;
      br.exact_im = -detail::sin_quarter(k) / 2;
    } else if ((num * 3) % m == 0) {
      br.exact_re = -detail::cos_sixth(num * 3 / m) / 2;
    }
    // where an exact part is known, the floating view reproduces it instead
    // of carrying libm rounding artifacts like -0.0 or 6e-17
    if (br.exact_re) br.exponent_re = to_double(*br.exact_re);
    if (br.exact_im) br.exponent_im = to_double(*br.exact_im);
    int s = detail::cos_sign(j - 1, m);
    br.kind = s > 0   ? BranchKind::decaying
              : s < 0 ? BranchKind::blowing_up
                      : BranchKind::oscillatory_bounded;
    if (j > 1 && br.kind != BranchKind::blowing_up) tail_blows_up = false;
    report.branches.push_back(std::move(br));
  }
  report.characterising = tail_blows_up;
  return report;
}

inline std::vector<ClassificationReport> classification_table(int m_max) {
  if (m_max < 1) throw std::invalid_argument("classification_table: need m_max >= 1");
  std::vector<ClassificationReport> table;
  for (int m = 1; m <= m_max; ++m) table.push_back(classify(m));
  return table;
}

}  // namespace pso
