#pragma once

// Scalar building blocks for the coordinate-sum kernel families.
//
// Every generalized-JS and Hilbertian branch has the form
//   d^2(x, y) = C * sum_j h(x_j, y_j)   with h(s, s) = 0,
//   k(x, y)   = -(C / 2) * sum_j [h(x_j, y_j) - h(x_j, u) - h(u, y_j)],
// where u = 1/p. CoordTerm holds C and evaluates h for one branch.

#include <algorithm>
#include <cmath>
#include <numbers>

#include "compkern/kernel_spec.hpp"

namespace compkern::detail {

// [s^q + t^q]^(1/q) for s, t >= 0, including q = +-inf. Evaluated relative
// to the dominant term so large |q| cannot overflow.
inline double power_mean_sum(double s, double t, double q) {
  if (q == kInf) return std::max(s, t);
  if (q == -kInf) return std::min(s, t);
  // Exponents on the default grid that have cheap exact forms.
  if (q == 1.0) return s + t;
  if (q == 0.5) {
    const double r = std::sqrt(s) + std::sqrt(t);
    return r * r;
  }
  if (q == -1.0) return s > 0.0 && t > 0.0 ? s * t / (s + t) : 0.0;
  if (q > 0.0) {
    const double m = std::max(s, t);
    if (m == 0.0) return 0.0;
    const double r = std::min(s, t) / m;
    return m * std::pow(1.0 + std::pow(r, q), 1.0 / q);
  }
  const double m = std::min(s, t);
  if (m == 0.0) return 0.0;
  const double r = std::max(s, t) / m;
  return m * std::pow(1.0 + std::pow(r, q), 1.0 / q);
}

inline double xlogx(double v) { return v > 0.0 ? v * std::log(v) : 0.0; }

enum class CoordBranch {
  kGenJsFinite,    // a < inf, b < a
  kGenJsAInf,      // a = inf, b < inf
  kGenJsBEqualsA,  // b = a < inf
  kGenJsBothInf,   // a = b = inf
  kHilbFinite,     // a < inf, b > -inf
  kHilbAInf,       // a = inf
  kHilbBNegInf,    // b = -inf
};

struct CoordTerm {
  CoordBranch branch = CoordBranch::kGenJsFinite;
  double a = 0.0;
  double b = 0.0;
  double scale = 1.0;  // C
  double two_inv_a = 1.0;
  double two_inv_b = 1.0;

  double h(double s, double t) const {
    switch (branch) {
      case CoordBranch::kGenJsFinite:
      case CoordBranch::kHilbFinite:
        return two_inv_b * power_mean_sum(s, t, a) - two_inv_a * power_mean_sum(s, t, b);
      case CoordBranch::kGenJsAInf:
      case CoordBranch::kHilbAInf:
        return two_inv_b * std::max(s, t) - power_mean_sum(s, t, b);
      case CoordBranch::kGenJsBEqualsA: {
        const double m = std::max(s, t);
        if (m == 0.0) return 0.0;
        const double rs = b == 1.0 ? s / m : std::pow(s / m, b);
        const double rt = b == 1.0 ? t / m : std::pow(t / m, b);
        const double sig = rs + rt;
        return m * (b == 1.0 ? 1.0 : std::pow(sig, 1.0 / b - 1.0)) *
               (xlogx(rs) + xlogx(rt) + sig * std::log(2.0 / sig));
      }
      case CoordBranch::kGenJsBothInf:
        return s != t ? std::max(s, t) : 0.0;
      case CoordBranch::kHilbBNegInf:
        return power_mean_sum(s, t, a) - two_inv_a * std::min(s, t);
    }
    return 0.0;
  }

  static CoordTerm for_spec(const KernelSpec& spec) {
    CoordTerm ct;
    ct.a = spec.a;
    ct.b = spec.b;
    ct.two_inv_a = std::isinf(spec.a) ? 1.0 : std::exp2(1.0 / spec.a);
    ct.two_inv_b = std::isinf(spec.b) ? 1.0 : std::exp2(1.0 / spec.b);
    const double a = spec.a;
    const double b = spec.b;
    if (spec.family == KernelFamily::kGeneralizedJS) {
      if (std::isinf(a) && std::isinf(b)) {
        ct.branch = CoordBranch::kGenJsBothInf;
        ct.scale = std::numbers::ln2;
      } else if (std::isinf(a)) {
        ct.branch = CoordBranch::kGenJsAInf;
        ct.scale = b;
      } else if (a == b) {
        ct.branch = CoordBranch::kGenJsBEqualsA;
        ct.scale = std::exp2(-1.0 / b);
      } else {
        ct.branch = CoordBranch::kGenJsFinite;
        ct.scale = a * b / (a - b) * std::exp2(-(1.0 / a + 1.0 / b));
      }
    } else {
      if (std::isinf(a)) {
        ct.branch = CoordBranch::kHilbAInf;
        ct.scale = 1.0 / (1.0 - ct.two_inv_b);
      } else if (std::isinf(b)) {
        ct.branch = CoordBranch::kHilbBNegInf;
        ct.scale = 1.0 / (ct.two_inv_a - 1.0);
      } else {
        ct.branch = CoordBranch::kHilbFinite;
        ct.scale = 1.0 / (ct.two_inv_a - ct.two_inv_b);
      }
    }
    return ct;
  }
};

}  // namespace compkern::detail
