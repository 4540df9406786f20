#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "memcentre/quadrature.hpp"

// Kernel-averaged log-distance function L, its derivative, and the Cauchy
// surrogate used by the solver.  L is the Epanechnikov average of ln|x - a|:
//
//   L(a) = (3/4) * integral_{-1}^{1} ln|x - a| (1 - x^2) dx
//
// with closed form
//
//   L(a) = (1/2) ln|1 - a^2| + ((3/4)a - (1/4)a^3) ln|(1+a)/(1-a)|
//        + a^2/2 - 4/3                                  for |a| != 1,
//   L(a) = ln 2 - 5/6                                   for |a| = 1.
//
// The raw form cancels catastrophically as |a| -> 1; near the singular points
// it is evaluated through an algebraically identical rearrangement in which
// every log factor is multiplied by a power of its own argument, so the
// u ln|u| limits are explicit.

namespace memcentre {

/// exp(-8/3); the additive floor of the Cauchy surrogate, chosen so that the
/// surrogate matches L at the origin.
inline constexpr double kCauchyFloor = 0.069483451222801543;

/// Half-width of the bands around |a| in {0, 1} inside which l_exact switches
/// from the raw closed form to the limit-safe rearrangement.
struct EvalGuard {
  double singular_radius = 1e-4;
};

namespace detail {

inline void require_finite(double x, const char* fn) {
  if (!std::isfinite(x)) {
    throw std::domain_error(std::string(fn) + ": non-finite argument");
  }
}

inline void require_guard(const EvalGuard& guard) {
  if (!(guard.singular_radius > 0.0) || !(guard.singular_radius < 0.5)) {
    throw std::domain_error("EvalGuard: singular_radius must lie in (0, 0.5)");
  }
}

/// u ln|u| extended continuously by 0 at u = 0.
inline double xlogabs(double u) {
  return u == 0.0 ? 0.0 : u * std::log(std::abs(u));
}

// Rearranged closed form, exact algebra of the raw form:
//   L(t) = (1-t)^2 (t+2)/4 * ln|1-t| + (1+t)^2 (2-t)/4 * ln(1+t)
//        + t^2/2 - 4/3.
// Finite and stable through t = 1; used on the guard bands.
inline double l_limit_form(double t) {
  const double u = 1.0 - t;
  const double v = 1.0 + t;
  return xlogabs(u) * (u * (t + 2.0) * 0.25) +
         std::log(v) * (v * v * (2.0 - t) * 0.25) + 0.5 * t * t - 4.0 / 3.0;
}

inline double l_raw_form(double t) {
  return 0.5 * std::log(std::abs(1.0 - t * t)) +
         (0.75 * t - 0.25 * t * t * t) *
             std::log(std::abs((1.0 + t) / (1.0 - t))) +
         0.5 * t * t - 4.0 / 3.0;
}

// Large-argument expansion; the closed form loses digits once the a^2/2 term
// dominates.  Error below 1e-16 for t >= 100.
inline double l_tail_series(double t) {
  const double r = 1.0 / (t * t);
  return std::log(t) - r * (0.1 + r * (3.0 / 140.0 + r * (1.0 / 126.0)));
}

inline double l_tail_series_derivative(double t) {
  const double r = 1.0 / (t * t);
  return (1.0 + r * (0.2 + r * (3.0 / 35.0 + r * (1.0 / 21.0)))) / t;
}

}  // namespace detail

/// Closed-form L(a).  Even in a by construction (|a| is taken first), exact
/// at a = 0 (-4/3) and |a| = 1 (ln 2 - 5/6).
inline double l_exact(double a, const EvalGuard& guard = {}) {
  detail::require_finite(a, "l_exact");
  detail::require_guard(guard);
  const double t = std::abs(a);
  if (t == 1.0) return std::log(2.0) - 5.0 / 6.0;
  if (t >= 100.0) return detail::l_tail_series(t);
  if (t <= guard.singular_radius ||
      std::abs(t - 1.0) <= guard.singular_radius) {
    return detail::l_limit_form(t);
  }
  return detail::l_raw_form(t);
}

/// dL/da.  Via the closed form,
///   L'(a) = (3/4)(1 - a^2) ln|(1+a)/(1-a)| + (3/2) a,
/// odd in a, with limit value 3/2 at a = 1 (the u ln|u| products vanish).
inline double l_exact_derivative(double a) {
  detail::require_finite(a, "l_exact_derivative");
  const double t = std::abs(a);
  double d;
  if (t >= 100.0) {
    d = detail::l_tail_series_derivative(t);
  } else {
    const double u = 1.0 - t;
    const double v = 1.0 + t;
    d = 0.75 * v * (u * std::log(v) - detail::xlogabs(u)) + 1.5 * t;
  }
  return a < 0.0 ? -d : d;
}

/// Cauchy surrogate: (1/2) ln(exp(-8/3) + a^2).  Analytic, even, equals L at
/// the origin and asymptotically as |a| grows.
inline double l_bar(double a) {
  detail::require_finite(a, "l_bar");
  const double t = std::abs(a);
  if (t >= 1e150) return std::log(t);  // t*t would overflow; floor is lost anyway
  return 0.5 * std::log(kCauchyFloor + t * t);
}

/// IRLS weight as a function of the squared scaled residual:
///   w(s) = (exp(-8/3) + s)^{-1}.
/// Strictly decreasing, bounded by exp(8/3).
inline double weight_kernel(double s) {
  detail::require_finite(s, "weight_kernel");
  if (s < 0.0) throw std::domain_error("weight_kernel: negative argument");
  return 1.0 / (kCauchyFloor + s);
}

/// Independent check of l_exact: composite Gauss-Legendre evaluation of the
/// defining integral, split at x = a so the log singularity sits on panel
/// edges.  `panels` steers the initial refinement level (>= 64).
inline double l_quadrature(double a, int panels) {
  detail::require_finite(a, "l_quadrature");
  if (panels < 64) throw std::domain_error("l_quadrature: panels must be >= 64");
  const auto integrand = [a](double x) {
    return 0.75 * std::log(std::abs(x - a)) * (1.0 - x * x);
  };
  return integrate_with_split(integrand, -1.0, 1.0, a, 1e-9,
                              std::max(1, panels / 64));
}

}  // namespace memcentre
