#pragma once

#include <cmath>
#include <numbers>

#include "turnsearch/errors.hpp"

namespace turnsearch {

struct RandomizedRatio {
  double a = 0.0;
  double q = 0.0;         // 1 + a
  double residual = 0.0;  // |(a + 1) / ln a - a|
  int bisection_steps = 0;
  int newton_steps = 0;
};

namespace detail {
// Root of this function is the a with (a + 1) / ln a = a.
inline double randomized_ratio_equation(double a) { return a * std::log(a) - (a + 1.0); }
}  // namespace detail

/// Optimal randomized competitive ratio q = 1 + a on the line, where
/// a ln a = a + 1. f is increasing on [e, 10] (f' = ln a >= 1) with f(e) = -1
/// and f(10) > 0, so bisection always converges; Newton then polishes.
inline RandomizedRatio solve_randomized_ratio(double tolerance) {
  if (!(tolerance >= 1e-15) || !std::isfinite(tolerance)) {
    throw InputError("tolerance must be at least 1e-15");
  }
  double lo = std::numbers::e;
  double hi = 10.0;
  RandomizedRatio out;
  while (hi - lo > 1e-14) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (detail::randomized_ratio_equation(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++out.bisection_steps;
  }
  double a = 0.5 * (lo + hi);
  for (int k = 0; k < 4; ++k) {
    double f = detail::randomized_ratio_equation(a);
    if (std::abs(f) <= tolerance * a * 1e-3) break;
    double next = a - f / std::log(a);
    // Damp back into the bracket if the step overshoots.
    while (next < lo || next > hi) next = 0.5 * (a + next);
    a = next;
    ++out.newton_steps;
  }
  double f = detail::randomized_ratio_equation(a);
  if (std::abs(f) > tolerance * a) {
    throw InternalError("randomized ratio did not reach the requested tolerance");
  }
  out.a = a;
  out.q = 1.0 + a;
  out.residual = std::abs((a + 1.0) / std::log(a) - a);
  return out;
}

/// Additive term of the turn-cost strategy, q (OPT + d/2) - d/2 = q OPT + d (q - 1) / 2.
inline double randomized_additive_bound(double q, double d) {
  if (!(q > 1.0)) throw InputError("ratio q must exceed 1");
  if (!(d >= 0.0)) throw InputError("turn cost d must be nonnegative");
  return d * (q - 1.0) / 2.0;
}

}  // namespace turnsearch
