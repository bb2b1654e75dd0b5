#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "turnsearch/errors.hpp"
#include "turnsearch/numeric.hpp"

namespace turnsearch {

/// One inequality row: coeffs . x <= rhs.
template <class T>
struct LpRow {
  std::vector<T> coeffs;
  T rhs{};

  friend bool operator==(const LpRow&, const LpRow&) = default;
};

/// min objective . x  subject to  rows,  x >= 0.
template <class T>
struct LinearProgram {
  std::vector<T> objective;
  std::vector<LpRow<T>> rows;
  std::size_t var_count = 0;

  LinearProgram() = default;
  explicit LinearProgram(std::size_t vars) : objective(vars, T(0)), var_count(vars) {}

  void add_row(std::vector<T> coeffs, T rhs) { rows.push_back({std::move(coeffs), std::move(rhs)}); }

  std::size_t row_count() const { return rows.size(); }

  /// Throws InputError if the LP is malformed.
  void validate() const {
    if (var_count == 0) throw InputError("LP needs at least one variable");
    if (rows.empty()) throw InputError("LP needs at least one row");
    if (objective.size() != var_count) {
      throw InputError("objective has " + std::to_string(objective.size()) + " entries, expected " +
                       std::to_string(var_count));
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].coeffs.size() != var_count) {
        throw InputError("row " + std::to_string(r) + " has " + std::to_string(rows[r].coeffs.size()) +
                         " coefficients, expected " + std::to_string(var_count));
      }
    }
    if constexpr (!is_rational_v<T>) {
      auto finite = [](const T& v) { return std::isfinite(static_cast<double>(v)); };
      for (const auto& v : objective) {
        if (!finite(v)) throw InputError("objective coefficient is not finite");
      }
      for (const auto& row : rows) {
        if (!finite(row.rhs)) throw InputError("right-hand side is not finite");
        for (const auto& v : row.coeffs) {
          if (!finite(v)) throw InputError("row coefficient is not finite");
        }
      }
    }
  }

  T row_activity(std::size_t r, const std::vector<T>& x) const {
    T sum(0);
    const auto& coeffs = rows[r].coeffs;
    for (std::size_t i = 0; i < var_count; ++i) {
      if (coeffs[i] != 0) sum += coeffs[i] * x[i];
    }
    return sum;
  }

  friend bool operator==(const LinearProgram&, const LinearProgram&) = default;
};

template <class To, class From>
LinearProgram<To> convert_lp(const LinearProgram<From>& lp) {
  auto conv = [](const From& v) -> To {
    if constexpr (std::is_same_v<To, From>) {
      return v;
    } else if constexpr (is_rational_v<To>) {
      return num::from_double<To>(num::to_double(v));
    } else {
      return static_cast<To>(num::to_double(v));
    }
  };
  LinearProgram<To> out(lp.var_count);
  for (std::size_t i = 0; i < lp.var_count; ++i) out.objective[i] = conv(lp.objective[i]);
  for (const auto& row : lp.rows) {
    std::vector<To> coeffs;
    coeffs.reserve(row.coeffs.size());
    for (const auto& v : row.coeffs) coeffs.push_back(conv(v));
    out.add_row(std::move(coeffs), conv(row.rhs));
  }
  return out;
}

enum class LpStatus { Optimal, Infeasible, Unbounded };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal:
      return "optimal";
    case LpStatus::Infeasible:
      return "infeasible";
    case LpStatus::Unbounded:
      return "unbounded";
  }
  return "unknown";
}

// Dual convention: for  min c.x, Ax <= b, x >= 0  the multipliers y >= 0
// satisfy c + A^T y >= 0 and the dual objective is -b.y.
template <class T>
struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<T> primal;
  std::vector<T> dual;
  T objective{};
  std::size_t pivots = 0;

  bool optimal() const { return status == LpStatus::Optimal; }
};

template <class T>
T dual_objective(const LinearProgram<T>& lp, const std::vector<T>& dual) {
  T sum(0);
  for (std::size_t r = 0; r < lp.rows.size(); ++r) sum -= lp.rows[r].rhs * dual[r];
  return sum;
}

/// Outcome of checking an LpSolution against the optimality conditions.
struct DualityReport {
  bool primal_feasible = true;
  bool dual_feasible = true;
  bool strong_duality = true;
  bool complementary_slackness = true;
  double duality_gap = 0.0;
  double max_slackness_product = 0.0;

  bool ok() const { return primal_feasible && dual_feasible && strong_duality && complementary_slackness; }
};

// Float checks scale the tolerance by the magnitude of the terms involved so
// that LPs with very large step lengths are judged on relative error.
template <class T>
DualityReport check_optimality(const LinearProgram<T>& lp, const LpSolution<T>& sol, const Tolerance<T>& tol) {
  DualityReport rep;
  const std::size_t n = lp.var_count;
  const std::size_t m = lp.rows.size();
  auto within = [&](const T& value, const T& scale) {
    if constexpr (is_rational_v<T>) {
      (void)scale;
      return value == 0;
    } else {
      T bound = tol.tol * std::max(T(1), scale);
      return value <= bound && value >= -bound;
    }
  };
  auto le = [&](const T& value, const T& scale) {
    if constexpr (is_rational_v<T>) {
      (void)scale;
      return value <= 0;
    } else {
      return value <= tol.tol * std::max(T(1), scale);
    }
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (!le(-sol.primal[i], num::abs(sol.primal[i]))) rep.primal_feasible = false;
  }
  for (std::size_t r = 0; r < m; ++r) {
    T activity(0);
    T scale = num::abs(lp.rows[r].rhs);
    for (std::size_t i = 0; i < n; ++i) {
      T term = lp.rows[r].coeffs[i] * sol.primal[i];
      activity += term;
      T mag = num::abs(term);
      if (mag > scale) scale = mag;
    }
    if (!le(activity - lp.rows[r].rhs, scale)) rep.primal_feasible = false;
    if (!le(-sol.dual[r], T(0))) rep.dual_feasible = false;
    T product = sol.dual[r] * (lp.rows[r].rhs - activity);
    double p = std::abs(num::to_double(product));
    if (p > rep.max_slackness_product) rep.max_slackness_product = p;
    if (!within(product, num::abs(sol.dual[r]) * scale)) rep.complementary_slackness = false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    T reduced = lp.objective[i];
    T scale = num::abs(reduced);
    for (std::size_t r = 0; r < m; ++r) {
      T term = lp.rows[r].coeffs[i] * sol.dual[r];
      reduced += term;
      T mag = num::abs(term);
      if (mag > scale) scale = mag;
    }
    if (!le(-reduced, scale)) rep.dual_feasible = false;
  }
  T dual_obj = dual_objective(lp, sol.dual);
  T gap = sol.objective - dual_obj;
  rep.duality_gap = num::to_double(gap);
  if (!within(gap, num::abs(dual_obj))) rep.strong_duality = false;
  return rep;
}

}  // namespace turnsearch
