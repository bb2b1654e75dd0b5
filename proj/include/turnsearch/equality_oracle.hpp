#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "turnsearch/errors.hpp"
#include "turnsearch/linear_program.hpp"
#include "turnsearch/numeric.hpp"

namespace turnsearch {

namespace detail {

// Solves the square system M z = rhs by Gaussian elimination with partial
// pivoting (largest magnitude in float, first nonzero in exact arithmetic).
template <class T>
std::vector<T> gauss_solve(std::vector<std::vector<T>> M, std::vector<T> rhs, const Tolerance<T>& tol) {
  const std::size_t n = M.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    for (std::size_t r = col; r < n; ++r) {
      if (M[r][col] == 0) continue;
      if constexpr (is_rational_v<T>) {
        pivot = r;
        break;
      } else {
        if (pivot == n || num::abs(M[r][col]) > num::abs(M[pivot][col])) pivot = r;
      }
    }
    if (pivot == n || tol.is_zero(M[pivot][col])) throw OracleNotApplicable("equality system is singular");
    std::swap(M[col], M[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (M[r][col] == 0) continue;
      const T f = M[r][col] / M[col][col];
      for (std::size_t c = col; c < n; ++c) M[r][c] -= f * M[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<T> z(n, T(0));
  for (std::size_t i = n; i-- > 0;) {
    T acc = rhs[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= M[i][c] * z[c];
    z[i] = acc / M[i][i];
  }
  return z;
}

}  // namespace detail

/// Independent check on solve(): assumes every row is tight at the optimum.
///
/// Columns with zero cost and nonnegative coefficients are fixed at zero
/// (raising them can only tighten rows). The remaining columns must form a
/// square nonsingular system; its solution and the induced multipliers are
/// returned when both are nonnegative, otherwise the oracle does not apply.
template <class T>
LpSolution<T> solve_equality_oracle(const LinearProgram<T>& lp, const Tolerance<T>& tol) {
  lp.validate();
  const std::size_t n = lp.var_count;
  const std::size_t m = lp.rows.size();
  std::vector<std::size_t> active;
  for (std::size_t j = 0; j < n; ++j) {
    bool pinned = lp.objective[j] == 0;
    for (std::size_t r = 0; r < m && pinned; ++r) pinned = lp.rows[r].coeffs[j] >= 0;
    if (!pinned) active.push_back(j);
  }
  if (active.size() != m) {
    throw OracleNotApplicable("equality oracle needs one free column per row (" + std::to_string(active.size()) +
                              " columns, " + std::to_string(m) + " rows)");
  }

  std::vector<std::vector<T>> A(m, std::vector<T>(m));
  std::vector<std::vector<T>> At(m, std::vector<T>(m));
  std::vector<T> b(m);
  std::vector<T> neg_cost(m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t k = 0; k < m; ++k) {
      A[r][k] = lp.rows[r].coeffs[active[k]];
      At[k][r] = A[r][k];
    }
    b[r] = lp.rows[r].rhs;
  }
  for (std::size_t k = 0; k < m; ++k) neg_cost[k] = -lp.objective[active[k]];

  const std::vector<T> xb = detail::gauss_solve(std::move(A), std::move(b), tol);
  const std::vector<T> y = detail::gauss_solve(std::move(At), std::move(neg_cost), tol);

  LpSolution<T> sol;
  sol.status = LpStatus::Optimal;
  sol.primal.assign(n, T(0));
  for (std::size_t k = 0; k < m; ++k) {
    if (tol.is_neg(xb[k])) throw OracleNotApplicable("tight-row solution is not primal feasible");
    sol.primal[active[k]] = xb[k];
  }
  for (const auto& v : y) {
    if (tol.is_neg(v)) throw OracleNotApplicable("induced multipliers are negative");
  }
  sol.dual = y;
  sol.objective = T(0);
  for (std::size_t j = 0; j < n; ++j) sol.objective += lp.objective[j] * sol.primal[j];
  return sol;
}

template <class T>
LpSolution<T> solve_equality_oracle(const LinearProgram<T>& lp, const ArithmeticMode& mode) {
  return solve_equality_oracle(lp, tolerance_for<T>(mode));
}

}  // namespace turnsearch
