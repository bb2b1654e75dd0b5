#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "turnsearch/errors.hpp"
#include "turnsearch/linear_program.hpp"
#include "turnsearch/numeric.hpp"

namespace turnsearch {

enum class PivotRule {
  Bland,                     // smallest-index rule throughout
  DantzigWithBlandFallback,  // steepest coefficient until a degenerate run, then Bland
};

struct SimplexOptions {
  PivotRule rule = PivotRule::DantzigWithBlandFallback;
  // Consecutive degenerate pivots tolerated before switching to Bland for good.
  std::size_t degenerate_run_limit = 32;
  // 0 selects 50 * (rows + columns) + 1000.
  std::size_t max_pivots = 0;
};

namespace detail {

// Dense tableau for  min c.x,  A x + s = b,  x, s >= 0  plus optional
// artificial columns. Row-major, the last row holds reduced costs and the
// last column holds the basic values (objective row: minus the objective).
template <class T>
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), T(0)) {}

  T& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  const T& at(std::size_t r, std::size_t c) const { return data_[r * (cols_ + 1) + c]; }
  T& rhs(std::size_t r) { return at(r, cols_); }
  const T& rhs(std::size_t r) const { return at(r, cols_); }
  T& cost(std::size_t c) { return at(rows_, c); }
  const T& cost(std::size_t c) const { return at(rows_, c); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const std::size_t width = cols_ + 1;
    T* prow = &data_[pr * width];
    const T inv = T(1) / prow[pc];
    nonzero_.clear();
    for (std::size_t c = 0; c < width; ++c) {
      if (prow[c] != 0) {
        if (c != pc) prow[c] *= inv;
        nonzero_.push_back(c);
      }
    }
    prow[pc] = T(1);
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      T* row = &data_[r * width];
      if (row[pc] == 0) continue;
      const T factor = row[pc];
      for (std::size_t c : nonzero_) row[c] -= factor * prow[c];
      row[pc] = T(0);
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<T> data_;
  std::vector<std::size_t> nonzero_;
};

enum class PhaseResult { Optimal, Unbounded, Infeasible };

template <class T>
class SimplexEngine {
 public:
  SimplexEngine(Tableau<T>& tab, std::vector<std::size_t>& basis, std::vector<bool>& blocked, const Tolerance<T>& tol,
                const SimplexOptions& opts, std::size_t& pivots, std::size_t max_pivots)
      : tab_(tab), basis_(basis), blocked_(blocked), tol_(tol), opts_(opts), pivots_(pivots), max_pivots_(max_pivots) {}

  PhaseResult run_primal() {
    bool bland = opts_.rule == PivotRule::Bland;
    std::size_t degenerate_run = 0;
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t c = 0; c < tab_.cols(); ++c) {
        if (blocked_[c] || !tol_.is_neg(tab_.cost(c))) continue;
        if (bland) {
          enter = c;
          break;
        }
        if (!enter || tab_.cost(c) < tab_.cost(*enter)) enter = c;
      }
      if (!enter) return PhaseResult::Optimal;

      std::optional<std::size_t> leave;
      T best_ratio(0);
      for (std::size_t r = 0; r < tab_.rows(); ++r) {
        const T& a = tab_.at(r, *enter);
        if (!tol_.is_pos(a)) continue;
        T ratio = tab_.rhs(r) / a;
        if (!leave || ratio < best_ratio || (ratio == best_ratio && basis_[r] < basis_[*leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (!leave) return PhaseResult::Unbounded;
      count_pivot();
      degenerate_run = tol_.is_zero(best_ratio) ? degenerate_run + 1 : 0;
      if (!bland && degenerate_run > opts_.degenerate_run_limit) bland = true;
      tab_.pivot(*leave, *enter);
      basis_[*leave] = *enter;
    }
  }

  // Requires a dual feasible tableau (all reduced costs >= 0).
  PhaseResult run_dual() {
    bool bland = opts_.rule == PivotRule::Bland;
    std::size_t degenerate_run = 0;
    for (;;) {
      std::optional<std::size_t> leave;
      for (std::size_t r = 0; r < tab_.rows(); ++r) {
        if (!tol_.is_neg(tab_.rhs(r))) continue;
        if (!leave) {
          leave = r;
        } else if (bland ? basis_[r] < basis_[*leave] : tab_.rhs(r) < tab_.rhs(*leave)) {
          leave = r;
        }
      }
      if (!leave) return PhaseResult::Optimal;

      std::optional<std::size_t> enter;
      T best_ratio(0);
      for (std::size_t c = 0; c < tab_.cols(); ++c) {
        if (blocked_[c]) continue;
        const T& a = tab_.at(*leave, c);
        if (!tol_.is_neg(a)) continue;
        T reduced = tab_.cost(c);
        if (reduced < 0) reduced = T(0);
        T ratio = reduced / -a;
        if (!enter || ratio < best_ratio) {
          enter = c;
          best_ratio = ratio;
        }
      }
      if (!enter) return PhaseResult::Infeasible;
      count_pivot();
      degenerate_run = tol_.is_zero(best_ratio) ? degenerate_run + 1 : 0;
      if (!bland && degenerate_run > opts_.degenerate_run_limit) bland = true;
      tab_.pivot(*leave, *enter);
      basis_[*leave] = *enter;
    }
  }

 private:
  void count_pivot() {
    if (++pivots_ > max_pivots_) {
      throw InternalError("simplex pivot budget of " + std::to_string(max_pivots_) + " exceeded");
    }
  }

  Tableau<T>& tab_;
  std::vector<std::size_t>& basis_;
  std::vector<bool>& blocked_;
  const Tolerance<T>& tol_;
  const SimplexOptions& opts_;
  std::size_t& pivots_;
  std::size_t max_pivots_;
};

}  // namespace detail

/// Solves  min c.x  s.t.  A x <= b,  x >= 0  with a dense tableau simplex.
///
/// Starts from the slack basis. When that basis is primal feasible the primal
/// simplex runs directly; when it is only dual feasible (c >= 0, the case for
/// every LP family generated in this library) the dual simplex runs; otherwise
/// a phase-one with artificial variables precedes the primal simplex.
/// The dual vector is read off the reduced costs of the slack columns.
template <class T>
LpSolution<T> solve(const LinearProgram<T>& lp, const Tolerance<T>& tol, const SimplexOptions& opts = {}) {
  lp.validate();
  const std::size_t n = lp.var_count;
  const std::size_t m = lp.rows.size();

  std::vector<std::size_t> negative_rows;
  for (std::size_t r = 0; r < m; ++r) {
    if (lp.rows[r].rhs < 0) negative_rows.push_back(r);
  }
  const bool dual_feasible_start =
      std::all_of(lp.objective.begin(), lp.objective.end(), [](const T& c) { return c >= 0; });
  const bool use_phase_one = !negative_rows.empty() && !dual_feasible_start;
  const std::size_t artificials = use_phase_one ? negative_rows.size() : 0;
  const std::size_t cols = n + m + artificials;

  detail::Tableau<T> tab(m, cols);
  std::vector<std::size_t> basis(m);
  std::vector<bool> blocked(cols, false);
  std::size_t pivots = 0;
  const std::size_t max_pivots = opts.max_pivots != 0 ? opts.max_pivots : 50 * (m + cols) + 1000;

  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t i = 0; i < n; ++i) tab.at(r, i) = lp.rows[r].coeffs[i];
    tab.at(r, n + r) = T(1);
    tab.rhs(r) = lp.rows[r].rhs;
    basis[r] = n + r;
  }

  detail::SimplexEngine<T> engine(tab, basis, blocked, tol, opts, pivots, max_pivots);
  LpSolution<T> out;

  auto load_objective = [&] {
    for (std::size_t c = 0; c <= cols; ++c) tab.at(m, c) = T(0);
    for (std::size_t i = 0; i < n; ++i) tab.cost(i) = lp.objective[i];
    for (std::size_t r = 0; r < m; ++r) {
      const std::size_t b = basis[r];
      if (b >= n || lp.objective[b] == 0) continue;
      const T cb = lp.objective[b];
      for (std::size_t c = 0; c <= cols; ++c) {
        if (tab.at(r, c) != 0) tab.at(m, c) -= cb * tab.at(r, c);
      }
    }
  };

  if (use_phase_one) {
    for (std::size_t k = 0; k < artificials; ++k) {
      const std::size_t r = negative_rows[k];
      for (std::size_t c = 0; c <= cols; ++c) tab.at(r, c) = -tab.at(r, c);
      const std::size_t a = n + m + k;
      tab.at(r, a) = T(1);
      basis[r] = a;
    }
    for (std::size_t r : negative_rows) {
      for (std::size_t c = 0; c <= cols; ++c) {
        if (c >= n + m && c < cols) continue;
        tab.at(m, c) -= tab.at(r, c);
      }
    }
    if (engine.run_primal() != detail::PhaseResult::Optimal) {
      throw InternalError("phase one cannot be unbounded");
    }
    if (tol.is_pos(-tab.rhs(m))) {
      out.status = LpStatus::Infeasible;
      out.pivots = pivots;
      return out;
    }
    for (std::size_t c = n + m; c < cols; ++c) blocked[c] = true;
    // Drive artificials out of the basis where a structural pivot exists.
    for (std::size_t r = 0; r < m; ++r) {
      if (basis[r] < n + m) continue;
      for (std::size_t c = 0; c < n + m; ++c) {
        if (!tol.is_zero(tab.at(r, c))) {
          tab.pivot(r, c);
          basis[r] = c;
          ++pivots;
          break;
        }
      }
    }
    load_objective();
    if (engine.run_primal() == detail::PhaseResult::Unbounded) {
      out.status = LpStatus::Unbounded;
      out.pivots = pivots;
      return out;
    }
  } else if (!negative_rows.empty()) {
    load_objective();
    if (engine.run_dual() == detail::PhaseResult::Infeasible) {
      out.status = LpStatus::Infeasible;
      out.pivots = pivots;
      return out;
    }
    // A dual-feasible start stays dual feasible; a final primal pass only
    // cleans up reduced costs that drifted below -tol in float mode.
    if (engine.run_primal() == detail::PhaseResult::Unbounded) {
      out.status = LpStatus::Unbounded;
      out.pivots = pivots;
      return out;
    }
  } else {
    load_objective();
    if (engine.run_primal() == detail::PhaseResult::Unbounded) {
      out.status = LpStatus::Unbounded;
      out.pivots = pivots;
      return out;
    }
  }

  out.status = LpStatus::Optimal;
  out.pivots = pivots;
  out.primal.assign(n, T(0));
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] < n) out.primal[basis[r]] = tab.rhs(r);
  }
  out.dual.assign(m, T(0));
  for (std::size_t r = 0; r < m; ++r) out.dual[r] = tab.cost(n + r);
  out.objective = -tab.rhs(m);
  return out;
}

template <class T>
LpSolution<T> solve(const LinearProgram<T>& lp, const ArithmeticMode& mode, const SimplexOptions& opts = {}) {
  return solve(lp, tolerance_for<T>(mode), opts);
}

}  // namespace turnsearch
