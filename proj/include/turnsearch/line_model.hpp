#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "turnsearch/certificate.hpp"
#include "turnsearch/errors.hpp"
#include "turnsearch/linear_program.hpp"
#include "turnsearch/numeric.hpp"
#include "turnsearch/simplex.hpp"
#include "turnsearch/strategy.hpp"

namespace turnsearch {

/// Line search with turn cost d and target competitive ratio c (9 is optimal).
template <class T>
struct LineInstance {
  T d = T(1);
  T c = T(9);

  void validate() const {
    if (!(d > 0)) throw InputError("turn cost d must be positive");
    if (c < 9) throw InputError("competitive ratio c must be at least 9");
  }
};

/// Truncation of the line-search program to its first n constraints.
///
/// Variables are (x_1, ..., x_n, B) and the objective is min B. Row i reads
///   2 x_1 + ... + 2 x_{i-2} + (3 - c) x_{i-1} + 2 x_i + i d <= B
/// and is stored as  ... - B <= -i d.
template <class T>
LinearProgram<T> build_line_lp(const LineInstance<T>& inst, int n) {
  inst.validate();
  if (n < 1) throw InputError("line LP depth must be at least 1");
  const auto vars = static_cast<std::size_t>(n) + 1;
  LinearProgram<T> lp(vars);
  lp.objective[vars - 1] = T(1);
  const T bent = T(3) - inst.c;
  for (int i = 1; i <= n; ++i) {
    std::vector<T> row(vars, T(0));
    for (int k = 1; k <= i - 2; ++k) row[k - 1] = T(2);
    if (i >= 2) row[i - 2] = bent;
    row[i - 1] = T(2);
    row[vars - 1] = T(-1);
    lp.add_row(std::move(row), T(-i) * inst.d);
  }
  return lp;
}

template <class T>
struct LineLpResult {
  int n = 0;
  T B{};
  T lambda{};          // B / d
  std::vector<T> x;    // x_1..x_n
  std::vector<T> y;    // y_1..y_n
  LpSolution<T> solution;
};

template <class T>
LineLpResult<T> solve_line_lp(const LineInstance<T>& inst, int n, const Tolerance<T>& tol,
                              const SimplexOptions& opts = {}) {
  LinearProgram<T> lp = build_line_lp(inst, n);
  LineLpResult<T> res;
  res.n = n;
  res.solution = solve(lp, tol, opts);
  if (!res.solution.optimal()) {
    throw InternalError("line LP of depth " + std::to_string(n) + " solved as " + to_string(res.solution.status));
  }
  res.B = res.solution.objective;
  res.lambda = res.B / inst.d;
  res.x.assign(res.solution.primal.begin(), res.solution.primal.begin() + n);
  res.y = res.solution.dual;
  return res;
}

/// (n, lambda_n) for each requested depth, lambda_n = B_n / d.
template <class T>
std::vector<std::pair<int, T>> lambda_sequence(const LineInstance<T>& inst, const std::vector<int>& sizes,
                                               const Tolerance<T>& tol) {
  std::vector<std::pair<int, T>> out;
  out.reserve(sizes.size());
  for (int n : sizes) out.emplace_back(n, solve_line_lp(inst, n, tol).lambda);
  return out;
}

/// Richardson step 2 L(2n) - L(n) using the largest n for which both n and
/// 2n are present. Error halves when the depth doubles, so this removes the
/// leading error term.
template <class T>
T extrapolate_limit(const std::vector<std::pair<int, T>>& pairs) {
  std::optional<std::pair<int, std::size_t>> best;  // (n, index of 2n entry)
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      if (pairs[j].first == 2 * pairs[i].first && pairs[i].first > 0) {
        if (!best || pairs[i].first > best->first) best = std::make_pair(pairs[i].first, j);
      }
    }
  }
  if (!best) throw InputError("extrapolation needs a pair of depths (n, 2n)");
  const T* small = nullptr;
  for (const auto& p : pairs) {
    if (p.first == best->first) small = &p.second;
  }
  return T(2) * pairs[best->second].second - *small;
}

/// x_i = d (2^i - 1) / 2, i = 1..N. Every line constraint is tight at B = 2d.
template <class T>
SearchStrategy<T> closed_form_line_strategy(const T& d, int N) {
  if (!(d > 0)) throw InputError("turn cost d must be positive");
  if (N < 1) throw InputError("strategy length must be at least 1");
  SearchStrategy<T> s;
  s.m = 2;
  s.d = d;
  s.steps.reserve(static_cast<std::size_t>(N));
  T power(1);
  for (int i = 1; i <= N; ++i) {
    power *= 2;
    s.steps.push_back(d * (power - 1) / 2);
  }
  return s;
}

/// y_j = 2^-j with tails sum_{j>N} y_j = 2^-N and sum_{j>N} j y_j = (N + 2) / 2^N.
template <class T>
DualSequence<T> line_dual_sequence(int N) {
  if (N < 1) throw InputError("dual sequence length must be at least 1");
  DualSequence<T> seq;
  seq.values.reserve(static_cast<std::size_t>(N));
  T y(1);
  for (int j = 1; j <= N; ++j) {
    y /= 2;
    seq.values.push_back(y);
  }
  seq.tail_mass = y;
  seq.tail_weighted = T(N + 2) * y;
  seq.tail_description = "sum_{j>N} 2^-j = 2^-N; sum_{j>N} j 2^-j = (N+2)/2^N";
  return seq;
}

/// Evaluates line row j (1-based) at a strategy: returns B - LHS_j.
template <class T>
T line_row_residual(const std::vector<T>& x, int j, const T& d, const T& c, const T& B) {
  T lhs = T(j) * d;
  for (int k = 1; k <= j - 2; ++k) lhs += T(2) * x[k - 1];
  if (j >= 2) lhs += (T(3) - c) * x[j - 2];
  lhs += T(2) * x[j - 1];
  return B - lhs;
}

/// Checks that x_i = d(2^i - 1)/2 with B = 2d and y_j = 2^-j form an optimal
/// primal/dual pair on the first N constraints, using exact geometric tails
/// for every dual sum that runs past N.
template <class T>
OptimalityCertificate<T> certify_line_optimality(const T& d, int N, const Tolerance<T>& tol) {
  if (!(d > 0)) throw InputError("turn cost d must be positive");
  if (N < 3) throw InputError("line certificate needs N >= 3");
  const T c(9);
  const T B = T(2) * d;
  const SearchStrategy<T> strat = closed_form_line_strategy(d, N);
  const DualSequence<T> dual = line_dual_sequence<T>(N + 1);

  OptimalityCertificate<T> cert;
  cert.primal_objective = B;

  CertificateCheck tight{"constraint tightness at B = 2d"};
  T running(0);  // sum of |terms| for relative comparison
  for (int j = 1; j <= N; ++j) {
    T r = line_row_residual(strat.steps, j, d, c, B);
    running += T(2) * strat.step(static_cast<std::size_t>(j));
    cert.constraint_residuals.push_back(r);
    detail::track(tight, r, running + T(j) * d, tol);
  }
  cert.checks.push_back(tight);

  // Coefficient of x_i in the dual combination: 2 sum_{j>=i} y_j - (c - 1) y_{i+1}.
  CertificateCheck columns{"dual column cancellation"};
  T suffix = dual.tail_mass + dual.y(static_cast<std::size_t>(N + 1));  // sum_{j > N}
  std::vector<T> residuals(static_cast<std::size_t>(N));
  for (int i = N; i >= 1; --i) {
    suffix += dual.y(static_cast<std::size_t>(i));
    T r = T(2) * suffix - (c - T(1)) * dual.y(static_cast<std::size_t>(i + 1));
    residuals[static_cast<std::size_t>(i - 1)] = r;
    detail::track(columns, r, T(2) * suffix, tol);
  }
  cert.dual_column_residuals = std::move(residuals);
  cert.checks.push_back(columns);

  // Coefficient of B: the multipliers must sum to one.
  T mass(0);
  T weighted(0);
  for (int j = 1; j <= N; ++j) {
    mass += dual.y(static_cast<std::size_t>(j));
    weighted += T(j) * dual.y(static_cast<std::size_t>(j));
  }
  const DualSequence<T> window = line_dual_sequence<T>(N);
  cert.mass_residual = T(1) - (mass + window.tail_mass);
  CertificateCheck mass_check{"dual mass equals one"};
  detail::track(mass_check, cert.mass_residual, T(1), tol);
  cert.checks.push_back(mass_check);

  cert.dual_values = window.values;
  cert.dual_objective = d * (weighted + window.tail_weighted);
  CertificateCheck gap{"primal objective equals dual objective"};
  detail::track(gap, cert.primal_objective - cert.dual_objective, B, tol);
  cert.checks.push_back(gap);

  CertificateCheck nonneg{"dual nonnegativity"};
  for (const auto& v : dual.values) {
    if (v < 0) nonneg.passed = false;
  }
  cert.checks.push_back(nonneg);

  CertificateCheck first_step{"first step at least d/2"};
  first_step.passed = tol.le(d / T(2), strat.step(1));
  cert.checks.push_back(first_step);

  cert.conclude();
  return cert;
}

template <class T>
struct TradeoffPoint {
  T c{};
  int n = 0;
  T lower_bound{};   // lambda_n at depth n
  T extrapolated{};  // 2 lambda_n - lambda_{n/2}
};

/// B/d against competitive ratio c: depth-n lower bound plus the Richardson
/// estimate from depths n/2 and n. n must be even.
template <class T>
std::vector<TradeoffPoint<T>> tradeoff_curve(const T& d, const std::vector<T>& c_values, int n,
                                             const Tolerance<T>& tol) {
  if (n < 2 || n % 2 != 0) throw InputError("tradeoff depth must be an even number >= 2");
  std::vector<TradeoffPoint<T>> out;
  out.reserve(c_values.size());
  for (const T& c : c_values) {
    LineInstance<T> inst{d, c};
    inst.validate();
    T half = solve_line_lp(inst, n / 2, tol).lambda;
    T full = solve_line_lp(inst, n, tol).lambda;
    out.push_back({c, n, full, T(2) * full - half});
  }
  return out;
}

}  // namespace turnsearch
