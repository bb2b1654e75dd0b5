#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <type_traits>
#include <vector>

#include "turnsearch/certificate.hpp"
#include "turnsearch/errors.hpp"
#include "turnsearch/linear_program.hpp"
#include "turnsearch/numeric.hpp"
#include "turnsearch/simplex.hpp"
#include "turnsearch/strategy.hpp"

namespace turnsearch {

/// Star search on m rays. The turn cost may be given as an on-ray part d1 and
/// an at-origin part d2; every formula only sees their sum d.
template <class T>
struct StarInstance {
  int m = 2;
  T d = T(1);

  static StarInstance split(int m, const T& d1, const T& d2) {
    if (d1 < 0 || d2 < 0) throw InputError("turn cost parts must be nonnegative");
    return StarInstance{m, d1 + d2};
  }

  void validate() const {
    if (m < 2) throw InputError("star search needs m >= 2 rays, got " + std::to_string(m));
    if (d < 0) throw InputError("turn cost d must be nonnegative");
  }

  /// m^m / (m-1)^(m-1)
  T M() const { return T(m) * num::pow(q(), m - 1); }
  /// m / (m-1), the growth ratio of optimal steps.
  T q() const { return num::ratio<T>(m, m - 1); }
  /// Coefficient of OPT in the optimal guarantee, 1 + 2M.
  T competitive_ratio() const { return T(1) + T(2) * M(); }
};

/// Truncation at depth n: variables (x_1..x_{n+m-1}, B), min B, with the
/// startup row  2 sum_{i<m} x_i + (m-1)d <= B  followed by, for k = 1..n,
///   2 sum_{i<=k+m-1} x_i + (k+m-1)d - 2M x_k <= B.
/// For m = 2 this is exactly the line program of depth n + 1.
template <class T>
LinearProgram<T> build_star_lp(const StarInstance<T>& inst, int n) {
  inst.validate();
  if (n < 1) throw InputError("star LP depth must be at least 1");
  const int m = inst.m;
  const auto steps = static_cast<std::size_t>(n + m - 1);
  const std::size_t vars = steps + 1;
  const T two_m_coeff = T(2) * inst.M();
  LinearProgram<T> lp(vars);
  lp.objective[steps] = T(1);

  std::vector<T> startup(vars, T(0));
  for (int i = 1; i <= m - 1; ++i) startup[i - 1] = T(2);
  startup[steps] = T(-1);
  lp.add_row(std::move(startup), T(-(m - 1)) * inst.d);

  for (int k = 1; k <= n; ++k) {
    std::vector<T> row(vars, T(0));
    for (int i = 1; i <= k + m - 1; ++i) row[i - 1] = T(2);
    row[k - 1] -= two_m_coeff;
    row[steps] = T(-1);
    lp.add_row(std::move(row), T(-(k + m - 1)) * inst.d);
  }
  return lp;
}

template <class T>
struct StarLpResult {
  int n = 0;
  T B{};
  T ratio_to_d{};  // B / d
  LpSolution<T> solution;
};

template <class T>
StarLpResult<T> solve_star_lp(const StarInstance<T>& inst, int n, const Tolerance<T>& tol,
                              const SimplexOptions& opts = {}) {
  if (!(inst.d > 0)) throw InputError("turn cost d must be positive");
  StarLpResult<T> res;
  res.n = n;
  res.solution = solve(build_star_lp(inst, n), tol, opts);
  if (!res.solution.optimal()) {
    throw InternalError("star LP of depth " + std::to_string(n) + " solved as " + to_string(res.solution.status));
  }
  res.B = res.solution.objective;
  res.ratio_to_d = res.B / inst.d;
  return res;
}

/// x_i = d (q^i - 1) / 2 with q = m/(m-1).
template <class T>
SearchStrategy<T> closed_form_star_strategy(const StarInstance<T>& inst, int N) {
  inst.validate();
  if (N < 1) throw InputError("strategy length must be at least 1");
  SearchStrategy<T> s;
  s.m = inst.m;
  s.d = inst.d;
  const T q = inst.q();
  T power(1);
  for (int i = 1; i <= N; ++i) {
    power *= q;
    s.steps.push_back(inst.d * (power - 1) / 2);
  }
  return s;
}

/// B = (M - m) d, identical to m (q^(m-1) - 1) d.
template <class T>
T star_additive_term(const StarInstance<T>& inst) {
  inst.validate();
  return (inst.M() - T(inst.m)) * inst.d;
}

template <class T>
struct StarDualSequence : DualSequence<T> {
  int m = 2;
  T M{};
};

namespace detail {

// y_1..y_last with zeros below index m-1, y_{m-1} = m/M, y_m..y_{2m-2} = 1/M,
// then y_{n+m} = y_{n+m-1} - y_n / M.
template <class T>
std::vector<T> star_dual_values(int m, const T& M, int last) {
  std::vector<T> y(static_cast<std::size_t>(last), T(0));
  auto at = [&](int j) -> T& { return y[static_cast<std::size_t>(j - 1)]; };
  if (m - 1 <= last) at(m - 1) = T(m) / M;
  for (int j = m; j <= std::min(2 * m - 2, last); ++j) at(j) = T(1) / M;
  for (int j = 2 * m - 1; j <= last; ++j) at(j) = at(j - 1) - at(j - m) / M;
  return y;
}

}  // namespace detail

/// Dual multipliers of the star program up to index N >= 2m - 2.
///
/// Tails follow from the recursion: sum_{j>N} y_j = M y_{N+m} and
/// sum_{j>N} j y_j = N M y_{N+m} + M^2 y_{N+2m-1}.
template <class T>
StarDualSequence<T> star_dual_sequence(const StarInstance<T>& inst, int N) {
  inst.validate();
  const int m = inst.m;
  if (N < 2 * m - 2) {
    throw InputError("star dual sequence needs N >= 2m-2 = " + std::to_string(2 * m - 2));
  }
  StarDualSequence<T> seq;
  seq.m = m;
  seq.M = inst.M();
  std::vector<T> all = detail::star_dual_values(m, seq.M, N + 2 * m - 1);
  auto at = [&](int j) -> const T& { return all[static_cast<std::size_t>(j - 1)]; };
  seq.tail_mass = seq.M * at(N + m);
  seq.tail_weighted = T(N) * seq.M * at(N + m) + seq.M * seq.M * at(N + 2 * m - 1);
  all.resize(static_cast<std::size_t>(N));
  seq.values = std::move(all);
  seq.tail_description = "sum_{j>N} y_j = M y_{N+m}; sum_{j>N} j y_j = N M y_{N+m} + M^2 y_{N+2m-1}";
  return seq;
}

/// Closed form for m = 3: y_j = 4 (2^(j-1) + (-1)^j) / 3^(j+1), j >= 2.
template <class T>
T star3_dual_closed_form(int j) {
  if (j < 2) throw InputError("closed form holds for j >= 2");
  T sign = (j % 2 == 0) ? T(1) : T(-1);
  return T(4) * (num::pow(T(2), j - 1) + sign) / num::pow(T(3), j + 1);
}

/// Constraint (n) of the star program evaluated at a strategy.
template <class T>
struct StarRowEvaluation {
  T lhs{};  // 2 sum_{i<=n+m-1} x_i + (n+m-1) d
  T rhs{};  // B + 2M x_n
};

template <class T>
StarRowEvaluation<T> evaluate_star_row(const StarInstance<T>& inst, const std::vector<T>& x, int n,
                                       const std::type_identity_t<T>& B) {
  StarRowEvaluation<T> ev;
  const int last = n + inst.m - 1;
  ev.lhs = T(last) * inst.d;
  for (int i = 1; i <= last; ++i) ev.lhs += T(2) * x[static_cast<std::size_t>(i - 1)];
  ev.rhs = B + T(2) * inst.M() * x[static_cast<std::size_t>(n - 1)];
  return ev;
}

/// Optimality certificate for the closed-form star strategy on constraints
/// (startup, 1..N), with the recursive dual sequence and its tails.
template <class T>
OptimalityCertificate<T> certify_star_optimality(const StarInstance<T>& inst, int N, const Tolerance<T>& tol) {
  inst.validate();
  if (!(inst.d > 0)) throw InputError("turn cost d must be positive");
  const int m = inst.m;
  if (N < 2 * m) throw InputError("star certificate needs N >= 2m = " + std::to_string(2 * m));
  const T M = inst.M();
  const T q = inst.q();
  const T d = inst.d;
  const T B = star_additive_term(inst);
  const int K = N + m - 1;  // label of the last constraint; also the number of step variables
  const SearchStrategy<T> strat = closed_form_star_strategy(inst, K);

  OptimalityCertificate<T> cert;
  cert.primal_objective = B;

  // (a) every constraint tight at the closed form.
  CertificateCheck tight{"constraint tightness at B = (M-m)d"};
  CertificateCheck closed{"both sides equal (q^(n+m) - q)/(q-1) d"};
  T startup = T(m - 1) * d;
  for (int i = 1; i <= m - 1; ++i) startup += T(2) * strat.step(static_cast<std::size_t>(i));
  cert.constraint_residuals.push_back(B - startup);
  detail::track(tight, B - startup, startup, tol);
  T q_power = num::pow(q, m);  // q^(n+m) for n = 0
  for (int n = 1; n <= N; ++n) {
    q_power *= q;
    const StarRowEvaluation<T> ev = evaluate_star_row(inst, strat.steps, n, B);
    const T target = (q_power - q) / (q - T(1)) * d;
    cert.constraint_residuals.push_back(ev.rhs - ev.lhs);
    detail::track(tight, ev.rhs - ev.lhs, ev.lhs, tol);
    detail::track(closed, ev.lhs - target, target, tol);
    detail::track(closed, ev.rhs - target, target, tol);
  }
  cert.checks.push_back(tight);
  cert.checks.push_back(closed);

  // (b) nonnegative duals whose window mass stays at most one.
  const StarDualSequence<T> window = star_dual_sequence(inst, K);
  const std::vector<T> y = detail::star_dual_values(m, M, K + m);
  auto at = [&](int j) -> const T& { return y[static_cast<std::size_t>(j - 1)]; };
  cert.dual_values = window.values;
  const T mass = window.partial_sum();
  const T weighted = window.partial_weighted_sum();
  CertificateCheck nonneg{"dual nonnegativity and window mass <= 1"};
  for (const auto& v : y) {
    if (v < 0) {
      nonneg.passed = false;
      nonneg.worst = std::max(nonneg.worst, -num::to_double(v));
    }
  }
  if (!tol.le(mass, T(1))) nonneg.passed = false;
  cert.checks.push_back(nonneg);

  // (c) exact tails versus a geometric envelope with ratio (m-1)/m.
  TailEnvelope<T> env;
  env.ratio = num::ratio<T>(m - 1, m);
  T r_power = num::pow(env.ratio, m - 1);
  env.constant = T(0);
  for (int j = m - 1; j <= K; ++j) {
    T scaled = at(j) / r_power;
    if (scaled > env.constant) env.constant = scaled;
    r_power *= env.ratio;
  }
  // r_power == ratio^(K+1) here
  const T one_minus = T(1) - env.ratio;
  env.tail_mass = window.tail_mass;
  env.tail_weighted = window.tail_weighted;
  env.mass_bound = env.constant * r_power / one_minus;
  env.weighted_bound = env.constant * r_power * (T(K + 1) - T(K) * env.ratio) / (one_minus * one_minus);

  CertificateCheck mass_env{"1 - partial mass within geometric envelope"};
  const T mass_gap = T(1) - mass;
  mass_env.passed = tol.le(T(0), mass_gap) && tol.le(mass_gap, env.mass_bound);
  mass_env.worst = std::abs(num::to_double(mass_gap));
  cert.checks.push_back(mass_env);

  CertificateCheck weighted_env{"(M-m) - partial weighted sum within geometric envelope"};
  const T weighted_gap = (M - T(m)) - weighted;
  weighted_env.passed = tol.le(T(0), weighted_gap) && tol.le(weighted_gap, env.weighted_bound);
  weighted_env.worst = std::abs(num::to_double(weighted_gap));
  cert.checks.push_back(weighted_env);

  CertificateCheck tails{"recursion tails within envelope"};
  tails.passed = tol.le(T(0), env.tail_mass) && tol.le(env.tail_mass, env.mass_bound) &&
                 tol.le(T(0), env.tail_weighted) && tol.le(env.tail_weighted, env.weighted_bound);
  cert.checks.push_back(tails);
  cert.envelope = env;

  cert.mass_residual = T(1) - (mass + window.tail_mass);
  CertificateCheck mass_check{"dual mass equals one"};
  detail::track(mass_check, cert.mass_residual, T(1), tol);
  cert.checks.push_back(mass_check);

  // (d) complementary slackness on every step column: 2 sum_{j>=i} y_j = 2M y_{i+m-1}.
  CertificateCheck columns{"dual column cancellation"};
  cert.dual_column_residuals.assign(static_cast<std::size_t>(K), T(0));
  T suffix = window.tail_mass;
  for (int i = K; i >= 1; --i) {
    if (i >= m - 1) suffix += at(i);
    T r = T(2) * suffix - T(2) * M * at(i + m - 1);
    cert.dual_column_residuals[static_cast<std::size_t>(i - 1)] = r;
    detail::track(columns, r, T(2) * suffix, tol);
  }
  cert.checks.push_back(columns);

  cert.dual_objective = d * (weighted + window.tail_weighted);
  CertificateCheck gap{"primal objective equals dual objective"};
  detail::track(gap, cert.primal_objective - cert.dual_objective, B, tol);
  cert.checks.push_back(gap);

  cert.conclude();
  return cert;
}

}  // namespace turnsearch
