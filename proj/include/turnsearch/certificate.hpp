#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "turnsearch/numeric.hpp"

namespace turnsearch {

struct CertificateCheck {
  std::string name;
  bool passed = true;
  double worst = 0.0;  // largest violation seen (0 when exact)
};

enum class Verdict { Certified, Failed };

/// Geometric bound on dual tails: y_j <= constant * ratio^j beyond the window.
template <class T>
struct TailEnvelope {
  T ratio{};
  T constant{};
  T tail_mass{};          // exact sum_{j > K} y_j
  T mass_bound{};         // constant * ratio^(K+1) / (1 - ratio)
  T tail_weighted{};      // exact sum_{j > K} j y_j
  T weighted_bound{};     // constant * ratio^(K+1) ((K+1) - K ratio) / (1 - ratio)^2
};

/// Primal/dual optimality evidence for a closed-form strategy, evaluated on a
/// finite window of constraints with analytic tails for the dual sums.
template <class T>
struct OptimalityCertificate {
  std::vector<T> constraint_residuals;   // B - LHS per constraint, in row order
  std::vector<T> dual_column_residuals;  // sum_j a_ij y_j per step variable x_i
  T mass_residual{};                     // 1 - sum_j y_j (coefficient of B)
  std::vector<T> dual_values;            // y_1..y_K over the checked window
  T primal_objective{};
  T dual_objective{};
  std::optional<TailEnvelope<T>> envelope;
  std::vector<CertificateCheck> checks;
  Verdict verdict = Verdict::Failed;
  std::string reason;

  bool certified() const { return verdict == Verdict::Certified; }

  void add_check(std::string name, bool passed, double worst = 0.0) {
    checks.push_back({std::move(name), passed, worst});
  }

  // Sets the verdict from the recorded checks; the first failing check names the reason.
  void conclude() {
    auto bad = std::find_if(checks.begin(), checks.end(), [](const CertificateCheck& c) { return !c.passed; });
    if (bad == checks.end()) {
      verdict = Verdict::Certified;
      reason.clear();
    } else {
      verdict = Verdict::Failed;
      reason = bad->name + " violated (worst " + num::format_double(bad->worst) + ")";
    }
  }
};

namespace detail {

// Exact zero in rational mode; |v| <= tol * max(1, scale) otherwise.
template <class T>
bool near_zero(const std::type_identity_t<T>& v, const std::type_identity_t<T>& scale, const Tolerance<T>& tol) {
  if constexpr (is_rational_v<T>) {
    (void)scale;
    (void)tol;
    return v == 0;
  } else {
    T bound = tol.tol * std::max(T(1), scale);
    return v <= bound && v >= -bound;
  }
}

// Folds a residual into a running check (passed flag and worst magnitude).
template <class T>
void track(CertificateCheck& check, const std::type_identity_t<T>& residual, const std::type_identity_t<T>& scale,
           const Tolerance<T>& tol) {
  if (!near_zero(residual, scale, tol)) check.passed = false;
  double mag = std::abs(num::to_double(residual));
  if (mag > check.worst) check.worst = mag;
}

}  // namespace detail
}  // namespace turnsearch
