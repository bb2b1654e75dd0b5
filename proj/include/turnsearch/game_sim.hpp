#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "turnsearch/errors.hpp"
#include "turnsearch/numeric.hpp"
#include "turnsearch/strategy.hpp"

namespace turnsearch {

template <class T>
struct HiderPlacement {
  int ray = 0;
  T distance{};

  friend bool operator==(const HiderPlacement&, const HiderPlacement&) = default;
};

// Cost model: one combined charge d per completed excursion (tip reversal and
// ray switch folded together), nothing for the excursion that finds the hider.
template <class T>
struct GameOutcome {
  bool found = false;
  T travel{};
  long turns = 0;
  T turn_cost_total{};
  T total_cost{};
  T opt{};
  std::optional<std::size_t> excursion_found;  // 1-based step index
};

template <class T>
T opt_cost(const HiderPlacement<T>& hider) {
  return hider.distance;
}

/// Plays the strategy against a fixed hider. Discovery happens on contact
/// during an outbound leg. If the finite prefix never reaches the hider the
/// outcome is not found and carries the cost of the whole prefix.
template <class T>
GameOutcome<T> simulate(const SearchStrategy<T>& strategy, const HiderPlacement<T>& hider) {
  if (strategy.steps.empty()) throw InputError("cannot simulate an empty strategy");
  strategy.validate();
  if (hider.ray < 0 || hider.ray >= strategy.m) {
    throw InputError("hider ray " + std::to_string(hider.ray) + " outside [0, " + std::to_string(strategy.m) + ")");
  }
  if (!(hider.distance > 0)) throw InputError("hider distance must be positive");

  GameOutcome<T> out;
  out.opt = opt_cost(hider);
  T swept(0);  // sum of completed step lengths
  for (std::size_t i = 1; i <= strategy.size(); ++i) {
    const T& x = strategy.step(i);
    if (strategy.ray_of_step(i) == hider.ray && x >= hider.distance) {
      out.found = true;
      out.excursion_found = i;
      out.turns = static_cast<long>(i - 1);
      out.travel = T(2) * swept + hider.distance;
      out.turn_cost_total = T(out.turns) * strategy.d;
      out.total_cost = out.travel + out.turn_cost_total;
      return out;
    }
    swept += x;
  }
  out.turns = static_cast<long>(strategy.size());
  out.travel = T(2) * swept;
  out.turn_cost_total = T(out.turns) * strategy.d;
  out.total_cost = out.travel + out.turn_cost_total;
  return out;
}

/// Largest admissible probe offset: the smallest gap x_{i+m} - x_i between
/// consecutive visits of a ray. Empty when no ray is visited twice.
template <class T>
std::optional<T> max_probe_offset(const SearchStrategy<T>& strategy) {
  std::optional<T> gap;
  const auto m = static_cast<std::size_t>(strategy.m);
  for (std::size_t i = 1; i + m <= strategy.size(); ++i) {
    T g = strategy.step(i + m) - strategy.step(i);
    if (!gap || g < *gap) gap = g;
  }
  return gap;
}

/// Placements just beyond each turning point (x_i + eps on the ray of step i)
/// followed by one near-origin probe at distance eps on every ray.
template <class T>
std::vector<HiderPlacement<T>> adversarial_hiders(const SearchStrategy<T>& strategy, const T& eps) {
  if (!(eps > 0)) throw InputError("probe offset epsilon must be positive");
  strategy.validate();
  if (auto gap = max_probe_offset(strategy); gap && !(eps < *gap)) {
    throw InputError("probe offset epsilon too large; it must stay below " + num::to_string(*gap));
  }
  std::vector<HiderPlacement<T>> out;
  out.reserve(strategy.size() + static_cast<std::size_t>(strategy.m));
  for (std::size_t i = 1; i <= strategy.size(); ++i) {
    out.push_back({strategy.ray_of_step(i), strategy.step(i) + eps});
  }
  for (int r = 0; r < strategy.m; ++r) out.push_back({r, eps});
  return out;
}

enum class ProbeKind { BeyondTip, NearOrigin, Random };

inline const char* to_string(ProbeKind k) {
  switch (k) {
    case ProbeKind::BeyondTip:
      return "beyond_tip";
    case ProbeKind::NearOrigin:
      return "near_origin";
    case ProbeKind::Random:
      return "random";
  }
  return "unknown";
}

template <class T>
struct ProbeResult {
  ProbeKind kind = ProbeKind::BeyondTip;
  std::size_t tip = 0;  // turning point index for beyond-tip probes
  HiderPlacement<T> hider;
  GameOutcome<T> outcome;
  T slack{};  // total_cost - c * opt - B
};

template <class T>
struct GuaranteeAudit {
  T ratio_coefficient{};
  T additive{};
  T epsilon{};
  T worst_slack{};
  HiderPlacement<T> argmax;
  std::size_t argmax_index = 0;
  std::vector<ProbeResult<T>> probes;

  bool holds() const { return worst_slack <= 0; }
};

/// Checks  cost <= c * OPT + B  on every adversarial probe the prefix can
/// resolve (beyond-tip probes whose ray is visited again, near-origin probes)
/// plus extra_probes seeded random placements inside the covered range.
template <class T>
GuaranteeAudit<T> audit_guarantee(const SearchStrategy<T>& strategy, const T& c, const T& B, const T& eps,
                                  int extra_probes = 0, std::uint64_t seed = 0) {
  if (extra_probes < 0) throw InputError("extra probe count must be nonnegative");
  const std::vector<HiderPlacement<T>> hiders = adversarial_hiders(strategy, eps);
  const std::size_t N = strategy.size();
  const auto m = static_cast<std::size_t>(strategy.m);
  if (N < m) throw AuditError("strategy prefix too short: every ray needs at least one step");

  GuaranteeAudit<T> audit;
  audit.ratio_coefficient = c;
  audit.additive = B;
  audit.epsilon = eps;

  auto evaluate = [&](ProbeKind kind, std::size_t tip, const HiderPlacement<T>& h) {
    ProbeResult<T> pr;
    pr.kind = kind;
    pr.tip = tip;
    pr.hider = h;
    pr.outcome = simulate(strategy, h);
    if (!pr.outcome.found) {
      throw AuditError("probe on ray " + std::to_string(h.ray) + " at distance " + num::to_string(h.distance) +
                       " is not reached; strategy prefix too short");
    }
    pr.slack = pr.outcome.total_cost - c * pr.outcome.opt - B;
    audit.probes.push_back(std::move(pr));
  };

  for (std::size_t i = 1; i + m <= N; ++i) evaluate(ProbeKind::BeyondTip, i, hiders[i - 1]);
  for (std::size_t r = 0; r < m; ++r) evaluate(ProbeKind::NearOrigin, 0, hiders[N + r]);

  if (extra_probes > 0) {
    std::vector<T> reach(m, T(0));
    for (std::size_t i = 1; i <= N; ++i) {
      auto r = static_cast<std::size_t>(strategy.ray_of_step(i));
      if (strategy.step(i) > reach[r]) reach[r] = strategy.step(i);
    }
    constexpr std::int64_t grid = std::int64_t{1} << 20;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick_ray(0, strategy.m - 1);
    std::uniform_int_distribution<std::int64_t> pick_unit(1, grid);
    for (int k = 0; k < extra_probes; ++k) {
      int ray = pick_ray(rng);
      std::int64_t unit = pick_unit(rng);
      if (!(reach[static_cast<std::size_t>(ray)] > 0)) continue;
      T dist = reach[static_cast<std::size_t>(ray)] * num::ratio<T>(static_cast<long>(unit), static_cast<long>(grid));
      evaluate(ProbeKind::Random, 0, {ray, dist});
    }
  }

  // Lowest probe index wins ties.
  for (std::size_t k = 0; k < audit.probes.size(); ++k) {
    if (k == 0 || audit.probes[k].slack > audit.worst_slack) {
      audit.worst_slack = audit.probes[k].slack;
      audit.argmax = audit.probes[k].hider;
      audit.argmax_index = k;
    }
  }
  return audit;
}

/// Violation LHS - B of the guarantee constraint a beyond-tip probe at turning
/// point i tests, for competitive coefficient c:
///   2 sum_{j<=i+m-1} x_j + (i+m-1) d + (1 - c) x_i - B.
template <class T>
T beyond_tip_violation(const SearchStrategy<T>& strategy, std::size_t i, const T& c, const T& B) {
  const std::size_t last = i + static_cast<std::size_t>(strategy.m) - 1;
  if (last > strategy.size()) throw InputError("turning point has no later visit in this prefix");
  T lhs = T(static_cast<long>(last)) * strategy.d;
  for (std::size_t j = 1; j <= last; ++j) lhs += T(2) * strategy.step(j);
  lhs += (T(1) - c) * strategy.step(i);
  return lhs - B;
}

}  // namespace turnsearch
