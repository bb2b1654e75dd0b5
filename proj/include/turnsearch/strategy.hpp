#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "turnsearch/errors.hpp"
#include "turnsearch/numeric.hpp"

namespace turnsearch {

/// A cyclic search strategy: step i (1-based) explores ray (i - 1) mod m out
/// to distance steps[i - 1] and returns to the origin.
template <class T>
struct SearchStrategy {
  int m = 2;
  T d{};
  std::vector<T> steps;

  std::size_t size() const { return steps.size(); }
  const T& step(std::size_t i) const { return steps.at(i - 1); }
  int ray_of_step(std::size_t i) const { return static_cast<int>((i - 1) % static_cast<std::size_t>(m)); }

  void validate() const {
    if (m < 2) throw InputError("a strategy needs at least two rays");
    if (d < 0) throw InputError("turn cost must be nonnegative");
    for (const auto& x : steps) {
      if (x < 0) throw InputError("step lengths must be nonnegative");
    }
  }

  bool strictly_increasing() const {
    for (std::size_t i = 1; i < steps.size(); ++i) {
      if (!(steps[i - 1] < steps[i])) return false;
    }
    return !steps.empty() && steps.front() > 0;
  }

  friend bool operator==(const SearchStrategy&, const SearchStrategy&) = default;
};

/// Prefix of dual multipliers y_1..y_N with closed-form tail sums beyond N.
template <class T>
struct DualSequence {
  std::vector<T> values;  // values[j - 1] = y_j
  T tail_mass{};          // sum_{j > N} y_j
  T tail_weighted{};      // sum_{j > N} j y_j
  std::string tail_description;

  std::size_t size() const { return values.size(); }
  const T& y(std::size_t j) const { return values.at(j - 1); }

  T partial_sum() const {
    T s(0);
    for (const auto& v : values) s += v;
    return s;
  }
  T partial_weighted_sum() const {
    T s(0);
    for (std::size_t j = 0; j < values.size(); ++j) s += T(static_cast<long>(j + 1)) * values[j];
    return s;
  }
};

}  // namespace turnsearch
