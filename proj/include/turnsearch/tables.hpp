#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "turnsearch/line_model.hpp"
#include "turnsearch/numeric.hpp"
#include "turnsearch/star_model.hpp"

namespace turnsearch::tables {

inline constexpr int kTableColumns = 5;

/// Default depths of the line-search reference table.
inline std::vector<int> table1_sizes() { return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 20, 30, 40, 50, 100, 200, 400}; }

/// One row of the line-search table: lambda_n and the first five primal and
/// dual values (fewer when n < 5).
template <class T>
struct Table1Row {
  int n = 0;
  T lambda{};
  std::vector<T> x;
  std::vector<T> y;
};

template <class T>
Table1Row<T> table1_row(int n, const T& d, const Tolerance<T>& tol) {
  LineInstance<T> inst{d, T(9)};
  LineLpResult<T> res = solve_line_lp(inst, n, tol);
  Table1Row<T> row;
  row.n = n;
  row.lambda = res.lambda;
  const auto cols = static_cast<std::size_t>(std::min(n, kTableColumns));
  // Primal values scale with d; the table reports them per unit turn cost.
  for (std::size_t i = 0; i < cols; ++i) row.x.push_back(res.x[i] / d);
  for (std::size_t i = 0; i < cols && i < res.y.size(); ++i) row.y.push_back(res.y[i]);
  return row;
}

inline std::string table1_header() {
  std::string h = "n,lambda,lambda_trunc4";
  for (int i = 1; i <= kTableColumns; ++i) h += ",x" + std::to_string(i) + "_trunc4";
  for (int i = 1; i <= kTableColumns; ++i) h += ",y" + std::to_string(i) + "_trunc4";
  for (int i = 1; i <= kTableColumns; ++i) h += ",x" + std::to_string(i);
  for (int i = 1; i <= kTableColumns; ++i) h += ",y" + std::to_string(i);
  return h;
}

template <class T>
std::string table1_csv_line(const Table1Row<T>& row) {
  auto cells = [](const std::vector<T>& v, bool truncated) {
    std::string s;
    for (std::size_t i = 0; i < static_cast<std::size_t>(kTableColumns); ++i) {
      s += ',';
      if (i < v.size()) s += truncated ? num::truncate4(v[i]) : num::format_fixed(num::to_double(v[i]), 6);
    }
    return s;
  };
  std::string line = std::to_string(row.n) + "," + num::format_fixed(num::to_double(row.lambda), 6) + "," +
                     num::truncate4(row.lambda);
  line += cells(row.x, true);
  line += cells(row.y, true);
  line += cells(row.x, false);
  line += cells(row.y, false);
  return line;
}

template <class T>
void write_lambda_csv(std::ostream& os, const std::vector<std::pair<int, T>>& seq) {
  os << "n,lambda,lambda_trunc4\n";
  for (const auto& [n, lambda] : seq) {
    os << n << ',' << num::format_fixed(num::to_double(lambda), 6) << ',' << num::truncate4(lambda) << '\n';
  }
}

template <class T>
void write_tradeoff_csv(std::ostream& os, const std::vector<TradeoffPoint<T>>& points) {
  os << "c,n,lower_bound,extrapolated,lower_bound_trunc4\n";
  for (const auto& p : points) {
    os << num::format_fixed(num::to_double(p.c), 6) << ',' << p.n << ','
       << num::format_fixed(num::to_double(p.lower_bound), 6) << ','
       << num::format_fixed(num::to_double(p.extrapolated), 6) << ',' << num::truncate4(p.lower_bound) << '\n';
  }
}

template <class T>
struct StarConvergenceRow {
  int m = 0;
  int n = 0;
  T ratio_to_d{};
  std::optional<T> extrapolated;  // 2 B_n - B_{n/2} when n/2 was also solved
  T closed_form_limit{};
};

/// B_n/d of the star program at each depth, with the Richardson estimate on
/// every row whose half depth is also in the list.
template <class T>
std::vector<StarConvergenceRow<T>> star_convergence(const StarInstance<T>& inst, const std::vector<int>& sizes,
                                                    const Tolerance<T>& tol) {
  std::vector<std::pair<int, T>> solved;
  for (int n : sizes) solved.emplace_back(n, solve_star_lp(inst, n, tol).ratio_to_d);
  const T limit = star_additive_term(StarInstance<T>{inst.m, T(1)});
  std::vector<StarConvergenceRow<T>> rows;
  for (const auto& [n, value] : solved) {
    StarConvergenceRow<T> row{inst.m, n, value, std::nullopt, limit};
    for (const auto& [h, half] : solved) {
      if (2 * h == n) row.extrapolated = T(2) * value - half;
    }
    rows.push_back(row);
  }
  return rows;
}

template <class T>
void write_star_convergence_csv(std::ostream& os, const std::vector<StarConvergenceRow<T>>& rows) {
  os << "m,n,B_over_d,extrapolated,closed_form_limit\n";
  for (const auto& r : rows) {
    os << r.m << ',' << r.n << ',' << num::format_fixed(num::to_double(r.ratio_to_d), 6) << ',';
    if (r.extrapolated) os << num::format_fixed(num::to_double(*r.extrapolated), 6);
    os << ',' << num::format_fixed(num::to_double(r.closed_form_limit), 6) << '\n';
  }
}

template <class T>
void write_dual_sequence_csv(std::ostream& os, const DualSequence<T>& seq, int first_index = 1) {
  os << "j,y_decimal,y_exact\n";
  for (std::size_t j = static_cast<std::size_t>(first_index); j <= seq.size(); ++j) {
    const T& v = seq.y(j);
    os << j << ',' << num::format_double(num::to_double(v)) << ',';
    if constexpr (is_rational_v<T>) os << v.get_str();
    os << '\n';
  }
}

}  // namespace turnsearch::tables
