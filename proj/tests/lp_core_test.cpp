#include <gtest/gtest.h>

#include <random>

#include "turnsearch/io.hpp"
#include "turnsearch/turnsearch.hpp"

namespace ts = turnsearch;
using ts::Rational;

namespace {

const ts::Tolerance<Rational> kExact{};
const ts::Tolerance<double> kFloat{1e-9};

ts::LinearProgram<Rational> line_lp(int n, Rational d = 1) { return ts::build_line_lp(ts::LineInstance<Rational>{d, 9}, n); }

}  // namespace

TEST(Simplex, SingleLineRow) {
  auto sol = ts::solve(line_lp(1), kExact);
  ASSERT_TRUE(sol.optimal());
  EXPECT_EQ(sol.objective, 1);
  EXPECT_EQ(sol.primal[0], 0);
}

TEST(Simplex, ZeroObjective) {
  ts::LinearProgram<double> lp(1);
  lp.objective[0] = 1.0;
  lp.add_row({-1.0}, 0.0);
  auto sol = ts::solve(lp, kFloat);
  ASSERT_TRUE(sol.optimal());
  EXPECT_EQ(sol.objective, 0.0);
  EXPECT_EQ(sol.primal[0], 0.0);
}

TEST(Simplex, DepthTwoPrimalAndDual) {
  auto sol = ts::solve(line_lp(2), kExact);
  ASSERT_TRUE(sol.optimal());
  EXPECT_EQ(sol.objective, Rational(5, 4));
  EXPECT_EQ(sol.primal[0], Rational(1, 8));
  EXPECT_EQ(sol.dual, (std::vector<Rational>{Rational(3, 4), Rational(1, 4)}));
}

TEST(Simplex, SmallDepthsExactFractions) {
  EXPECT_EQ(ts::solve(line_lp(3), kExact).objective, Rational(17, 12));
  EXPECT_EQ(ts::solve(line_lp(4), kExact).objective, Rational(49, 32));
}

TEST(Simplex, FloatAndExactAgreeAcrossPivotRules) {
  for (auto rule : {ts::PivotRule::Bland, ts::PivotRule::DantzigWithBlandFallback}) {
    ts::SimplexOptions opts;
    opts.rule = rule;
    for (int n = 1; n <= 25; ++n) {
      auto exact = ts::solve(line_lp(n), kExact, opts);
      auto approx = ts::solve(ts::convert_lp<double>(line_lp(n)), kFloat, opts);
      ASSERT_TRUE(exact.optimal());
      ASSERT_TRUE(approx.optimal());
      EXPECT_NEAR(approx.objective, exact.objective.get_d(), 1e-12) << "n=" << n;
    }
  }
}

TEST(Simplex, InfeasibleProgram) {
  // x1 <= -1 with x1 >= 0
  ts::LinearProgram<Rational> lp(1);
  lp.objective[0] = 1;
  lp.add_row({Rational(1)}, Rational(-1));
  EXPECT_EQ(ts::solve(lp, kExact).status, ts::LpStatus::Infeasible);
}

TEST(Simplex, UnboundedProgram) {
  // min -x1 with x1 - x2 <= 1
  ts::LinearProgram<double> lp(2);
  lp.objective = {-1.0, 0.0};
  lp.add_row({1.0, -1.0}, 1.0);
  EXPECT_EQ(ts::solve(lp, kFloat).status, ts::LpStatus::Unbounded);
}

TEST(Simplex, MixedSignsNeedPhaseOne) {
  // min x1 - x2  s.t.  -x1 - x2 <= -2,  x2 <= 3,  x1 - x2 <= -1
  ts::LinearProgram<Rational> lp(2);
  lp.objective = {Rational(1), Rational(-1)};
  lp.add_row({Rational(-1), Rational(-1)}, Rational(-2));
  lp.add_row({Rational(0), Rational(1)}, Rational(3));
  lp.add_row({Rational(1), Rational(-1)}, Rational(-1));
  auto sol = ts::solve(lp, kExact);
  ASSERT_TRUE(sol.optimal());
  EXPECT_EQ(sol.objective, -3);
  EXPECT_EQ(sol.primal[1], 3);
  EXPECT_TRUE(ts::check_optimality(lp, sol, kExact).ok());
}

TEST(Simplex, DimensionMismatchIsInputError) {
  ts::LinearProgram<double> lp(2);
  lp.add_row({1.0}, 1.0);
  EXPECT_THROW(ts::solve(lp, kFloat), ts::InputError);
  ts::LinearProgram<double> empty(2);
  EXPECT_THROW(ts::solve(empty, kFloat), ts::InputError);
  ts::LinearProgram<double> bad(1);
  bad.add_row({std::numeric_limits<double>::infinity()}, 1.0);
  EXPECT_THROW(ts::solve(bad, kFloat), ts::InputError);
}

TEST(Simplex, PivotBudgetIsInternalError) {
  ts::SimplexOptions opts;
  opts.max_pivots = 1;
  EXPECT_THROW(ts::solve(line_lp(8), kExact, opts), ts::InternalError);
}

TEST(Simplex, DegenerateProgramTerminatesUnderBland) {
  // Classic cycling example for the largest-coefficient rule.
  ts::LinearProgram<Rational> lp(4);
  lp.objective = {Rational(-10), Rational(57), Rational(9), Rational(24)};
  lp.add_row({Rational(1, 2), Rational(-11, 2), Rational(-5, 2), Rational(9)}, 0);
  lp.add_row({Rational(1, 2), Rational(-3, 2), Rational(-1, 2), Rational(1)}, 0);
  lp.add_row({Rational(1), Rational(0), Rational(0), Rational(0)}, 1);
  for (auto rule : {ts::PivotRule::Bland, ts::PivotRule::DantzigWithBlandFallback}) {
    ts::SimplexOptions opts;
    opts.rule = rule;
    auto sol = ts::solve(lp, kExact, opts);
    ASSERT_TRUE(sol.optimal());
    EXPECT_EQ(sol.objective, -1);
  }
}

TEST(Simplex, DualityHoldsOnGeneratedFamilies) {
  for (int n : {1, 2, 5, 17, 40, 100}) {
    auto lp = ts::convert_lp<double>(line_lp(n));
    auto sol = ts::solve(lp, kFloat);
    auto rep = ts::check_optimality(lp, sol, kFloat);
    EXPECT_TRUE(rep.ok()) << "line n=" << n;
    EXPECT_LE(std::abs(sol.objective - ts::dual_objective(lp, sol.dual)), 1e-9 * std::max(1.0, sol.objective));
  }
  for (int m = 3; m <= 6; ++m) {
    auto lp = ts::build_star_lp(ts::StarInstance<double>{m, 1.0}, 80);
    auto sol = ts::solve(lp, kFloat);
    EXPECT_TRUE(ts::check_optimality(lp, sol, kFloat).ok()) << "star m=" << m;
  }
}

TEST(Simplex, ExactComplementarySlackness) {
  for (int n : {3, 9, 30}) {
    auto lp = line_lp(n);
    auto sol = ts::solve(lp, kExact);
    for (std::size_t r = 0; r < lp.rows.size(); ++r) {
      EXPECT_EQ(sol.dual[r] * (lp.rows[r].rhs - lp.row_activity(r, sol.primal)), 0);
    }
    EXPECT_EQ(sol.objective, ts::dual_objective(lp, sol.dual));
  }
}

TEST(Simplex, RandomFeasibleProgramsSatisfyOptimality) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<int> pos(1, 6);
  int solved = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t vars = 2 + trial % 4;
    ts::LinearProgram<Rational> lp(vars);
    for (auto& c : lp.objective) c = coef(rng);
    for (std::size_t r = 0; r < vars + 1; ++r) {
      std::vector<Rational> row(vars);
      for (auto& v : row) v = coef(rng);
      lp.add_row(row, Rational(coef(rng)));
    }
    // Box rows keep every program bounded.
    for (std::size_t j = 0; j < vars; ++j) {
      std::vector<Rational> row(vars, Rational(0));
      row[j] = 1;
      lp.add_row(row, Rational(pos(rng)));
    }
    auto sol = ts::solve(lp, kExact);
    ASSERT_NE(sol.status, ts::LpStatus::Unbounded);
    if (!sol.optimal()) continue;
    ++solved;
    EXPECT_TRUE(ts::check_optimality(lp, sol, kExact).ok()) << "trial " << trial;
    auto fsol = ts::solve(ts::convert_lp<double>(lp), kFloat);
    ASSERT_TRUE(fsol.optimal());
    EXPECT_NEAR(fsol.objective, sol.objective.get_d(), 1e-9);
  }
  EXPECT_GT(solved, 10);
}

TEST(EqualityOracle, AgreesWithSimplexUpToDepthTwenty) {
  for (int n = 1; n <= 20; ++n) {
    auto lp = line_lp(n);
    auto oracle = ts::solve_equality_oracle(lp, kExact);
    auto sol = ts::solve(lp, kExact);
    EXPECT_EQ(oracle.objective, sol.objective) << "n=" << n;
    EXPECT_EQ(oracle.primal, sol.primal) << "n=" << n;
    EXPECT_EQ(oracle.dual, sol.dual) << "n=" << n;
  }
}

TEST(EqualityOracle, DepthTenFloat) {
  auto sol = ts::solve_equality_oracle(ts::convert_lp<double>(line_lp(10)), kFloat);
  EXPECT_EQ(ts::num::truncate4(sol.objective), "1.8001");
}

TEST(EqualityOracle, SingularSystem) {
  ts::LinearProgram<Rational> lp(2);
  lp.objective = {Rational(1), Rational(1)};
  lp.add_row({Rational(-1), Rational(-2)}, -2);
  lp.add_row({Rational(-2), Rational(-4)}, -4);
  EXPECT_THROW(ts::solve_equality_oracle(lp, kExact), ts::OracleNotApplicable);
}

TEST(EqualityOracle, NonSquareSystem) {
  ts::LinearProgram<Rational> lp(2);
  lp.objective = {Rational(1), Rational(1)};
  lp.add_row({Rational(-1), Rational(-1)}, -1);
  EXPECT_THROW(ts::solve_equality_oracle(lp, kExact), ts::OracleNotApplicable);
}

TEST(LpJson, RoundTripPreservesPrograms) {
  for (int n : {1, 4, 12}) {
    auto lp = line_lp(n, Rational(3, 7));
    EXPECT_EQ(ts::io::lp_from_json<Rational>(ts::io::lp_to_json(lp)), lp);
    auto flp = ts::convert_lp<double>(lp);
    EXPECT_EQ(ts::io::lp_from_json<double>(ts::io::lp_to_json(flp)), flp);
  }
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> v(-1000, 1000);
  for (int trial = 0; trial < 20; ++trial) {
    ts::LinearProgram<Rational> lp(3);
    for (auto& c : lp.objective) c = ts::num::ratio<Rational>(v(rng), 1 + std::abs(v(rng)));
    for (int r = 0; r < 4; ++r) {
      lp.add_row({ts::num::ratio<Rational>(v(rng), 7), ts::num::ratio<Rational>(v(rng), 9), Rational(v(rng))}, ts::num::ratio<Rational>(v(rng), 13));
    }
    auto text = ts::io::lp_to_json(lp).dump();
    EXPECT_EQ(ts::io::lp_from_json<Rational>(ts::io::json::parse(text)), lp);
  }
}

TEST(LpJson, RejectsMalformedDocuments) {
  using ts::io::json;
  EXPECT_THROW(ts::io::lp_from_json<double>(json::array()), ts::InputError);
  EXPECT_THROW(ts::io::lp_from_json<double>(json{{"objective", {1}}}), ts::InputError);
  EXPECT_THROW(ts::io::lp_from_json<double>(json::parse(R"({"sense":"maximize","objective":[1],"rows":[]})")),
               ts::InputError);
  EXPECT_THROW(
      ts::io::lp_from_json<double>(json::parse(R"({"objective":[1,2],"rows":[{"coeffs":[1],"rhs":1}]})")),
      ts::InputError);
}
