#include "fixtures.hpp"
#include "oracles.hpp"

#include "mapr/strategy.hpp"

#include <gtest/gtest.h>

using namespace mapr;

TEST(ExpectedProfitUnderStrategy, Example)
{
  ManipulationProblem const problem{fixtures::example(), 0};
  EXPECT_EQ(expected_profit_under_strategy(problem, Strategy::truthful(problem.economy, 0)),
            Rational(0));
  EXPECT_EQ(expected_profit_under_strategy(problem, Strategy{{0, 4, 3, 7, 7}}), Rational(1, 3));
  EXPECT_EQ(expected_profit_under_strategy(problem, Strategy{{0, 0, 0, 0, 0}}), Rational(0));
}

TEST(ExpectedProfitUnderStrategy, InvalidStrategy)
{
  ManipulationProblem const problem{fixtures::example(), 0};
  EXPECT_THROW(expected_profit_under_strategy(problem, Strategy{{0, 1}}), Error);
  EXPECT_THROW(expected_profit_under_strategy(problem, Strategy{{2, 4, 3, 7, 7}}), Error);
  EXPECT_THROW(expected_profit_under_strategy(ManipulationProblem{fixtures::example(), 9},
                                              Strategy{{0, 4, 3, 7, 7}}),
               Error);
}

TEST(ExpectedProfitUnderStrategy, MatchesRunsOfReportedEconomy)
{
  oracle::Generator        gen(31);
  std::mt19937_64          rng(32);
  std::vector<oracle::Run> runs;
  for (int k = 0; k < 300; ++k)
  {
    auto const e = gen.economy(4, 3, 8, 2, 2);
    std::vector<Money> row{0};
    for (ItemIndex a = 1; a < e.item_count(); ++a)
    {
      row.push_back(static_cast<Money>(rng() % 12));
    }
    auto const reported = e.with_valuations(0, row);
    if (!oracle::all_runs(reported, 200, runs))
    {
      continue;
    }
    Rational want(0);
    for (auto const &run : runs)
    {
      ItemIndex const a = run.result.allocation[0];
      want += run.probability * Rational(e.value(0, a) - run.result.prices[a]);
    }
    ASSERT_EQ(expected_profit_under_strategy({e, 0}, Strategy{row}), want);
  }
}

TEST(OptimalStrategySearch, ExampleFindsTheMisreport)
{
  ManipulationProblem const problem{fixtures::example(), 0};
  auto const                result = optimal_strategy_search(problem, 10);
  EXPECT_EQ(result.truthful_profit, Rational(0));
  EXPECT_EQ(result.best_profit, Rational(1, 3));
  EXPECT_FALSE(result.truthful_optimal);
  EXPECT_EQ(result.best.reported_values, (std::vector<Money>{0, 0, 0, 5, 0}));
  EXPECT_EQ(result.evaluated, 14641u);
}

TEST(OptimalStrategySearch, SingleBuyerTruthfulIsOptimal)
{
  auto const                e = fixtures::make({{3, 9, 4}}, {1, 2, 0}, {4, 5, 6});
  ManipulationProblem const problem{e, 0};
  auto const result = optimal_strategy_search(problem, default_strategy_cap(problem));
  EXPECT_TRUE(result.truthful_optimal);
  EXPECT_EQ(result.best, Strategy::truthful(e, 0));
  EXPECT_EQ(result.best_profit, Rational(7));
  EXPECT_EQ(default_strategy_cap(problem), 6 + 9);
}

TEST(OptimalStrategySearch, SizeGuard)
{
  ManipulationProblem const problem{fixtures::example(), 0};
  try
  {
    optimal_strategy_search(problem, 100);
    FAIL();
  }
  catch (Error const &err)
  {
    EXPECT_EQ(err.code(), ErrorCode::SizeGuard);
  }
  EXPECT_THROW(optimal_strategy_search(problem, -1), Error);
}

TEST(TwoBuyerAnalysis, NotTwoBuyers)
{
  try
  {
    two_buyer_truthfulness_analysis({fixtures::example(), 0});
    FAIL();
  }
  catch (Error const &err)
  {
    EXPECT_EQ(err.code(), ErrorCode::NotTwoBuyers);
  }
}

TEST(TwoBuyerAnalysis, DistinctTopItems)
{
  auto const e       = fixtures::make({{6, 2}, {1, 7}}, {2, 3}, {4, 5});
  auto const verdict = two_buyer_truthfulness_analysis({e, 0});
  EXPECT_EQ(verdict.kind, TwoBuyerCase::Uncontested);
  EXPECT_EQ(verdict.closed_form, Rational(4));
  EXPECT_TRUE(verdict.agrees);
}

TEST(TwoBuyerAnalysis, LotteryAtUpperBound)
{
  // Both want a with margin 7, above the spread 2, so a is raffled at 3.
  auto const e       = fixtures::make({{9, 1}, {8, 0}}, {1, 0}, {3, 4});
  auto const verdict = two_buyer_truthfulness_analysis({e, 0});
  EXPECT_EQ(verdict.kind, TwoBuyerCase::LotteryAtUpperBound);
  EXPECT_EQ(verdict.spread, 2);
  EXPECT_EQ(verdict.manipulator_margin, 7);
  EXPECT_EQ(verdict.fallback, 2u);
  EXPECT_EQ(verdict.closed_form, Rational(1) + Rational(5, 2));
  EXPECT_EQ(verdict.computed, Rational(7, 2));
}

TEST(TwoBuyerAnalysis, YieldingCases)
{
  // Manipulator's margin 1 runs out first: buyer 1 takes b at its lower bound.
  auto const mine = fixtures::make({{5, 3}, {9, 0}}, {1, 0}, {8, 8});
  auto const v1   = two_buyer_truthfulness_analysis({mine, 0});
  EXPECT_EQ(v1.kind, TwoBuyerCase::ManipulatorYields);
  EXPECT_EQ(v1.closed_form, Rational(3));
  EXPECT_TRUE(v1.agrees);

  // Opponent's margin 1 runs out first; buyer 1 keeps a at price 2.
  auto const theirs = fixtures::make({{9, 0}, {5, 3}}, {1, 0}, {8, 8});
  auto const v2     = two_buyer_truthfulness_analysis({theirs, 0});
  EXPECT_EQ(v2.kind, TwoBuyerCase::OpponentYields);
  EXPECT_EQ(v2.closed_form, Rational(7));
  EXPECT_TRUE(v2.agrees);
}

TEST(TwoBuyerAnalysis, ClosedFormOnRandomProblems)
{
  oracle::Generator gen(55);
  int               contested = 0;
  for (int k = 0; k < 2000; ++k)
  {
    auto const e = gen.economy(2, 4, 8, 2, 3);
    for (BuyerIndex m = 0; m < 2; ++m)
    {
      auto const verdict = two_buyer_truthfulness_analysis({e, m});
      ASSERT_TRUE(verdict.agrees) << "problem " << k << " manipulator " << m;
      contested += verdict.kind != TwoBuyerCase::Uncontested ? 1 : 0;
    }
  }
  EXPECT_GT(contested, 200);
}

TEST(OptimalStrategySearch, TwoBuyerTruthfulnessSample)
{
  oracle::Generator gen(66);
  for (int k = 0; k < 25; ++k)
  {
    auto const                e = gen.economy(2, 3, 6, 2, 2);
    ManipulationProblem const problem{e, 1};
    auto const result = optimal_strategy_search(problem, default_strategy_cap(problem));
    ASSERT_TRUE(result.truthful_optimal);
    ASSERT_EQ(result.best_profit, result.truthful_profit);
  }
}
