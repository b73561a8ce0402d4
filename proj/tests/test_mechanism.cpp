#include "fixtures.hpp"
#include "oracles.hpp"

#include "mapr/mechanism.hpp"

#include <gtest/gtest.h>

using namespace mapr;
using fixtures::items;

namespace {

MechanismState advance_to_lottery(Economy const &e)
{
  auto state = MechanismState::initial(e);
  for (int t = 0; t < 3; ++t)
  {
    state = refresh_demands(e, std::move(state));
    auto const plan = decide_round(e, state);
    state = price_increase_step(e, std::move(state), plan.x_min);
  }
  return refresh_demands(e, std::move(state));
}

}  // namespace

TEST(RunMapr, FirstHistoryOfExample)
{
  auto const e      = fixtures::example();
  auto       policy = LotteryPolicy::scripted({1});
  auto const result = run_mapr(e, policy);
  EXPECT_EQ(result.prices, fixtures::prices({0, 5, 4, 4, 7}));
  EXPECT_EQ(result.allocation.assignment(), (std::vector<ItemIndex>{0, 3, 2, 1, 4}));
  EXPECT_EQ(result.rationing.forbidden_items(0), items(e, "c"));
  EXPECT_EQ(result.rationing.forbidden_items(2), items(e, "c"));
  EXPECT_EQ(result.trace.rounds.size(), 7u);
  EXPECT_EQ(result.trace.price_increases, 5u);
  ASSERT_EQ(result.trace.lotteries.size(), 1u);
  auto const &lottery = result.trace.lotteries.front();
  EXPECT_EQ(lottery.round, 3u);
  EXPECT_EQ(lottery.item, 3u);
  EXPECT_EQ(lottery.entrants, (std::vector<BuyerIndex>{1, 2}));
  EXPECT_EQ(lottery.winner, 1u);
}

TEST(RunMapr, SecondHistoryOfExample)
{
  auto const e      = fixtures::example();
  auto       policy = LotteryPolicy::scripted({2});
  auto const result = run_mapr(e, policy);
  EXPECT_EQ(result.prices, fixtures::prices({0, 5, 4, 4, 7}));
  EXPECT_EQ(result.allocation.assignment(), (std::vector<ItemIndex>{0, 2, 3, 1, 4}));
  std::vector<std::string> labels;
  for (auto const &r : result.trace.rounds)
  {
    labels.push_back(r.label);
  }
  EXPECT_EQ(labels, (std::vector<std::string>{"0", "1", "2", "3", "4.2", "5.2", "6.2"}));
}

TEST(RunMapr, NoContentionTerminatesImmediately)
{
  auto const e      = fixtures::make({{5, 1, 0}, {0, 6, 1}, {1, 0, 7}}, {1, 1, 1}, {3, 3, 3});
  auto       policy = LotteryPolicy::seeded(0);
  auto const result = run_mapr(e, policy);
  EXPECT_EQ(result.trace.rounds.size(), 1u);
  EXPECT_EQ(result.prices, PriceVector::lower_bounds(e));
  EXPECT_EQ(result.allocation.assignment(), (std::vector<ItemIndex>{1, 2, 3}));
}

TEST(RefreshDemands, SoldItemIsForbidden)
{
  auto const e     = fixtures::example();
  auto       state = advance_to_lottery(e);
  auto const plan  = decide_round(e, state);
  ASSERT_EQ(plan.kind, RoundDecision::Kind::Lottery);
  EXPECT_EQ(plan.lottery_item, 3u);
  EXPECT_EQ(plan.entrants, (std::vector<BuyerIndex>{1, 2}));

  state = assign_lottery_winner(std::move(state), 3, 1);
  state = refresh_demands(e, std::move(state));
  EXPECT_EQ(state.rationing.forbidden_items(2), items(e, "c"));
  EXPECT_EQ(state.demands.demand(2), items(e, "d"));
  EXPECT_TRUE(state.rationing.forbidden_items(0).empty());  // buyer 1 demands {d}
}

TEST(RefreshDemands, NothingSoldLeavesStateUnchanged)
{
  auto const e     = fixtures::example();
  auto const state = MechanismState::initial(e);
  auto const after = refresh_demands(e, state);
  EXPECT_EQ(after.rationing, state.rationing);
  EXPECT_EQ(after.demands, state.demands);
}

TEST(RefreshDemands, ChainReachesFixpoint)
{
  // Buyer 1 ranks a > b > c; a and b are sold to buyers 2 and 3.
  auto const e     = fixtures::make({{10, 9, 8}, {10, 0, 0}, {0, 10, 0}}, {0, 0, 0}, {5, 5, 5});
  auto       state = MechanismState::initial(e);
  state.sold.add(1, 1);
  state.sold.add(2, 2);
  state = refresh_demands(e, std::move(state));
  EXPECT_EQ(state.rationing.forbidden_items(0), items(e, "a,b"));
  EXPECT_EQ(state.demands.demand(0), items(e, "c"));
}

TEST(PriceIncrease, RaisesOnlyTheSet)
{
  auto const e     = fixtures::example();
  auto       state = refresh_demands(e, MechanismState::initial(e));
  state            = price_increase_step(e, std::move(state), items(e, "c"));
  EXPECT_EQ(state.prices, fixtures::prices({0, 5, 4, 2, 5}));
  EXPECT_EQ(state.round, 1u);
  state = price_increase_step(e, std::move(state), items(e, "d"));
  EXPECT_EQ(state.prices, fixtures::prices({0, 5, 4, 2, 6}));
}

TEST(PriceIncrease, UpperBoundViolation)
{
  auto const e     = fixtures::example();
  auto const state = advance_to_lottery(e);  // p_c = 4 = upper bound
  try
  {
    price_increase_step(e, state, items(e, "c"));
    FAIL() << "expected UpperBoundViolation";
  }
  catch (Error const &err)
  {
    EXPECT_EQ(err.code(), ErrorCode::UpperBoundViolation);
  }
}

TEST(LotteryStep, ExampleLottery)
{
  auto const e      = fixtures::example();
  auto       state  = advance_to_lottery(e);
  auto       policy = LotteryPolicy::scripted({2});
  auto [next, event] = lottery_step(e, state, items(e, "c"), 3, policy);
  EXPECT_EQ(event.entrants, (std::vector<BuyerIndex>{1, 2}));
  EXPECT_EQ(event.winner, 2u);
  EXPECT_EQ(next.sold.buyer_of(3), 2u);
  EXPECT_EQ(next.prices, state.prices);
}

TEST(LotteryStep, SingleEntrantWins)
{
  auto const e      = fixtures::make({{5}, {0}}, {1}, {1});
  auto       state  = refresh_demands(e, MechanismState::initial(e));
  ItemSet    a      = fixtures::items(e, "a");
  for (std::uint64_t seed = 0; seed < 10; ++seed)
  {
    auto policy        = LotteryPolicy::seeded(seed);
    auto [next, event] = lottery_step(e, state, a, 1, policy);
    EXPECT_EQ(event.winner, 0u);
  }
}

TEST(LotteryStep, NoEntrants)
{
  auto const e      = fixtures::make({{0}, {0}}, {1}, {1});
  auto       state  = refresh_demands(e, MechanismState::initial(e));
  auto       policy = LotteryPolicy::seeded(0);
  try
  {
    lottery_step(e, state, items(e, "a"), 1, policy);
    FAIL() << "expected NoEntrants";
  }
  catch (Error const &err)
  {
    EXPECT_EQ(err.code(), ErrorCode::NoEntrants);
  }
}

TEST(LotteryPolicy, SeededIsDeterministic)
{
  std::vector<BuyerIndex> const entrants{0, 3, 5, 7};
  auto                          a = LotteryPolicy::seeded(42);
  auto                          b = LotteryPolicy::seeded(42);
  for (int k = 0; k < 50; ++k)
  {
    EXPECT_EQ(a.draw({0, 1, entrants}), b.draw({0, 1, entrants}));
  }
}

TEST(LotteryPolicy, SeededIsRoughlyUniform)
{
  std::vector<BuyerIndex> const entrants{0, 1, 2};
  auto                          policy = LotteryPolicy::seeded(1);
  std::array<int, 3>            counts{};
  for (int k = 0; k < 3000; ++k)
  {
    ++counts[policy.draw({0, 1, entrants})];
  }
  for (int c : counts)
  {
    EXPECT_GT(c, 850);
    EXPECT_LT(c, 1150);
  }
}

TEST(LotteryPolicy, ScriptErrors)
{
  std::vector<BuyerIndex> const entrants{1, 2};
  auto                          policy = LotteryPolicy::scripted({4});
  try
  {
    policy.draw({3, 3, entrants});
    FAIL();
  }
  catch (Error const &err)
  {
    EXPECT_EQ(err.code(), ErrorCode::ScriptedWinnerNotEntrant);
  }
  auto empty = LotteryPolicy::scripted({});
  try
  {
    empty.draw({3, 3, entrants});
    FAIL();
  }
  catch (Error const &err)
  {
    EXPECT_EQ(err.code(), ErrorCode::ScriptExhausted);
  }
}

TEST(LotteryPolicy, PathRecordsBranching)
{
  std::vector<BuyerIndex> const three{1, 2, 4};
  std::vector<BuyerIndex> const two{0, 3};
  auto                          policy = LotteryPolicy::path({2});
  EXPECT_EQ(policy.draw({0, 1, three}), 4u);
  EXPECT_EQ(policy.draw({1, 2, two}), 0u);  // past the path: first entrant
  EXPECT_EQ(policy.positions(), (std::vector<std::size_t>{2, 0}));
  EXPECT_EQ(policy.branching(), (std::vector<std::size_t>{3, 2}));
  auto bad = LotteryPolicy::path({5});
  EXPECT_THROW(bad.draw({0, 1, two}), Error);
}

TEST(CompleteSales, ExampleTerminalState)
{
  auto const e      = fixtures::example();
  auto       policy = LotteryPolicy::scripted({1});
  auto const result = run_mapr(e, policy);
  auto const &last  = result.trace.rounds.back();
  EXPECT_TRUE(last.x_min.empty());

  // Rebuild the terminal state: c sold to buyer 2, prices (0,5,4,4,7).
  auto state   = MechanismState::initial(e);
  state.prices = result.prices;
  state.sold.add(1, 3);
  state.rationing = result.rationing;
  state           = refresh_demands(e, std::move(state));
  auto const unsold = state.demands.restricted_to(state.unsold_buyers());
  auto const extra  = complete_sales(unsold, state.sold, state.prices, PriceVector::lower_bounds(e));
  EXPECT_EQ(extra.item_of(4), 4u);  // d, priced above its lower bound
  EXPECT_EQ(extra.item_of(3), 1u);
  EXPECT_EQ(extra.item_of(2), 2u);
  EXPECT_FALSE(extra.has_buyer(0));
  EXPECT_FALSE(extra.has_buyer(1));
}

TEST(CompleteSales, ContractOnRandomTerminalStates)
{
  oracle::Generator gen(99);
  for (int k = 0; k < 1500; ++k)
  {
    auto const e      = gen.economy(5, 5, 8, 1, 3);
    auto       policy = LotteryPolicy::seeded(static_cast<std::uint64_t>(k));
    auto const result = run_mapr(e, policy);
    auto const &m     = result.final_matching;
    auto const &last  = result.trace.rounds.back();

    for (auto const &[i, a] : m.edges())
    {
      if (last.sold_buyers.contains(i))
      {
        continue;
      }
      // Completion edges come from the buyer's final demand.
      ASSERT_TRUE(last.demands[i]->contains(a));
      ASSERT_FALSE(last.sold_items.contains(a));
    }
    for (BuyerIndex i = 0; i < e.buyer_count(); ++i)
    {
      if (last.demands[i] && !last.demands[i]->contains(kDummyItem))
      {
        ASSERT_TRUE(m.has_buyer(i));
      }
    }
    for (ItemIndex a = 1; a < e.item_count(); ++a)
    {
      if (result.prices[a] > e.lower_bound(a))
      {
        ASSERT_TRUE(m.has_item(a));
      }
    }
  }
}

TEST(RunMapr, InvariantsAlongRandomTraces)
{
  oracle::Generator gen(123);
  for (int k = 0; k < 1500; ++k)
  {
    auto const e      = gen.economy(5, 5, 8, 1, 2);
    auto       policy = LotteryPolicy::seeded(static_cast<std::uint64_t>(k));
    auto const result = run_mapr(e, policy);

    PriceVector previous = PriceVector::lower_bounds(e);
    for (auto const &r : result.trace.rounds)
    {
      ASSERT_TRUE(r.prices.admissible(e));
      for (ItemIndex a = 0; a < e.item_count(); ++a)
      {
        ASSERT_GE(r.prices[a], previous[a]);
      }
      previous = r.prices;
      for (BuyerIndex i = 0; i < e.buyer_count(); ++i)
      {
        if (r.demands[i])
        {
          ASSERT_FALSE(r.demands[i]->intersects(r.sold_items));
        }
        // Rations only ever cover sold items.
        ASSERT_TRUE(r.forbidden[i].is_subset_of(r.sold_items));
      }
      if (r.lottery)
      {
        auto const &l = *r.lottery;
        ASSERT_FALSE(l.entrants.empty());
        ASSERT_NE(std::find(l.entrants.begin(), l.entrants.end(), l.winner), l.entrants.end());
        ASSERT_EQ(r.prices[l.item], e.upper_bound(l.item));
      }
    }
    ASSERT_LE(result.trace.price_increases, static_cast<std::size_t>(e.total_price_spread()));
    ASSERT_LE(result.trace.lotteries.size(), e.real_item_count());
  }
}
