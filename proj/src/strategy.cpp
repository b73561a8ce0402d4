#include "mapr/strategy.hpp"

#include <algorithm>

namespace mapr {

namespace {

void check_problem(ManipulationProblem const &problem)
{
  if (problem.manipulator >= problem.economy.buyer_count())
  {
    throw Error(ErrorCode::InvalidInput, "manipulator is not a buyer of the economy");
  }
}

}  // namespace

Rational expected_profit_under_strategy(ManipulationProblem const &problem, Strategy const &strategy,
                                        ExpectationOptions const &options)
{
  check_problem(problem);
  auto const &economy = problem.economy;
  BuyerIndex  m       = problem.manipulator;
  if (strategy.reported_values.size() != economy.item_count())
  {
    throw Error(ErrorCode::InvalidStrategy, "strategy must report a value for every item");
  }

  Economy const reported = economy.with_valuations(m, strategy.reported_values);
  Rational      profit(0);
  for (auto const &h : enumerate_histories(reported, options))
  {
    ItemIndex const got = h.allocation[m];
    profit += h.probability * Rational(economy.value(m, got) - h.prices[got]);
  }
  return profit;
}

Money default_strategy_cap(ManipulationProblem const &problem)
{
  check_problem(problem);
  auto const &economy = problem.economy;
  auto const &upper   = economy.upper_bounds();
  auto const &values  = economy.values_of(problem.manipulator);
  return *std::max_element(upper.begin(), upper.end()) +
         *std::max_element(values.begin(), values.end());
}

StrategySearchResult optimal_strategy_search(ManipulationProblem const &problem, Money cap,
                                             ExpectationOptions const &options)
{
  check_problem(problem);
  if (cap < 0)
  {
    throw Error(ErrorCode::InvalidInput, "strategy cap must be non-negative");
  }
  auto const       &economy = problem.economy;
  std::size_t const m       = economy.real_item_count();

  std::size_t space = 1;
  for (std::size_t k = 0; k < m; ++k)
  {
    space *= static_cast<std::size_t>(cap) + 1;
    if (space > kStrategySearchGuard)
    {
      throw Error(ErrorCode::SizeGuard, "strategy space too large for exhaustive search");
    }
  }

  StrategySearchResult result;
  Strategy const       truthful = Strategy::truthful(economy, problem.manipulator);
  result.truthful_profit        = expected_profit_under_strategy(problem, truthful, options);
  result.best                   = truthful;
  result.best_profit            = result.truthful_profit;

  std::optional<Strategy> best_other;
  Rational                best_other_profit;

  Strategy candidate{std::vector<Money>(economy.item_count(), 0)};
  while (true)
  {
    Rational profit = expected_profit_under_strategy(problem, candidate, options);
    ++result.evaluated;
    if (!best_other || profit > best_other_profit)
    {
      best_other        = candidate;
      best_other_profit = profit;
    }

    // Odometer over items 1..m; item 1 is the most significant digit so the
    // visiting order is lexicographic.
    std::size_t digit = m;
    while (digit >= 1 && candidate.reported_values[digit] == cap)
    {
      candidate.reported_values[digit] = 0;
      --digit;
    }
    if (digit == 0)
    {
      break;
    }
    ++candidate.reported_values[digit];
  }

  if (best_other && best_other_profit > result.truthful_profit)
  {
    result.best             = *best_other;
    result.best_profit      = best_other_profit;
    result.truthful_optimal = false;
  }
  return result;
}

std::string_view to_string(TwoBuyerCase c)
{
  switch (c)
  {
  case TwoBuyerCase::Uncontested:
    return "uncontested";
  case TwoBuyerCase::LotteryAtUpperBound:
    return "lottery-at-upper-bound";
  case TwoBuyerCase::ManipulatorYields:
    return "manipulator-yields";
  case TwoBuyerCase::OpponentYields:
    return "opponent-yields";
  }
  return "unknown";
}

TwoBuyerVerdict two_buyer_truthfulness_analysis(ManipulationProblem const &problem)
{
  auto const &economy = problem.economy;
  if (economy.buyer_count() != 2)
  {
    throw Error(ErrorCode::NotTwoBuyers, "analysis applies to exactly two buyers");
  }
  check_problem(problem);
  BuyerIndex const m     = problem.manipulator;
  BuyerIndex const other = 1 - m;

  PriceVector const     lower = PriceVector::lower_bounds(economy);
  RationingSystem const full  = RationingSystem::full(2, economy.item_count());
  ItemSet const         d_m   = demand_set(economy, lower, full, m);
  ItemSet const         d_o   = demand_set(economy, lower, full, other);

  TwoBuyerVerdict verdict;
  verdict.computed =
      expected_profit_under_strategy(problem, Strategy::truthful(economy, m));

  bool const contested = d_m == d_o && d_m.size() == 1 && !d_m.contains(kDummyItem);
  if (!contested)
  {
    verdict.kind        = TwoBuyerCase::Uncontested;
    verdict.closed_form = Rational(indirect_utility(economy, lower, full, m));
    verdict.agrees      = verdict.closed_form == verdict.computed;
    return verdict;
  }

  ItemIndex const a = d_m.lowest();
  auto net = [&](BuyerIndex i, ItemIndex b) { return economy.value(i, b) - lower[b]; };
  auto best_other_item = [&](BuyerIndex i) {
    ItemIndex best = kDummyItem;
    for (ItemIndex b = 0; b < economy.item_count(); ++b)
    {
      if (b != a && net(i, b) > net(i, best))
      {
        best = b;
      }
    }
    return best;
  };

  verdict.contested          = a;
  verdict.spread             = economy.upper_bound(a) - economy.lower_bound(a);
  verdict.fallback           = best_other_item(m);
  verdict.manipulator_margin = net(m, a) - net(m, verdict.fallback);
  verdict.opponent_margin    = net(other, a) - net(other, best_other_item(other));
  verdict.stop = std::min({verdict.spread, verdict.manipulator_margin - 1,
                           verdict.opponent_margin - 1});

  Money const fallback_profit = net(m, verdict.fallback);
  if (verdict.stop == verdict.spread)
  {
    verdict.kind        = TwoBuyerCase::LotteryAtUpperBound;
    verdict.closed_form = Rational(fallback_profit) +
                          Rational(verdict.manipulator_margin - verdict.spread) / 2;
  }
  else if (verdict.stop == verdict.manipulator_margin - 1)
  {
    verdict.kind        = TwoBuyerCase::ManipulatorYields;
    verdict.closed_form = Rational(fallback_profit);
  }
  else
  {
    verdict.kind        = TwoBuyerCase::OpponentYields;
    verdict.closed_form = Rational(net(m, a) - verdict.opponent_margin);
  }
  verdict.agrees = verdict.closed_form == verdict.computed;
  return verdict;
}

}  // namespace mapr
