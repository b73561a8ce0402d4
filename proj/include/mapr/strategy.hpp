#pragma once

#include "mapr/expectation.hpp"
#include "mapr/model.hpp"

#include <vector>

namespace mapr {

/// Value function a buyer reports as if it were its own. Indexed by item,
/// dummy at 0 (must be zero).
struct Strategy
{
  std::vector<Money> reported_values;

  static Strategy truthful(Economy const &economy, BuyerIndex buyer)
  {
    return Strategy{economy.values_of(buyer)};
  }

  friend bool operator==(Strategy const &, Strategy const &) = default;
};

struct ManipulationProblem
{
  Economy    economy;
  BuyerIndex manipulator = 0;
};

/// Expected profit, measured with the manipulator's true values, when the
/// manipulator reports according to `strategy` throughout the run.
Rational expected_profit_under_strategy(ManipulationProblem const &problem, Strategy const &strategy,
                                        ExpectationOptions const &options = {});

/// max_a upper(a) + max_a u_m(a): reports above this never change behaviour
/// at admissible prices.
Money default_strategy_cap(ManipulationProblem const &problem);

inline constexpr std::size_t kStrategySearchGuard = 5'000'000;

struct StrategySearchResult
{
  Strategy    best;
  Rational    best_profit;
  Rational    truthful_profit;
  bool        truthful_optimal = true;  // within the searched cap
  std::size_t evaluated        = 0;
};

/// Exhaustive search over reports in [0, cap] per real item. Ties go to the
/// truthful strategy when it attains the maximum, otherwise to the
/// lexicographically smallest maximiser. Throws SizeGuard when
/// (cap + 1)^m exceeds kStrategySearchGuard.
StrategySearchResult optimal_strategy_search(ManipulationProblem const &problem, Money cap,
                                             ExpectationOptions const &options = {});

enum class TwoBuyerCase
{
  Uncontested,          // no over-demand at the lower bounds
  LotteryAtUpperBound,  // both insist on the item up to its upper bound
  ManipulatorYields,    // the manipulator's margin runs out first (or ties)
  OpponentYields,
};

std::string_view to_string(TwoBuyerCase c);

/// Closed-form truthful profit of a two-buyer problem. When both buyers
/// demand exactly {a} at the lower bounds:
///   spread            = upper(a) - lower(a)
///   margin of buyer i = u_i(a) - lower(a) - max_{b != a}(u_i(b) - lower(b))
///   fallback          = the lowest-index b attaining the manipulator's max
///   stop              = min(spread, margin_m - 1, margin_o - 1)
/// and the profit is
///   stop == spread:           u_m(fallback) - lower(fallback) + (margin_m - spread) / 2
///   stop == margin_m - 1:     u_m(fallback) - lower(fallback)
///   stop == margin_o - 1:     u_m(a) - lower(a) - margin_o
/// Otherwise it is the manipulator's indirect utility at the lower bounds.
struct TwoBuyerVerdict
{
  TwoBuyerCase kind            = TwoBuyerCase::Uncontested;
  ItemIndex    contested       = kDummyItem;
  Money        spread          = 0;
  Money        manipulator_margin = 0;
  Money        opponent_margin = 0;
  Money        stop            = 0;
  ItemIndex    fallback        = kDummyItem;
  Rational     closed_form;
  Rational     computed;  // truthful expected profit from the lottery tree
  bool         agrees = false;
};

/// Throws NotTwoBuyers unless the economy has exactly two buyers.
TwoBuyerVerdict two_buyer_truthfulness_analysis(ManipulationProblem const &problem);

}  // namespace mapr
