#pragma once

#include "mapr/matching.hpp"
#include "mapr/model.hpp"
#include "mapr/overdemand.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace mapr {

/// Seller-side view of one round of the mechanism. Buyer-held rationing
/// vectors are simulated here as `rationing`.
struct MechanismState
{
  std::size_t     round = 0;
  PriceVector     prices;
  Matching        sold;
  RationingSystem rationing;
  DemandSituation demands;  // last reported demand of every buyer

  // p = lower bounds, nothing sold, every buyer allowed every item.
  static MechanismState initial(Economy const &economy);

  // N*: buyers not holding a sold item.
  BuyerSet unsold_buyers() const;
  ItemSet  sold_items() const
  {
    return sold.matched_items();
  }
};

struct LotteryEvent
{
  std::size_t             round = 0;
  ItemIndex               item  = kDummyItem;
  std::vector<BuyerIndex> entrants;  // ascending
  BuyerIndex              winner = 0;

  friend bool operator==(LotteryEvent const &, LotteryEvent const &) = default;
};

struct LotteryDraw
{
  std::size_t                    round;
  ItemIndex                      item;
  std::vector<BuyerIndex> const &entrants;
};

/// Decides lottery winners. Three kinds:
///  - seeded: mt19937_64 seeded with the given value; the winner is
///    entrants[r % k] where r is the first 64-bit draw below the largest
///    multiple of k (rejection sampling, so every entrant has chance 1/k);
///  - scripted: the i-th lottery is won by the i-th listed buyer;
///  - path: the i-th lottery is won by the entrant at the i-th listed
///    position; past the end of the path the first entrant wins. Records the
///    entrant count of every lottery, which is what exhaustive enumeration of
///    the lottery tree needs.
class LotteryPolicy
{
public:
  static LotteryPolicy seeded(std::uint64_t seed);
  static LotteryPolicy scripted(std::vector<BuyerIndex> winners);
  static LotteryPolicy path(std::vector<std::size_t> positions);

  BuyerIndex draw(LotteryDraw const &draw);

  // Per lottery so far: chosen entrant position and number of entrants.
  std::vector<std::size_t> const &positions() const
  {
    return positions_;
  }

  std::vector<std::size_t> const &branching() const
  {
    return branching_;
  }

private:
  struct Seeded
  {
    std::mt19937_64 engine;
  };
  struct Scripted
  {
    std::vector<BuyerIndex> winners;
  };
  struct Path
  {
    std::vector<std::size_t> positions;
  };

  explicit LotteryPolicy(std::variant<Seeded, Scripted, Path> kind)
    : kind_(std::move(kind))
  {}

  std::variant<Seeded, Scripted, Path> kind_;
  std::size_t                          draws_ = 0;
  std::vector<std::size_t>             positions_;
  std::vector<std::size_t>             branching_;
};

/// One row of the trace, describing round t after the demand refresh.
struct RoundRecord
{
  std::size_t                         round = 0;
  std::string                         label;  // e.g. "4.1": round plus lottery branch positions
  PriceVector                         prices;
  ItemSet                             x_min;
  std::vector<ItemSet>                forbidden;  // U_i
  BuyerSet                            sold_buyers;
  std::vector<std::optional<ItemSet>> demands;  // nullopt for sold buyers
  ItemSet                             sold_items;
  std::optional<LotteryEvent>         lottery;

  friend bool operator==(RoundRecord const &, RoundRecord const &) = default;
};

struct Trace
{
  std::vector<RoundRecord>  rounds;
  std::vector<LotteryEvent> lotteries;
  std::size_t               price_increases = 0;

  friend bool operator==(Trace const &, Trace const &) = default;
};

struct MechanismResult
{
  PriceVector     prices;
  RationingSystem rationing;
  Allocation      allocation;
  Matching        final_matching;
  Trace           trace;
};

/// Recompute demands of unsold buyers, forbidding sold items
/// they demand, until no unsold buyer demands a sold item.
MechanismState refresh_demands(Economy const &economy, MechanismState state);

/// +1 on every price in x_min. Throws UpperBoundViolation when a
/// price is already at its upper bound.
MechanismState price_increase_step(Economy const &economy, MechanismState state,
                                   ItemSet const &x_min);

/// {i in N* : item in D_i subset of x_min}, ascending.
std::vector<BuyerIndex> lottery_entrants(MechanismState const &state, ItemSet const &x_min,
                                         ItemIndex item);

/// Records `winner` as the buyer of `item`. Prices are unchanged.
MechanismState assign_lottery_winner(MechanismState state, ItemIndex item, BuyerIndex winner);

/// Lottery on `item` among the eligible unsold buyers. Throws NoEntrants when
/// nobody is eligible.
std::pair<MechanismState, LotteryEvent> lottery_step(Economy const &economy,
                                                     MechanismState state,
                                                     ItemSet const &x_min, ItemIndex item,
                                                     LotteryPolicy &policy);

/// Terminal completion. `unsold_demands` holds the demands of the buyers that
/// do not yet hold an item. The result M' is disjoint from `sold`, makes
/// pi^{sold + M'} an equilibrium allocation and sells every unsold item
/// priced above its lower bound.
Matching complete_sales(DemandSituation const &unsold_demands, Matching const &sold,
                        PriceVector const &prices, PriceVector const &lower);

/// What the seller does at the end of a round.
struct RoundDecision
{
  enum class Kind
  {
    Terminate,
    RaisePrices,
    Lottery,
  };

  Kind                    kind = Kind::Terminate;
  ItemSet                 x_min;
  ItemIndex               lottery_item = kDummyItem;
  std::vector<BuyerIndex> entrants;
};

/// Decision for a state whose demands are already refreshed. Deterministic:
/// maximum matchings, the minimal over-demanded set and the lottery item (lowest capped index) all use
/// fixed orders.
RoundDecision decide_round(Economy const &economy, MechanismState const &state);

/// Completes the sold matching with complete_sales() and returns the final
/// matching over all buyers.
Matching complete_allocation(Economy const &economy, MechanismState const &state);

/// Runs the mechanism to termination.
MechanismResult run_mapr(Economy const &economy, LotteryPolicy &policy);

}  // namespace mapr
