#include "mapr/expectation.hpp"

#include <sstream>

namespace mapr {

std::string to_fraction(Rational const &value)
{
  std::ostringstream os;
  os << boost::multiprecision::numerator(value) << '/'
     << boost::multiprecision::denominator(value);
  return os.str();
}

double to_double(Rational const &value)
{
  return value.convert_to<double>();
}

AllocationSituation::AllocationSituation(PriceVector prices, RationingSystem rationing)
  : prices_(std::move(prices))
  , rationing_(std::move(rationing))
{
  std::size_t const buyers = rationing_.buyer_count();
  for (ItemIndex a = 0; a < rationing_.item_count(); ++a)
  {
    std::size_t allowed = 0;
    for (BuyerIndex i = 0; i < buyers; ++i)
    {
      allowed += rationing_.allows(i, a) ? 1 : 0;
    }
    bool const open = allowed == buyers;
    if (!open && (a == kDummyItem || allowed != 1))
    {
      throw Error(ErrorCode::InvalidInput,
                  "rationing does not encode a partial matching of sold items");
    }
  }
}

AllocationSituation AllocationSituation::from_sold(PriceVector prices, Matching const &sold)
{
  RationingSystem r = RationingSystem::full(sold.buyer_count(), sold.item_count());
  for (auto const &[holder, a] : sold.edges())
  {
    for (BuyerIndex i = 0; i < sold.buyer_count(); ++i)
    {
      if (i != holder)
      {
        r.forbid(i, a);
      }
    }
  }
  return AllocationSituation(std::move(prices), std::move(r));
}

Matching AllocationSituation::sold_matching() const
{
  std::size_t const buyers = rationing_.buyer_count();
  Matching          m(buyers, rationing_.item_count());
  for (ItemIndex a = 1; a < rationing_.item_count(); ++a)
  {
    BuyerIndex  holder  = 0;
    std::size_t allowed = 0;
    for (BuyerIndex i = 0; i < buyers; ++i)
    {
      if (rationing_.allows(i, a))
      {
        holder = i;
        ++allowed;
      }
    }
    if (allowed == 1 && buyers > 1)
    {
      m.add(holder, a);
    }
  }
  return m;
}

namespace {

class TreeWalker
{
public:
  TreeWalker(Economy const &economy, ExpectationOptions const &options)
    : economy_(economy)
    , options_(options)
  {}

  TreeStats const &stats() const
  {
    return stats_;
  }

  // Advances through price-increase nodes; returns the refreshed state and
  // the decision at the first leaf or lottery node.
  std::pair<MechanismState, RoundDecision> settle(MechanismState state)
  {
    while (true)
    {
      visit();
      state              = refresh_demands(economy_, std::move(state));
      RoundDecision plan = decide_round(economy_, state);
      if (plan.kind != RoundDecision::Kind::RaisePrices)
      {
        return {std::move(state), std::move(plan)};
      }
      state = price_increase_step(economy_, std::move(state), plan.x_min);
    }
  }

  void leaf(Rational const &probability)
  {
    ++stats_.leaves;
    stats_.probability_mass += probability;
    if (stats_.leaves > options_.leaf_limit)
    {
      throw TreeSizeExceeded("lottery tree has more leaves than allowed", stats_);
    }
  }

  void lottery()
  {
    ++stats_.lotteries;
  }

private:
  void visit()
  {
    ++stats_.nodes;
    if (stats_.nodes > options_.node_limit)
    {
      throw TreeSizeExceeded("lottery tree has more nodes than allowed", stats_);
    }
  }

  Economy const            &economy_;
  ExpectationOptions const &options_;
  TreeStats                 stats_;
};

struct NodeValues
{
  std::vector<Rational> profit;
  std::vector<Rational> price;
};

NodeValues expected_at(Economy const &economy, TreeWalker &walker, MechanismState state,
                       Rational const &probability)
{
  auto [settled, plan] = walker.settle(std::move(state));

  if (plan.kind == RoundDecision::Kind::Terminate)
  {
    walker.leaf(probability);
    auto const situation = AllocationSituation::from_sold(settled.prices, settled.sold);
    NodeValues out;
    for (BuyerIndex i = 0; i < economy.buyer_count(); ++i)
    {
      out.profit.emplace_back(
          indirect_utility(economy, situation.prices(), situation.rationing(), i));
    }
    for (ItemIndex a = 0; a < economy.item_count(); ++a)
    {
      out.price.emplace_back(settled.prices[a]);
    }
    return out;
  }

  walker.lottery();
  if (plan.entrants.empty())
  {
    throw Error(ErrorCode::NoEntrants, "no buyer is eligible for the lottery");
  }
  Rational const branches(static_cast<long long>(plan.entrants.size()));
  Rational const child_probability = probability / branches;

  NodeValues sum;
  sum.profit.assign(economy.buyer_count(), Rational(0));
  sum.price.assign(economy.item_count(), Rational(0));
  for (auto winner : plan.entrants)
  {
    NodeValues child = expected_at(economy, walker,
                                   assign_lottery_winner(settled, plan.lottery_item, winner),
                                   child_probability);
    for (std::size_t i = 0; i < sum.profit.size(); ++i)
    {
      sum.profit[i] += child.profit[i];
    }
    for (std::size_t a = 0; a < sum.price.size(); ++a)
    {
      sum.price[a] += child.price[a];
    }
  }
  for (auto &v : sum.profit)
  {
    v /= branches;
  }
  for (auto &v : sum.price)
  {
    v /= branches;
  }
  return sum;
}

void collect_histories(Economy const &economy, TreeWalker &walker, MechanismState state,
                       History prefix, std::vector<History> &out)
{
  auto [settled, plan] = walker.settle(std::move(state));

  if (plan.kind == RoundDecision::Kind::Terminate)
  {
    walker.leaf(prefix.probability);
    Matching const full = complete_allocation(economy, settled);
    prefix.prices       = settled.prices;
    prefix.rationing    = settled.rationing;
    prefix.allocation   = matching_to_allocation(full, economy.buyer_count());
    out.push_back(std::move(prefix));
    return;
  }

  walker.lottery();
  Rational const branches(static_cast<long long>(plan.entrants.size()));
  for (auto winner : plan.entrants)
  {
    History child = prefix;
    child.probability /= branches;
    child.lotteries.push_back(
        LotteryEvent{settled.round, plan.lottery_item, plan.entrants, winner});
    collect_histories(economy, walker, assign_lottery_winner(settled, plan.lottery_item, winner),
                      std::move(child), out);
  }
}

}  // namespace

ExpectationReport expected_values(Economy const &economy, ExpectationOptions const &options)
{
  TreeWalker walker(economy, options);
  NodeValues values =
      expected_at(economy, walker, MechanismState::initial(economy), Rational(1));

  ExpectationReport report;
  report.expected_profit = std::move(values.profit);
  report.expected_price  = std::move(values.price);
  report.stats           = walker.stats();
  if (report.stats.probability_mass != 1)
  {
    throw Error(ErrorCode::InternalInvariant, "leaf probabilities do not sum to one");
  }
  return report;
}

std::vector<History> enumerate_histories(Economy const &economy, ExpectationOptions const &options)
{
  TreeWalker           walker(economy, options);
  std::vector<History> out;
  collect_histories(economy, walker, MechanismState::initial(economy), History{}, out);
  return out;
}

}  // namespace mapr
