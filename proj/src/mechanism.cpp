#include "mapr/mechanism.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace mapr {

MechanismState MechanismState::initial(Economy const &economy)
{
  MechanismState s;
  s.prices    = PriceVector::lower_bounds(economy);
  s.sold      = Matching(economy.buyer_count(), economy.item_count());
  s.rationing = RationingSystem::full(economy.buyer_count(), economy.item_count());
  s.demands   = demand_situation(economy, s.prices, s.rationing);
  return s;
}

BuyerSet MechanismState::unsold_buyers() const
{
  return BuyerSet::first_n(sold.buyer_count()) - sold.matched_buyers();
}

LotteryPolicy LotteryPolicy::seeded(std::uint64_t seed)
{
  return LotteryPolicy(Seeded{std::mt19937_64(seed)});
}

LotteryPolicy LotteryPolicy::scripted(std::vector<BuyerIndex> winners)
{
  return LotteryPolicy(Scripted{std::move(winners)});
}

LotteryPolicy LotteryPolicy::path(std::vector<std::size_t> positions)
{
  return LotteryPolicy(Path{std::move(positions)});
}

BuyerIndex LotteryPolicy::draw(LotteryDraw const &draw)
{
  auto const &entrants = draw.entrants;
  if (entrants.empty())
  {
    throw Error(ErrorCode::NoEntrants, "lottery without entrants");
  }
  std::uint64_t const k = entrants.size();

  std::size_t position = 0;
  if (auto *seeded = std::get_if<Seeded>(&kind_))
  {
    constexpr std::uint64_t kMax  = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t const     bound = kMax - kMax % k;
    std::uint64_t           r     = seeded->engine();
    while (r >= bound)
    {
      r = seeded->engine();
    }
    position = static_cast<std::size_t>(r % k);
  }
  else if (auto *scripted = std::get_if<Scripted>(&kind_))
  {
    if (draws_ >= scripted->winners.size())
    {
      throw Error(ErrorCode::ScriptExhausted, "scripted winner list exhausted");
    }
    BuyerIndex const wanted = scripted->winners[draws_];
    auto it = std::find(entrants.begin(), entrants.end(), wanted);
    if (it == entrants.end())
    {
      std::ostringstream os;
      os << "scripted winner " << wanted + 1 << " is not an entrant of the lottery for item "
         << draw.item << " at round " << draw.round;
      throw Error(ErrorCode::ScriptedWinnerNotEntrant, os.str());
    }
    position = static_cast<std::size_t>(it - entrants.begin());
  }
  else
  {
    auto const &path = std::get<Path>(kind_).positions;
    position         = draws_ < path.size() ? path[draws_] : 0;
    if (position >= k)
    {
      throw Error(ErrorCode::InvalidInput, "lottery path position out of range");
    }
  }

  ++draws_;
  positions_.push_back(position);
  branching_.push_back(entrants.size());
  return entrants[position];
}

MechanismState refresh_demands(Economy const &economy, MechanismState state)
{
  BuyerSet const unsold = state.unsold_buyers();
  ItemSet const  sold   = state.sold_items();

  std::vector<ItemSet> demands(economy.buyer_count());
  for (BuyerIndex i = 0; i < economy.buyer_count(); ++i)
  {
    demands[i] = unsold.contains(i) ? demand_set(economy, state.prices, state.rationing, i)
                                    : state.demands.demand(i);
  }

  BuyerSet asked = unsold;
  for (std::size_t pass = 0;; ++pass)
  {
    BuyerSet hit;
    for (auto i : asked)
    {
      if (demands[i].intersects(sold))
      {
        hit.insert(i);
      }
    }
    if (hit.empty())
    {
      break;
    }
    if (pass > economy.item_count())
    {
      throw Error(ErrorCode::InternalInvariant, "demand refresh did not reach a fixpoint");
    }
    for (auto i : hit)
    {
      for (auto a : demands[i] & sold)
      {
        state.rationing.forbid(i, a);
      }
      demands[i] = demand_set(economy, state.prices, state.rationing, i);
    }
    asked = hit;
  }

  state.demands = DemandSituation(std::move(demands), economy.item_count());
  return state;
}

MechanismState price_increase_step(Economy const &economy, MechanismState state,
                                   ItemSet const &x_min)
{
  if (x_min.empty())
  {
    throw Error(ErrorCode::InvalidInput, "price increase needs a nonempty item set");
  }
  for (auto a : x_min)
  {
    if (a == kDummyItem || state.prices[a] >= economy.upper_bound(a))
    {
      std::ostringstream os;
      os << "price of item " << economy.item_name(a) << " cannot rise above its upper bound";
      throw Error(ErrorCode::UpperBoundViolation, os.str());
    }
  }
  for (auto a : x_min)
  {
    state.prices[a] += 1;
  }
  ++state.round;
  return state;
}

std::vector<BuyerIndex> lottery_entrants(MechanismState const &state, ItemSet const &x_min,
                                         ItemIndex item)
{
  std::vector<BuyerIndex> out;
  for (auto i : state.unsold_buyers())
  {
    auto const &d = state.demands.demand(i);
    if (d.contains(item) && d.is_subset_of(x_min))
    {
      out.push_back(i);
    }
  }
  return out;
}

MechanismState assign_lottery_winner(MechanismState state, ItemIndex item, BuyerIndex winner)
{
  state.sold.add(winner, item);
  ++state.round;
  return state;
}

std::pair<MechanismState, LotteryEvent> lottery_step(Economy const &economy,
                                                     MechanismState state,
                                                     ItemSet const &x_min, ItemIndex item,
                                                     LotteryPolicy &policy)
{
  if (!x_min.contains(item) || state.prices[item] != economy.upper_bound(item))
  {
    throw Error(ErrorCode::InvalidInput,
                "lottery item must belong to X_min and be priced at its upper bound");
  }
  LotteryEvent event;
  event.round    = state.round;
  event.item     = item;
  event.entrants = lottery_entrants(state, x_min, item);
  if (event.entrants.empty())
  {
    throw Error(ErrorCode::NoEntrants, "no buyer is eligible for the lottery");
  }
  event.winner = policy.draw(LotteryDraw{state.round, item, event.entrants});
  return {assign_lottery_winner(std::move(state), item, event.winner), event};
}

Matching complete_sales(DemandSituation const &unsold_demands, Matching const &sold,
                        PriceVector const &prices, PriceVector const &lower)
{
  std::size_t const buyers = unsold_demands.buyer_count();
  std::size_t const items  = unsold_demands.item_count();

  ItemSet above;  // X'
  for (ItemIndex a = 1; a < items; ++a)
  {
    if (!sold.has_item(a) && prices[a] > lower[a])
    {
      above.insert(a);
    }
  }

  BuyerSet const unsold = unsold_demands.members() - sold.matched_buyers();

  BuyerSet             touching;  // N'
  std::vector<ItemSet> restricted(buyers);
  for (auto i : unsold)
  {
    ItemSet d = unsold_demands.demand(i) & above;
    if (!d.empty())
    {
      touching.insert(i);
      restricted[i] = d;
    }
  }
  Matching const priority = max_matching(DemandSituation(std::move(restricted), touching, items));

  BipartiteGraph const graph = build_graph(unsold_demands.restricted_to(unsold));
  Matching             completion(buyers, items);
  for (auto const &[i, a] : priority.edges())
  {
    if (graph.has_edge(i, a))
    {
      completion.add(i, a);
    }
  }
  while (true)
  {
    Matching next = augment(graph, completion);
    if (next == completion)
    {
      break;
    }
    completion = std::move(next);
  }
  for (auto const &[i, a] : priority.edges())
  {
    if (!completion.has_buyer(i) && !completion.has_item(a))
    {
      completion.add(i, a);
    }
  }
  return completion;
}

RoundDecision decide_round(Economy const &economy, MechanismState const &state)
{
  RoundDecision        decision;
  DemandSituation const remaining = state.demands.restricted_to(state.unsold_buyers());
  Matching const        matching  = max_matching(remaining);
  if (matching.size() == remaining.demanders().size())
  {
    decision.kind = RoundDecision::Kind::Terminate;
    return decision;
  }

  decision.x_min = minimal_over_demanded_set(remaining, matching);
  ItemSet capped;
  for (auto a : decision.x_min)
  {
    if (state.prices[a] == economy.upper_bound(a))
    {
      capped.insert(a);
    }
  }
  if (capped.empty())
  {
    decision.kind = RoundDecision::Kind::RaisePrices;
    return decision;
  }
  decision.kind         = RoundDecision::Kind::Lottery;
  decision.lottery_item = capped.lowest();
  decision.entrants     = lottery_entrants(state, decision.x_min, decision.lottery_item);
  return decision;
}

Matching complete_allocation(Economy const &economy, MechanismState const &state)
{
  BuyerSet const        unsold    = state.unsold_buyers();
  DemandSituation const remaining = state.demands.restricted_to(unsold);
  Matching const        extra =
      complete_sales(remaining, state.sold, state.prices, PriceVector::lower_bounds(economy));

  Matching full = state.sold;
  for (auto const &[i, a] : extra.edges())
  {
    full.add(i, a);
  }
  for (auto i : remaining.demanders())
  {
    if (!full.has_buyer(i))
    {
      std::ostringstream os;
      os << "buyer " << i + 1 << " demands only real items but was left unmatched";
      throw Error(ErrorCode::InternalInvariant, os.str());
    }
  }
  return full;
}

namespace {

RoundRecord snapshot(Economy const &economy, MechanismState const &state,
                     std::string label, ItemSet const &x_min)
{
  RoundRecord r;
  r.round       = state.round;
  r.label       = std::move(label);
  r.prices      = state.prices;
  r.x_min       = x_min;
  r.sold_buyers = state.sold.matched_buyers();
  r.sold_items  = state.sold_items();
  for (BuyerIndex i = 0; i < economy.buyer_count(); ++i)
  {
    r.forbidden.push_back(state.rationing.forbidden_items(i));
    if (r.sold_buyers.contains(i))
    {
      r.demands.emplace_back(std::nullopt);
    }
    else
    {
      r.demands.emplace_back(state.demands.demand(i));
    }
  }
  return r;
}

}  // namespace

MechanismResult run_mapr(Economy const &economy, LotteryPolicy &policy)
{
  MechanismState state = MechanismState::initial(economy);
  Trace          trace;
  std::string    branch;

  auto const round_limit =
      static_cast<std::size_t>(economy.total_price_spread()) + economy.item_count() + 1;

  while (true)
  {
    if (state.round > round_limit)
    {
      throw Error(ErrorCode::InternalInvariant, "mechanism exceeded its round bound");
    }
    state               = refresh_demands(economy, std::move(state));
    RoundDecision plan  = decide_round(economy, state);
    RoundRecord   record =
        snapshot(economy, state, std::to_string(state.round) + branch, plan.x_min);

    switch (plan.kind)
    {
    case RoundDecision::Kind::Terminate:
    {
      trace.rounds.push_back(std::move(record));
      MechanismResult result;
      result.final_matching = complete_allocation(economy, state);
      result.allocation     = matching_to_allocation(result.final_matching, economy.buyer_count());
      result.prices         = state.prices;
      result.rationing      = state.rationing;
      result.trace          = std::move(trace);
      return result;
    }
    case RoundDecision::Kind::RaisePrices:
      trace.rounds.push_back(std::move(record));
      state = price_increase_step(economy, std::move(state), plan.x_min);
      ++trace.price_increases;
      break;
    case RoundDecision::Kind::Lottery:
    {
      auto [next, event] =
          lottery_step(economy, std::move(state), plan.x_min, plan.lottery_item, policy);
      state = std::move(next);
      auto const position =
          std::find(event.entrants.begin(), event.entrants.end(), event.winner) -
          event.entrants.begin();
      branch += "." + std::to_string(position + 1);
      record.lottery = event;
      trace.rounds.push_back(std::move(record));
      trace.lotteries.push_back(std::move(event));
      break;
    }
    }
  }
}

}  // namespace mapr
