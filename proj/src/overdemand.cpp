#include "mapr/overdemand.hpp"

namespace mapr {

namespace {

void reject_dummy(ItemSet const &items)
{
  if (items.contains(kDummyItem))
  {
    throw Error(ErrorCode::DummyInSet, "item set must not contain the dummy item");
  }
}

}  // namespace

bool is_over_demanded(DemandSituation const &demands, ItemSet const &items)
{
  reject_dummy(items);
  std::size_t inside = 0;
  for (auto i : demands.members())
  {
    if (demands.demand(i).is_subset_of(items))
    {
      ++inside;
    }
  }
  return inside > items.size();
}

bool is_not_under_demanded(DemandSituation const &demands, ItemSet const &items)
{
  reject_dummy(items);
  std::size_t touching = 0;
  for (auto i : demands.members())
  {
    if (demands.demand(i).intersects(items))
    {
      ++touching;
    }
  }
  return touching >= items.size();
}

GrownSet grow_over_demanded(DemandSituation const &demands, Matching const &matching)
{
  BuyerSet const uncovered = demands.demanders() - matching.matched_buyers();
  if (uncovered.empty())
  {
    throw Error(ErrorCode::EquilibriumExists,
                "every demander is matched; no over-demanded set exists");
  }

  GrownSet out;
  out.seed_buyer = uncovered.lowest();

  ItemSet frontier = demands.demand(out.seed_buyer);
  ItemSet grown;
  while (!frontier.empty())
  {
    BuyerSet holders;
    for (auto a : frontier)
    {
      BuyerIndex j = matching.buyer_of(a);
      if (j == Matching::kNone)
      {
        throw Error(ErrorCode::InvalidMatching,
                    "an augmenting path exists; the matching is not maximum");
      }
      holders.insert(j);
    }
    grown |= frontier;
    frontier.clear();
    for (auto j : holders)
    {
      frontier |= demands.demand(j);
    }
    frontier -= grown;
  }
  out.items = grown;
  return out;
}

OverdemandReport analyze_overdemand(DemandSituation const &demands, Matching const &matching)
{
  GrownSet grown = grow_over_demanded(demands, matching);

  OverdemandReport report;
  report.seed_buyer = grown.seed_buyer;
  report.grown_set  = grown.items;

  ItemSet minimal;
  ItemSet remaining = grown.items;
  for (auto a : grown.items)
  {
    remaining.erase(a);
    ItemSet const candidate = minimal | remaining;

    BuyerSet inside;
    for (auto i : demands.members())
    {
      if (demands.demand(i).is_subset_of(candidate))
      {
        inside.insert(i);
      }
    }
    // Without a the remainder is not over-demanded, so a must stay.
    if (max_matching(demands.restricted_to(inside)).size() == inside.size())
    {
      minimal.insert(a);
    }
  }
  report.minimal_set = minimal;
  return report;
}

ItemSet minimal_over_demanded_set(DemandSituation const &demands, Matching const &matching)
{
  return analyze_overdemand(demands, matching).minimal_set;
}

}  // namespace mapr
