#include "mapr/equilibrium.hpp"

#include <functional>
#include <vector>

namespace mapr {

namespace {

using Condition = EquilibriumCertificate::Condition;
using Witness   = EquilibriumCertificate::Witness;

void fail(Condition &c, std::optional<BuyerIndex> buyer, std::optional<ItemIndex> item)
{
  if (c.holds)
  {
    c.holds   = false;
    c.witness = Witness{buyer, item};
  }
}

}  // namespace

EquilibriumCertificate check_cwe(Economy const &economy, PriceVector const &prices,
                                 RationingSystem const &rationing, Allocation const &allocation)
{
  EquilibriumCertificate cert;
  auto &admissibility = cert.conditions[0];
  auto &in_demand     = cert.conditions[1];
  auto &unsold_low    = cert.conditions[2];
  auto &ration_capped = cert.conditions[3];
  auto &ration_binds  = cert.conditions[4];

  std::size_t const buyers = economy.buyer_count();
  std::size_t const items  = economy.item_count();
  if (prices.size() != items || rationing.buyer_count() != buyers ||
      rationing.item_count() != items || allocation.buyer_count() != buyers)
  {
    throw Error(ErrorCode::InvalidInput, "tuple dimensions do not match the economy");
  }

  if (prices[kDummyItem] != 0)
  {
    fail(admissibility, std::nullopt, kDummyItem);
  }
  for (ItemIndex a = 0; a < items; ++a)
  {
    if (prices[a] < economy.lower_bound(a) || prices[a] > economy.upper_bound(a))
    {
      fail(admissibility, std::nullopt, a);
    }
  }
  for (BuyerIndex i = 0; i < buyers; ++i)
  {
    if (!rationing.allows(i, kDummyItem))
    {
      fail(admissibility, i, kDummyItem);
    }
  }

  for (BuyerIndex i = 0; i < buyers; ++i)
  {
    if (!demand_set(economy, prices, rationing, i).contains(allocation[i]))
    {
      fail(in_demand, i, allocation[i]);
    }
  }

  for (ItemIndex a = 1; a < items; ++a)
  {
    if (!allocation.is_assigned(a) && prices[a] != economy.lower_bound(a))
    {
      fail(unsold_low, std::nullopt, a);
    }
  }

  for (ItemIndex a = 1; a < items; ++a)
  {
    for (BuyerIndex j = 0; j < buyers; ++j)
    {
      if (rationing.allows(j, a))
      {
        continue;
      }
      if (prices[a] != economy.upper_bound(a) || !allocation.is_assigned(a))
      {
        fail(ration_capped, j, a);
      }
    }
  }

  for (BuyerIndex i = 0; i < buyers; ++i)
  {
    for (ItemIndex a = 1; a < items; ++a)
    {
      if (rationing.allows(i, a))
      {
        continue;
      }
      RationingSystem lifted = rationing;
      lifted.permit(i, a);
      if (!demand_set(economy, prices, lifted, i).contains(a))
      {
        fail(ration_binds, i, a);
      }
    }
  }
  return cert;
}

std::optional<Allocation> brute_force_equilibrium_allocation(DemandSituation const &demands)
{
  std::size_t const real_items = demands.item_count() > 0 ? demands.item_count() - 1 : 0;
  if (demands.members().size() * real_items > kBruteForceGuard)
  {
    throw Error(ErrorCode::SizeGuard, "instance too large for exhaustive allocation search");
  }

  std::vector<BuyerIndex> const demanders = demands.demanders().to_vector();
  std::vector<ItemIndex>        assignment(demands.buyer_count(), kDummyItem);
  ItemSet                       used;

  std::function<bool(std::size_t)> place = [&](std::size_t k) {
    if (k == demanders.size())
    {
      return true;
    }
    BuyerIndex const i = demanders[k];
    for (auto a : demands.demand(i))
    {
      if (used.contains(a))
      {
        continue;
      }
      used.insert(a);
      assignment[i] = a;
      if (place(k + 1))
      {
        return true;
      }
      used.erase(a);
      assignment[i] = kDummyItem;
    }
    return false;
  };

  if (!place(0))
  {
    return std::nullopt;
  }
  return Allocation(std::move(assignment));
}

}  // namespace mapr
