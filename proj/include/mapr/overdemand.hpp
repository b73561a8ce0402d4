#pragma once

#include "mapr/matching.hpp"
#include "mapr/model.hpp"

namespace mapr {

struct OverdemandReport
{
  BuyerIndex seed_buyer = 0;
  ItemSet    grown_set;
  ItemSet    minimal_set;
};

/// |{i : D_i subset of items}| > |items|. Throws DummyInSet if o is included.
bool is_over_demanded(DemandSituation const &demands, ItemSet const &items);

/// |{i : D_i meets items}| >= |items|. Throws DummyInSet if o is included.
bool is_not_under_demanded(DemandSituation const &demands, ItemSet const &items);

struct GrownSet
{
  BuyerIndex seed_buyer = 0;
  ItemSet    items;
};

/// Starting from the lowest-index demander left unmatched by `matching`, grows
/// X_0 = D_seed, X_{k+1} = union of the demands of buyers matched into X_k,
/// until the set stops changing. Requires `matching` to be a maximum matching
/// of `demands` that leaves some demander uncovered; throws EquilibriumExists
/// otherwise.
GrownSet grow_over_demanded(DemandSituation const &demands, Matching const &matching);

/// Minimal over-demanded set. Grows an over-demanded set, then drops items in
/// ascending index order whenever the remainder stays over-demanded.
ItemSet minimal_over_demanded_set(DemandSituation const &demands, Matching const &matching);

OverdemandReport analyze_overdemand(DemandSituation const &demands, Matching const &matching);

}  // namespace mapr
