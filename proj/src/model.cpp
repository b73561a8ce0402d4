#include "mapr/model.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

namespace mapr {

std::string_view to_string(ErrorCode code)
{
  switch (code)
  {
  case ErrorCode::InvalidInput:
    return "InvalidInput";
  case ErrorCode::InvalidAllocation:
    return "InvalidAllocation";
  case ErrorCode::InvalidMatching:
    return "InvalidMatching";
  case ErrorCode::DummyInSet:
    return "DummyInSet";
  case ErrorCode::EquilibriumExists:
    return "EquilibriumExists";
  case ErrorCode::UpperBoundViolation:
    return "UpperBoundViolation";
  case ErrorCode::NoEntrants:
    return "NoEntrants";
  case ErrorCode::ScriptedWinnerNotEntrant:
    return "ScriptedWinnerNotEntrant";
  case ErrorCode::ScriptExhausted:
    return "ScriptExhausted";
  case ErrorCode::SizeGuard:
    return "SizeGuard";
  case ErrorCode::TreeSizeExceeded:
    return "TreeSizeExceeded";
  case ErrorCode::NotTwoBuyers:
    return "NotTwoBuyers";
  case ErrorCode::InvalidStrategy:
    return "InvalidStrategy";
  case ErrorCode::InternalInvariant:
    return "InternalInvariant";
  }
  return "Unknown";
}

std::string_view to_string(EconomyErrorKind kind)
{
  switch (kind)
  {
  case EconomyErrorKind::NonZeroDummyValuation:
    return "NonZeroDummyValuation";
  case EconomyErrorKind::BoundsCrossed:
    return "BoundsCrossed";
  case EconomyErrorKind::NonZeroDummyBounds:
    return "NonZeroDummyBounds";
  case EconomyErrorKind::NegativeEntry:
    return "NegativeEntry";
  case EconomyErrorKind::EntryTooLarge:
    return "EntryTooLarge";
  case EconomyErrorKind::DimensionMismatch:
    return "DimensionMismatch";
  case EconomyErrorKind::DuplicateItemName:
    return "DuplicateItemName";
  case EconomyErrorKind::ReservedItemName:
    return "ReservedItemName";
  case EconomyErrorKind::CapacityExceeded:
    return "CapacityExceeded";
  }
  return "Unknown";
}

namespace {

template <typename... Parts>
std::string concat(Parts const &...parts)
{
  std::ostringstream os;
  (os << ... << parts);
  return os.str();
}

}  // namespace

EconomyValidation validate_economy(RawEconomy raw)
{
  EconomyValidation result;
  auto             &errors = result.errors;
  auto add = [&errors](EconomyErrorKind kind, std::string message) {
    errors.push_back(EconomyError{kind, std::move(message)});
  };

  std::size_t const items = raw.items.size() + 1;
  if (items > kMaxItems)
  {
    add(EconomyErrorKind::CapacityExceeded,
        concat("at most ", kMaxItems - 1, " real items are supported, got ", items - 1));
  }
  if (raw.buyers > kMaxBuyers)
  {
    add(EconomyErrorKind::CapacityExceeded,
        concat("at most ", kMaxBuyers, " buyers are supported, got ", raw.buyers));
  }

  std::set<std::string> seen;
  for (auto const &name : raw.items)
  {
    if (name == kDummyName)
    {
      add(EconomyErrorKind::ReservedItemName,
          concat("item name '", name, "' is reserved for the dummy item"));
    }
    else if (!seen.insert(name).second)
    {
      add(EconomyErrorKind::DuplicateItemName, concat("duplicate item name '", name, "'"));
    }
  }

  auto check_entry = [&](Money v, std::string const &where) {
    if (v < 0)
    {
      add(EconomyErrorKind::NegativeEntry, concat(where, " is negative (", v, ")"));
    }
    else if (v > kMaxEntry)
    {
      add(EconomyErrorKind::EntryTooLarge, concat(where, " exceeds ", kMaxEntry));
    }
  };

  bool dims_ok = true;
  if (raw.valuations.size() != raw.buyers)
  {
    add(EconomyErrorKind::DimensionMismatch,
        concat("expected ", raw.buyers, " valuation rows, got ", raw.valuations.size()));
    dims_ok = false;
  }
  for (std::size_t i = 0; i < raw.valuations.size(); ++i)
  {
    if (raw.valuations[i].size() != items)
    {
      add(EconomyErrorKind::DimensionMismatch,
          concat("valuation row of buyer ", i + 1, " has ", raw.valuations[i].size(),
                 " entries, expected ", items));
      dims_ok = false;
    }
  }
  if (raw.lower_bounds.size() != items || raw.upper_bounds.size() != items)
  {
    add(EconomyErrorKind::DimensionMismatch,
        concat("bound vectors must have ", items, " entries"));
    dims_ok = false;
  }

  if (dims_ok)
  {
    for (std::size_t i = 0; i < raw.buyers; ++i)
    {
      auto const &row = raw.valuations[i];
      if (row[kDummyItem] != 0)
      {
        add(EconomyErrorKind::NonZeroDummyValuation,
            concat("buyer ", i + 1, " values the dummy item at ", row[kDummyItem]));
      }
      for (std::size_t a = 1; a < items; ++a)
      {
        check_entry(row[a], concat("valuation u[", i + 1, "][", raw.items[a - 1], "]"));
      }
    }
    if (raw.lower_bounds[kDummyItem] != 0 || raw.upper_bounds[kDummyItem] != 0)
    {
      add(EconomyErrorKind::NonZeroDummyBounds, "dummy item bounds must both be 0");
    }
    for (std::size_t a = 1; a < items; ++a)
    {
      auto const &name = raw.items[a - 1];
      check_entry(raw.lower_bounds[a], concat("lower bound of ", name));
      check_entry(raw.upper_bounds[a], concat("upper bound of ", name));
      if (raw.lower_bounds[a] > raw.upper_bounds[a])
      {
        add(EconomyErrorKind::BoundsCrossed,
            concat("item ", name, " has lower bound ", raw.lower_bounds[a],
                   " above upper bound ", raw.upper_bounds[a]));
      }
    }
  }

  if (!errors.empty())
  {
    return result;
  }

  Economy e;
  e.names_.reserve(items);
  e.names_.emplace_back(kDummyName);
  for (auto &name : raw.items)
  {
    e.names_.push_back(std::move(name));
  }
  e.valuations_ = std::move(raw.valuations);
  e.lower_      = std::move(raw.lower_bounds);
  e.upper_      = std::move(raw.upper_bounds);
  result.economy = std::move(e);
  return result;
}

std::optional<ItemIndex> Economy::find_item(std::string_view name) const
{
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end())
  {
    return std::nullopt;
  }
  return static_cast<ItemIndex>(it - names_.begin());
}

ItemSet Economy::real_items() const
{
  return ItemSet::first_n(item_count()) - ItemSet{kDummyItem};
}

BuyerSet Economy::all_buyers() const
{
  return BuyerSet::first_n(buyer_count());
}

Money Economy::total_price_spread() const
{
  Money total = 0;
  for (std::size_t a = 0; a < item_count(); ++a)
  {
    total += upper_[a] - lower_[a];
  }
  return total;
}

Economy Economy::with_valuations(BuyerIndex buyer, std::vector<Money> row) const
{
  RawEconomy raw        = to_raw();
  raw.valuations.at(buyer) = std::move(row);
  auto checked          = validate_economy(std::move(raw));
  if (!checked.ok())
  {
    throw Error(ErrorCode::InvalidStrategy, checked.errors.front().message);
  }
  return std::move(*checked.economy);
}

RawEconomy Economy::to_raw() const
{
  RawEconomy raw;
  raw.items.assign(names_.begin() + 1, names_.end());
  raw.buyers       = buyer_count();
  raw.valuations   = valuations_;
  raw.lower_bounds = lower_;
  raw.upper_bounds = upper_;
  return raw;
}

bool PriceVector::admissible(Economy const &economy) const
{
  if (values.size() != economy.item_count() || values[kDummyItem] != 0)
  {
    return false;
  }
  for (std::size_t a = 0; a < values.size(); ++a)
  {
    if (values[a] < economy.lower_bound(a) || values[a] > economy.upper_bound(a))
    {
      return false;
    }
  }
  return true;
}

RationingSystem RationingSystem::full(std::size_t buyers, std::size_t items)
{
  RationingSystem r;
  r.items_ = items;
  r.allowed_.assign(buyers, ItemSet::first_n(items));
  return r;
}

ItemSet RationingSystem::forbidden_items(BuyerIndex buyer) const
{
  return ItemSet::first_n(items_) - allowed_[buyer];
}

bool RationingSystem::valid() const
{
  return std::all_of(allowed_.begin(), allowed_.end(),
                     [](ItemSet const &s) { return s.contains(kDummyItem); });
}

DemandSituation::DemandSituation(std::vector<ItemSet> demands, std::size_t item_count)
  : DemandSituation(demands, BuyerSet::first_n(demands.size()), item_count)
{}

DemandSituation::DemandSituation(std::vector<ItemSet> demands, BuyerSet members,
                                 std::size_t item_count)
  : demands_(std::move(demands))
  , members_(members)
  , items_(item_count)
{
  for (auto const &d : demands_)
  {
    for (auto a : d)
    {
      items_ = std::max(items_, a + 1);
    }
  }
  for (auto i : members_)
  {
    if (i >= demands_.size())
    {
      throw Error(ErrorCode::InvalidInput, "demand situation member out of range");
    }
    if (demands_[i].empty())
    {
      throw Error(ErrorCode::InvalidInput,
                  concat("demand set of buyer ", i + 1, " is empty"));
    }
  }
}

DemandSituation DemandSituation::restricted_to(BuyerSet const &buyers) const
{
  DemandSituation d;
  d.demands_ = demands_;
  d.members_ = members_ & buyers;
  d.items_   = items_;
  return d;
}

BuyerSet DemandSituation::demanders() const
{
  BuyerSet out;
  for (auto i : members_)
  {
    if (!demands_[i].contains(kDummyItem))
    {
      out.insert(i);
    }
  }
  return out;
}

Allocation::Allocation(std::vector<ItemIndex> assignment)
  : assignment_(std::move(assignment))
{
  ItemSet used;
  for (std::size_t i = 0; i < assignment_.size(); ++i)
  {
    auto a = assignment_[i];
    if (a == kDummyItem)
    {
      continue;
    }
    if (used.contains(a))
    {
      throw Error(ErrorCode::InvalidAllocation,
                  concat("item ", a, " is assigned to more than one buyer"));
    }
    used.insert(a);
  }
}

bool Allocation::is_assigned(ItemIndex item) const
{
  return std::find(assignment_.begin(), assignment_.end(), item) != assignment_.end();
}

Money indirect_utility(Economy const &economy, PriceVector const &prices,
                       RationingSystem const &rationing, BuyerIndex buyer)
{
  Money best = std::numeric_limits<Money>::min();
  auto const &values = economy.values_of(buyer);
  for (auto a : rationing.allowed_items(buyer))
  {
    best = std::max(best, values[a] - prices[a]);
  }
  return best;
}

ItemSet demand_set(Economy const &economy, PriceVector const &prices,
                   RationingSystem const &rationing, BuyerIndex buyer)
{
  Money const best   = indirect_utility(economy, prices, rationing, buyer);
  auto const &values = economy.values_of(buyer);
  ItemSet     out;
  for (auto a : rationing.allowed_items(buyer))
  {
    if (values[a] - prices[a] == best)
    {
      out.insert(a);
    }
  }
  return out;
}

DemandSituation demand_situation(Economy const &economy, PriceVector const &prices,
                                 RationingSystem const &rationing)
{
  std::vector<ItemSet> demands;
  demands.reserve(economy.buyer_count());
  for (BuyerIndex i = 0; i < economy.buyer_count(); ++i)
  {
    demands.push_back(demand_set(economy, prices, rationing, i));
  }
  return DemandSituation(std::move(demands), economy.item_count());
}

}  // namespace mapr
