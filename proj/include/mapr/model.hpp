#pragma once

#include "mapr/error.hpp"
#include "mapr/index_set.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mapr {

using Money      = std::int64_t;
using BuyerIndex = std::size_t;
using ItemIndex  = std::size_t;

// Item index 0 is always the dummy item o. Real items occupy 1..m.
inline constexpr ItemIndex        kDummyItem = 0;
inline constexpr std::string_view kDummyName = "o";

inline constexpr std::size_t kMaxItems  = 128;  // including the dummy
inline constexpr std::size_t kMaxBuyers = 128;

// Entries are capped so that sums over every item stay far inside Money.
inline constexpr Money kMaxEntry = Money{1} << 40;

using ItemSet  = IndexSet<kMaxItems>;
using BuyerSet = IndexSet<kMaxBuyers>;

/// Unvalidated economy data. Valuation rows and bound vectors include the
/// dummy at column 0, so violations of the dummy invariants are expressible.
struct RawEconomy
{
  std::vector<std::string>        items;  // real item names, in index order 1..m
  std::size_t                     buyers = 0;
  std::vector<std::vector<Money>> valuations;
  std::vector<Money>              lower_bounds;
  std::vector<Money>              upper_bounds;
};

enum class EconomyErrorKind
{
  NonZeroDummyValuation,
  BoundsCrossed,
  NonZeroDummyBounds,
  NegativeEntry,
  EntryTooLarge,
  DimensionMismatch,
  DuplicateItemName,
  ReservedItemName,
  CapacityExceeded,
};

std::string_view to_string(EconomyErrorKind kind);

struct EconomyError
{
  EconomyErrorKind kind;
  std::string      message;
};

/// Buyers, items, integer valuations and price bounds. Immutable once
/// validated; obtain instances through validate_economy().
class Economy
{
public:
  std::size_t buyer_count() const
  {
    return valuations_.size();
  }

  // Including the dummy.
  std::size_t item_count() const
  {
    return names_.size();
  }

  std::size_t real_item_count() const
  {
    return names_.size() - 1;
  }

  Money value(BuyerIndex buyer, ItemIndex item) const
  {
    return valuations_[buyer][item];
  }

  std::vector<Money> const &values_of(BuyerIndex buyer) const
  {
    return valuations_[buyer];
  }

  Money lower_bound(ItemIndex item) const
  {
    return lower_[item];
  }

  Money upper_bound(ItemIndex item) const
  {
    return upper_[item];
  }

  std::vector<Money> const &lower_bounds() const
  {
    return lower_;
  }

  std::vector<Money> const &upper_bounds() const
  {
    return upper_;
  }

  std::string const &item_name(ItemIndex item) const
  {
    return names_[item];
  }

  std::optional<ItemIndex> find_item(std::string_view name) const;

  // Real items {1..m}.
  ItemSet real_items() const;
  BuyerSet all_buyers() const;

  // Sum over items of (upper - lower): the bound on price-increase rounds.
  Money total_price_spread() const;

  // Copy with one buyer's valuation row replaced; the row must satisfy the
  // same invariants (checked).
  Economy with_valuations(BuyerIndex buyer, std::vector<Money> row) const;

  RawEconomy to_raw() const;

private:
  friend struct EconomyValidation validate_economy(RawEconomy raw);

  Economy() = default;

  std::vector<std::string>        names_;  // names_[0] == "o"
  std::vector<std::vector<Money>> valuations_;
  std::vector<Money>              lower_;
  std::vector<Money>              upper_;
};

struct EconomyValidation
{
  std::optional<Economy>    economy;
  std::vector<EconomyError> errors;

  bool ok() const
  {
    return economy.has_value();
  }
};

/// Checks every invariant and reports all violations at once.
EconomyValidation validate_economy(RawEconomy raw);

/// Integer price per item (dummy at index 0).
struct PriceVector
{
  std::vector<Money> values;

  PriceVector() = default;
  explicit PriceVector(std::vector<Money> v)
    : values(std::move(v))
  {}

  static PriceVector lower_bounds(Economy const &economy)
  {
    return PriceVector(economy.lower_bounds());
  }

  Money operator[](ItemIndex item) const
  {
    return values[item];
  }

  Money &operator[](ItemIndex item)
  {
    return values[item];
  }

  std::size_t size() const
  {
    return values.size();
  }

  bool admissible(Economy const &economy) const;

  friend bool operator==(PriceVector const &, PriceVector const &) = default;
};

/// Binary permission matrix R(i, a), stored as the allowed item set per buyer.
class RationingSystem
{
public:
  RationingSystem() = default;

  // Every buyer allowed every item.
  static RationingSystem full(std::size_t buyers, std::size_t items);

  std::size_t buyer_count() const
  {
    return allowed_.size();
  }

  std::size_t item_count() const
  {
    return items_;
  }

  bool allows(BuyerIndex buyer, ItemIndex item) const
  {
    return allowed_[buyer].contains(item);
  }

  ItemSet const &allowed_items(BuyerIndex buyer) const
  {
    return allowed_[buyer];
  }

  // U_i = {a : R(i, a) = 0}
  ItemSet forbidden_items(BuyerIndex buyer) const;

  void forbid(BuyerIndex buyer, ItemIndex item)
  {
    allowed_[buyer].erase(item);
  }

  void permit(BuyerIndex buyer, ItemIndex item)
  {
    allowed_[buyer].insert(item);
  }

  // R(i, o) = 1 for every buyer.
  bool valid() const;

  friend bool operator==(RationingSystem const &, RationingSystem const &) = default;

private:
  std::size_t          items_ = 0;
  std::vector<ItemSet> allowed_;
};

/// Per-buyer demand sets. A demand situation may be restricted to a subset of
/// the buyers (its members); non-members are ignored by every consumer.
class DemandSituation
{
public:
  DemandSituation() = default;

  // All buyers are members. Throws InvalidInput if some member's demand is
  // empty. item_count defaults to one past the largest demanded index.
  explicit DemandSituation(std::vector<ItemSet> demands, std::size_t item_count = 0);

  DemandSituation(std::vector<ItemSet> demands, BuyerSet members, std::size_t item_count = 0);

  DemandSituation restricted_to(BuyerSet const &buyers) const;

  std::size_t buyer_count() const
  {
    return demands_.size();
  }

  // Including the dummy.
  std::size_t item_count() const
  {
    return items_;
  }

  BuyerSet const &members() const
  {
    return members_;
  }

  bool contains(BuyerIndex buyer) const
  {
    return members_.contains(buyer);
  }

  ItemSet const &demand(BuyerIndex buyer) const
  {
    return demands_[buyer];
  }

  // {i in members : o not in D_i}
  BuyerSet demanders() const;

  friend bool operator==(DemandSituation const &, DemandSituation const &) = default;

private:
  std::vector<ItemSet> demands_;
  BuyerSet             members_;
  std::size_t          items_ = 0;
};

/// Buyer -> item map, injective on real items.
class Allocation
{
public:
  Allocation() = default;

  // Throws InvalidAllocation if two buyers share a real item.
  explicit Allocation(std::vector<ItemIndex> assignment);

  static Allocation all_dummy(std::size_t buyers)
  {
    return Allocation(std::vector<ItemIndex>(buyers, kDummyItem));
  }

  std::size_t buyer_count() const
  {
    return assignment_.size();
  }

  ItemIndex operator[](BuyerIndex buyer) const
  {
    return assignment_[buyer];
  }

  std::vector<ItemIndex> const &assignment() const
  {
    return assignment_;
  }

  bool is_assigned(ItemIndex item) const;

  friend bool operator==(Allocation const &, Allocation const &) = default;

private:
  std::vector<ItemIndex> assignment_;
};

/// V_i(p, R) = max{u_i(a) - p_a : R(i, a) = 1}
Money indirect_utility(Economy const &economy, PriceVector const &prices,
                       RationingSystem const &rationing, BuyerIndex buyer);

/// D_i(p, R): allowed items attaining V_i(p, R).
ItemSet demand_set(Economy const &economy, PriceVector const &prices,
                   RationingSystem const &rationing, BuyerIndex buyer);

DemandSituation demand_situation(Economy const &economy, PriceVector const &prices,
                                 RationingSystem const &rationing);

}  // namespace mapr
