#pragma once

#include "mapr/model.hpp"

#include <array>
#include <optional>
#include <string>

namespace mapr {

/// Verdicts for the five constrained Walrasian equilibrium conditions:
///  1. prices admissible, rationing valid;
///  2. every buyer receives an item from its constrained demand;
///  3. unassigned items sit at their lower bound;
///  4. an item anyone is rationed from is assigned and at its upper bound;
///  5. lifting a single ration (i, a) would make i demand a.
struct EquilibriumCertificate
{
  struct Witness
  {
    std::optional<BuyerIndex> buyer;
    std::optional<ItemIndex>  item;
  };

  struct Condition
  {
    bool                   holds = true;
    std::optional<Witness> witness;  // first violation found
  };

  std::array<Condition, 5> conditions;

  // 1-based condition number, as in the list above.
  Condition const &condition(std::size_t number) const
  {
    return conditions.at(number - 1);
  }

  bool holds() const
  {
    for (auto const &c : conditions)
    {
      if (!c.holds)
      {
        return false;
      }
    }
    return true;
  }
};

EquilibriumCertificate check_cwe(Economy const &economy, PriceVector const &prices,
                                 RationingSystem const &rationing, Allocation const &allocation);

inline constexpr std::size_t kBruteForceGuard = 25;  // |N| * |X| (real items)

/// Exhaustive search for an allocation consistent with `demands` that gives
/// every buyer without o in its demand a real item from it. Throws SizeGuard
/// when |members| * |real items| exceeds kBruteForceGuard.
std::optional<Allocation> brute_force_equilibrium_allocation(DemandSituation const &demands);

}  // namespace mapr
