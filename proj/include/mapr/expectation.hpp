#pragma once

#include "mapr/mechanism.hpp"
#include "mapr/model.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace mapr {

/// Exact rational with arbitrary-precision numerator and denominator, always
/// kept in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

// "num/den", denominator always printed.
std::string to_fraction(Rational const &value);
double      to_double(Rational const &value);

/// Prices plus a rationing that encodes sold items: an item is either open to
/// every buyer or allowed to its holder only.
class AllocationSituation
{
public:
  // Throws InvalidInput when the rationing does not encode a partial matching.
  AllocationSituation(PriceVector prices, RationingSystem rationing);

  static AllocationSituation from_sold(PriceVector prices, Matching const &sold);

  PriceVector const &prices() const
  {
    return prices_;
  }

  RationingSystem const &rationing() const
  {
    return rationing_;
  }

  Matching sold_matching() const;

private:
  PriceVector     prices_;
  RationingSystem rationing_;
};

struct TreeStats
{
  std::size_t nodes     = 0;  // allocation situations visited
  std::size_t leaves    = 0;
  std::size_t lotteries = 0;
  Rational    probability_mass{0};
};

struct ExpectationReport
{
  std::vector<Rational> expected_profit;  // per buyer
  std::vector<Rational> expected_price;   // per item, dummy included
  TreeStats             stats;
};

struct ExpectationOptions
{
  std::size_t node_limit = 1'000'000;
  std::size_t leaf_limit = 1'000'000;
};

class TreeSizeExceeded : public Error
{
public:
  TreeSizeExceeded(std::string const &message, TreeStats partial)
    : Error(ErrorCode::TreeSizeExceeded, message)
    , partial_(std::move(partial))
  {}

  TreeStats const &partial() const
  {
    return partial_;
  }

private:
  TreeStats partial_;
};

/// Expected profit of every buyer and expected price of every item over the
/// lottery tree, every lottery being fair. A node with no over-demanded set
/// yields V_i(p, R) and p_a; a node whose minimal over-demanded set has no
/// capped item continues at the raised prices; otherwise the average over the
/// lottery entrants' branches is taken.
ExpectationReport expected_values(Economy const &economy, ExpectationOptions const &options = {});

struct History
{
  Rational                  probability{1};
  PriceVector               prices;
  RationingSystem           rationing;
  Allocation                allocation;
  std::vector<LotteryEvent> lotteries;
};

/// One entry per leaf of the lottery tree, depth-first with lottery entrants
/// in ascending order.
std::vector<History> enumerate_histories(Economy const &economy,
                                         ExpectationOptions const &options = {});

}  // namespace mapr
