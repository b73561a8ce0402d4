#pragma once

#include "mapr/equilibrium.hpp"
#include "mapr/expectation.hpp"
#include "mapr/mechanism.hpp"
#include "mapr/model.hpp"
#include "mapr/strategy.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace mapr {

using Json = nlohmann::json;

/// Economy file format. The dummy is implicit: rows and bound vectors list
/// real items only.
///   {"items": ["a", ...], "buyers": n, "valuations": [[...], ...],
///    "lower_bounds": [...], "upper_bounds": [...]}
/// Throws Error(InvalidInput) with every problem found.
Economy parse_economy(std::string_view text);
Economy load_economy(std::string const &path);
Json    economy_to_json(Economy const &economy);

/// (p, R, pi) as exchanged by `run --format json` and `check`:
///   {"prices": [real items], "rationing_zeros": [[buyer, "item"], ...],
///    "allocation": ["item" or "o" per buyer]}
/// Buyers are 1-based.
struct Outcome
{
  PriceVector     prices;
  RationingSystem rationing;
  Allocation      allocation;
};

Outcome parse_outcome(Economy const &economy, std::string_view text);
Json    outcome_to_json(Economy const &economy, Outcome const &outcome);

/// Reads a file holding an outcome object. Several JSON lines are accepted;
/// the last non-empty one is used, so a whole `run --format json` dump loads.
Outcome load_outcome(Economy const &economy, std::string const &path);

/// "a" -> item index; "o" is the dummy. Throws InvalidInput otherwise.
ItemIndex parse_item(Economy const &economy, std::string_view name);

/// "{a,c}" style rendering in item order; "{}" when empty.
std::string format_items(Economy const &economy, ItemSet const &items);
std::string format_buyers(BuyerSet const &buyers);

Json round_to_json(Economy const &economy, RoundRecord const &round);

/// One JSON object per round followed by the terminal outcome.
std::string trace_to_json_lines(Economy const &economy, MechanismResult const &result);

/// Fixed-width table: t, one price column per item, X_min, U_i per buyer, N',
/// D_i per buyer (blank once sold), X'; then the final prices and allocation.
std::string render_trace_table(Economy const &economy, MechanismResult const &result);

std::string render_certificate(Economy const &economy, EquilibriumCertificate const &certificate);

}  // namespace mapr
