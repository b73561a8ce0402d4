#include "mapr/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace mapr {

namespace {

[[noreturn]] void bad_input(std::string const &message)
{
  throw Error(ErrorCode::InvalidInput, message);
}

Json parse_json(std::string_view text, std::string const &what)
{
  try
  {
    return Json::parse(text.begin(), text.end());
  }
  catch (Json::parse_error const &e)
  {
    bad_input("malformed JSON in " + what + ": " + e.what());
  }
}

std::string read_file(std::string const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    bad_input("cannot open file: " + path);
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json const &require(Json const &object, char const *key)
{
  auto it = object.find(key);
  if (it == object.end())
  {
    bad_input(std::string("missing field \"") + key + "\"");
  }
  return *it;
}

Money as_money(Json const &value, std::string const &where)
{
  if (!value.is_number_integer())
  {
    bad_input(where + " must be an integer");
  }
  return value.get<Money>();
}

std::vector<Money> money_row(Json const &value, std::string const &where)
{
  if (!value.is_array())
  {
    bad_input(where + " must be an array");
  }
  std::vector<Money> out{0};  // dummy
  for (std::size_t k = 0; k < value.size(); ++k)
  {
    out.push_back(as_money(value[k], where + "[" + std::to_string(k) + "]"));
  }
  return out;
}

Json item_names(Economy const &economy, ItemSet const &items)
{
  Json out = Json::array();
  for (auto a : items)
  {
    out.push_back(economy.item_name(a));
  }
  return out;
}

Json real_prices(PriceVector const &prices)
{
  Json out = Json::array();
  for (std::size_t a = 1; a < prices.size(); ++a)
  {
    out.push_back(prices[a]);
  }
  return out;
}

Outcome outcome_from_json(Economy const &economy, Json const &doc)
{
  if (!doc.is_object())
  {
    bad_input("outcome must be a JSON object");
  }
  std::size_t const n = economy.buyer_count();

  Outcome out;
  out.prices = PriceVector(money_row(require(doc, "prices"), "prices"));
  if (out.prices.size() != economy.item_count())
  {
    bad_input("prices must list one value per item");
  }

  out.rationing     = RationingSystem::full(n, economy.item_count());
  Json const &zeros = require(doc, "rationing_zeros");
  if (!zeros.is_array())
  {
    bad_input("rationing_zeros must be an array");
  }
  for (auto const &pair : zeros)
  {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
        !pair[1].is_string())
    {
      bad_input("rationing_zeros entries must be [buyer, \"item\"]");
    }
    auto const buyer = pair[0].get<std::int64_t>();
    if (buyer < 1 || static_cast<std::size_t>(buyer) > n)
    {
      bad_input("rationing_zeros names unknown buyer " + std::to_string(buyer));
    }
    out.rationing.forbid(static_cast<BuyerIndex>(buyer - 1),
                         parse_item(economy, pair[1].get<std::string>()));
  }

  Json const &alloc = require(doc, "allocation");
  if (!alloc.is_array() || alloc.size() != n)
  {
    bad_input("allocation must list one item per buyer");
  }
  std::vector<ItemIndex> assignment;
  for (auto const &name : alloc)
  {
    if (!name.is_string())
    {
      bad_input("allocation entries must be item names");
    }
    assignment.push_back(parse_item(economy, name.get<std::string>()));
  }
  out.allocation = Allocation(std::move(assignment));
  return out;
}

}  // namespace

Economy parse_economy(std::string_view text)
{
  Json const doc = parse_json(text, "economy");
  if (!doc.is_object())
  {
    bad_input("economy must be a JSON object");
  }

  RawEconomy  raw;
  Json const &items = require(doc, "items");
  if (!items.is_array())
  {
    bad_input("items must be an array of names");
  }
  for (auto const &name : items)
  {
    if (!name.is_string())
    {
      bad_input("items must be an array of names");
    }
    raw.items.push_back(name.get<std::string>());
  }

  Json const &buyers = require(doc, "buyers");
  if (!buyers.is_number_integer() || buyers.get<std::int64_t>() < 0)
  {
    bad_input("buyers must be a non-negative integer");
  }
  raw.buyers = buyers.get<std::size_t>();

  Json const &rows = require(doc, "valuations");
  if (!rows.is_array())
  {
    bad_input("valuations must be an array of rows");
  }
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    raw.valuations.push_back(money_row(rows[i], "valuations[" + std::to_string(i) + "]"));
  }
  raw.lower_bounds = money_row(require(doc, "lower_bounds"), "lower_bounds");
  raw.upper_bounds = money_row(require(doc, "upper_bounds"), "upper_bounds");

  EconomyValidation v = validate_economy(std::move(raw));
  if (!v.ok())
  {
    std::string message = "invalid economy:";
    for (auto const &e : v.errors)
    {
      message += "\n  " + std::string(to_string(e.kind)) + ": " + e.message;
    }
    bad_input(message);
  }
  return std::move(*v.economy);
}

Economy load_economy(std::string const &path)
{
  return parse_economy(read_file(path));
}

Json economy_to_json(Economy const &economy)
{
  RawEconomy const raw = economy.to_raw();
  auto strip = [](std::vector<Money> const &row) {
    return Json(std::vector<Money>(row.begin() + 1, row.end()));
  };
  Json rows = Json::array();
  for (auto const &row : raw.valuations)
  {
    rows.push_back(strip(row));
  }
  return Json{{"items", raw.items},
              {"buyers", raw.buyers},
              {"valuations", rows},
              {"lower_bounds", strip(raw.lower_bounds)},
              {"upper_bounds", strip(raw.upper_bounds)}};
}

ItemIndex parse_item(Economy const &economy, std::string_view name)
{
  auto item = economy.find_item(name);
  if (!item)
  {
    bad_input("unknown item \"" + std::string(name) + "\"");
  }
  return *item;
}

Outcome parse_outcome(Economy const &economy, std::string_view text)
{
  return outcome_from_json(economy, parse_json(text, "outcome"));
}

Outcome load_outcome(Economy const &economy, std::string const &path)
{
  std::string const text = read_file(path);
  std::string       last;
  std::string       all_lines;
  std::istringstream in(text);
  std::size_t        lines = 0;
  for (std::string line; std::getline(in, line);)
  {
    if (line.find_first_not_of(" \t\r") != std::string::npos)
    {
      last = line;
      ++lines;
    }
  }
  // A pretty-printed single object spans lines; only JSON-lines dumps are
  // split.
  if (lines > 1 && Json::accept(last))
  {
    return parse_outcome(economy, last);
  }
  return parse_outcome(economy, text);
}

Json outcome_to_json(Economy const &economy, Outcome const &outcome)
{
  Json zeros = Json::array();
  for (BuyerIndex i = 0; i < outcome.rationing.buyer_count(); ++i)
  {
    for (auto a : outcome.rationing.forbidden_items(i))
    {
      zeros.push_back(Json::array({i + 1, economy.item_name(a)}));
    }
  }
  Json alloc = Json::array();
  for (auto a : outcome.allocation.assignment())
  {
    alloc.push_back(economy.item_name(a));
  }
  return Json{{"prices", real_prices(outcome.prices)},
              {"rationing_zeros", zeros},
              {"allocation", alloc}};
}

std::string format_items(Economy const &economy, ItemSet const &items)
{
  std::string out = "{";
  bool        first = true;
  for (auto a : items)
  {
    if (!first)
    {
      out += ",";
    }
    out += economy.item_name(a);
    first = false;
  }
  return out + "}";
}

std::string format_buyers(BuyerSet const &buyers)
{
  std::string out = "{";
  bool        first = true;
  for (auto i : buyers)
  {
    if (!first)
    {
      out += ",";
    }
    out += std::to_string(i + 1);
    first = false;
  }
  return out + "}";
}

Json round_to_json(Economy const &economy, RoundRecord const &round)
{
  Json u_sets  = Json::array();
  Json demands = Json::array();
  for (std::size_t i = 0; i < round.forbidden.size(); ++i)
  {
    u_sets.push_back(item_names(economy, round.forbidden[i]));
    demands.push_back(round.demands[i] ? item_names(economy, *round.demands[i]) : Json(nullptr));
  }
  Json sold_buyers = Json::array();
  for (auto i : round.sold_buyers)
  {
    sold_buyers.push_back(i + 1);
  }

  Json out{{"t", round.round},
           {"label", round.label},
           {"prices", real_prices(round.prices)},
           {"x_min", item_names(economy, round.x_min)},
           {"u_sets", u_sets},
           {"sold_buyers", sold_buyers},
           {"demands", demands},
           {"sold_items", item_names(economy, round.sold_items)}};
  if (round.lottery)
  {
    Json entrants = Json::array();
    for (auto i : round.lottery->entrants)
    {
      entrants.push_back(i + 1);
    }
    out["lottery"] = Json{{"item", economy.item_name(round.lottery->item)},
                          {"entrants", entrants},
                          {"winner", round.lottery->winner + 1}};
  }
  return out;
}

std::string trace_to_json_lines(Economy const &economy, MechanismResult const &result)
{
  std::string out;
  for (auto const &round : result.trace.rounds)
  {
    out += round_to_json(economy, round).dump() + "\n";
  }
  Outcome const final{result.prices, result.rationing, result.allocation};
  out += outcome_to_json(economy, final).dump() + "\n";
  return out;
}

std::string render_trace_table(Economy const &economy, MechanismResult const &result)
{
  std::size_t const n = economy.buyer_count();

  std::vector<std::string> header{"t"};
  for (ItemIndex a = 0; a < economy.item_count(); ++a)
  {
    header.push_back("p_" + economy.item_name(a));
  }
  header.push_back("X_min");
  for (std::size_t i = 1; i <= n; ++i)
  {
    header.push_back("U_" + std::to_string(i));
  }
  header.push_back("N'");
  for (std::size_t i = 1; i <= n; ++i)
  {
    header.push_back("D_" + std::to_string(i));
  }
  header.push_back("X'");

  std::vector<std::vector<std::string>> rows{header};
  for (auto const &r : result.trace.rounds)
  {
    std::vector<std::string> row{r.label};
    for (ItemIndex a = 0; a < economy.item_count(); ++a)
    {
      row.push_back(std::to_string(r.prices[a]));
    }
    row.push_back(format_items(economy, r.x_min));
    for (auto const &u : r.forbidden)
    {
      row.push_back(format_items(economy, u));
    }
    row.push_back(format_buyers(r.sold_buyers));
    for (auto const &d : r.demands)
    {
      row.push_back(d ? format_items(economy, *d) : "");
    }
    row.push_back(format_items(economy, r.sold_items));
    rows.push_back(std::move(row));
  }

  std::vector<std::size_t> width(header.size(), 0);
  for (auto const &row : rows)
  {
    for (std::size_t c = 0; c < row.size(); ++c)
    {
      width[c] = std::max(width[c], row[c].size());
    }
  }

  std::ostringstream os;
  for (auto const &row : rows)
  {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c)
    {
      line += row[c];
      if (c + 1 < row.size())
      {
        line += std::string(width[c] - row[c].size() + 2, ' ');
      }
    }
    line.erase(line.find_last_not_of(' ') + 1);
    os << line << "\n";
  }

  os << "\nprices:";
  for (ItemIndex a = 0; a < economy.item_count(); ++a)
  {
    os << " " << economy.item_name(a) << "=" << result.prices[a];
  }
  os << "\nallocation:";
  for (BuyerIndex i = 0; i < n; ++i)
  {
    os << " " << i + 1 << "->" << economy.item_name(result.allocation[i]);
  }
  os << "\n";
  return os.str();
}

std::string render_certificate(Economy const &economy, EquilibriumCertificate const &certificate)
{
  static constexpr char const *kNames[5] = {
      "admissible prices and valid rationing",
      "every buyer gets a demanded item",
      "unassigned items at lower bound",
      "rationed items assigned at upper bound",
      "every ration binds",
  };
  std::ostringstream os;
  for (std::size_t k = 1; k <= 5; ++k)
  {
    auto const &c = certificate.condition(k);
    os << "condition " << k << " (" << kNames[k - 1] << "): " << (c.holds ? "ok" : "violated");
    if (!c.holds && c.witness)
    {
      os << " [";
      if (c.witness->buyer)
      {
        os << "buyer " << *c.witness->buyer + 1;
      }
      if (c.witness->item)
      {
        os << (c.witness->buyer ? ", " : "") << "item ";
        if (*c.witness->item < economy.item_count())
        {
          os << economy.item_name(*c.witness->item);
        }
        else
        {
          os << *c.witness->item;
        }
      }
      os << "]";
    }
    os << "\n";
  }
  os << (certificate.holds() ? "all conditions satisfied" : "not a constrained equilibrium")
     << "\n";
  return os.str();
}

}  // namespace mapr
