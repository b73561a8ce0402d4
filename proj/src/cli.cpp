#include "mapr/cli.hpp"

#include "mapr/equilibrium.hpp"
#include "mapr/expectation.hpp"
#include "mapr/io.hpp"
#include "mapr/matching.hpp"
#include "mapr/mechanism.hpp"
#include "mapr/strategy.hpp"

#include <CLI11.hpp>

#include <ostream>

namespace mapr {

namespace {

std::string fraction_and_decimal(Rational const &value)
{
  std::ostringstream os;
  os << to_fraction(value) << " (" << to_double(value) << ")";
  return os.str();
}

std::string format_allocation(Economy const &economy, Allocation const &allocation)
{
  std::string out;
  for (BuyerIndex i = 0; i < allocation.buyer_count(); ++i)
  {
    out += (i ? " " : "") + std::to_string(i + 1) + "->" + economy.item_name(allocation[i]);
  }
  return out;
}

std::string format_prices(Economy const &economy, PriceVector const &prices)
{
  std::string out;
  for (ItemIndex a = 0; a < prices.size(); ++a)
  {
    out += (a ? " " : "") + economy.item_name(a) + "=" + std::to_string(prices[a]);
  }
  return out;
}

int cmd_run(RunConfig const &config, std::ostream &out)
{
  Economy const economy = load_economy(config.economy_path);

  std::optional<LotteryPolicy> policy;
  if (config.scripted_winners)
  {
    std::vector<BuyerIndex> winners;
    for (auto w : *config.scripted_winners)
    {
      if (w < 1 || w > economy.buyer_count())
      {
        throw Error(ErrorCode::InvalidInput, "scripted winner " + std::to_string(w) +
                                                 " is not a buyer");
      }
      winners.push_back(w - 1);
    }
    policy = LotteryPolicy::scripted(std::move(winners));
  }
  else
  {
    policy = LotteryPolicy::seeded(config.seed.value_or(0));
  }

  MechanismResult const result = run_mapr(economy, *policy);
  if (config.output_format == RunConfig::Format::Json)
  {
    out << trace_to_json_lines(economy, result);
  }
  else
  {
    out << render_trace_table(economy, result);
  }
  return 0;
}

int cmd_check(RunConfig const &config, std::ostream &out)
{
  Economy const economy = load_economy(config.economy_path);
  Outcome const outcome = load_outcome(economy, config.tuple_path);
  auto const certificate =
      check_cwe(economy, outcome.prices, outcome.rationing, outcome.allocation);
  out << render_certificate(economy, certificate);
  return 0;
}

int cmd_expect(RunConfig const &config, std::ostream &out)
{
  Economy const      economy = load_economy(config.economy_path);
  ExpectationOptions options;
  options.node_limit = config.node_limit;
  options.leaf_limit = config.node_limit;

  ExpectationReport const report = expected_values(economy, options);
  for (BuyerIndex i = 0; i < economy.buyer_count(); ++i)
  {
    out << "u*[" << i + 1 << "]=" << fraction_and_decimal(report.expected_profit[i]) << "\n";
  }
  for (ItemIndex a = 1; a < economy.item_count(); ++a)
  {
    out << "p*[" << economy.item_name(a) << "]=" << fraction_and_decimal(report.expected_price[a])
        << "\n";
  }
  out << "nodes=" << report.stats.nodes << " leaves=" << report.stats.leaves
      << " lotteries=" << report.stats.lotteries << "\n";

  if (config.histories)
  {
    auto const histories = enumerate_histories(economy, options);
    for (std::size_t h = 0; h < histories.size(); ++h)
    {
      auto const &history = histories[h];
      out << "history " << h + 1 << ": probability " << to_fraction(history.probability)
          << "; prices " << format_prices(economy, history.prices) << "; allocation "
          << format_allocation(economy, history.allocation) << "; lotteries";
      if (history.lotteries.empty())
      {
        out << " none";
      }
      for (auto const &lottery : history.lotteries)
      {
        BuyerSet entrants;
        for (auto i : lottery.entrants)
        {
          entrants.insert(i);
        }
        out << " " << economy.item_name(lottery.item) << ":" << format_buyers(entrants) << "->"
            << lottery.winner + 1;
      }
      out << "\n";
    }
  }
  return 0;
}

std::vector<Money> strategy_row(Economy const &economy, std::vector<std::int64_t> const &values)
{
  if (values.size() != economy.real_item_count())
  {
    throw Error(ErrorCode::InvalidStrategy, "strategy must list one value per real item");
  }
  std::vector<Money> row{0};
  row.insert(row.end(), values.begin(), values.end());
  return row;
}

std::string format_strategy(Economy const &economy, Strategy const &strategy)
{
  std::string out;
  for (ItemIndex a = 1; a < economy.item_count(); ++a)
  {
    out += (a > 1 ? " " : "") + economy.item_name(a) + "=" +
           std::to_string(strategy.reported_values[a]);
  }
  return out;
}

int cmd_manipulate(RunConfig const &config, std::ostream &out)
{
  Economy const economy = load_economy(config.economy_path);
  if (config.buyer < 1 || config.buyer > economy.buyer_count())
  {
    throw Error(ErrorCode::InvalidInput, "buyer " + std::to_string(config.buyer) +
                                             " is not part of the economy");
  }
  ManipulationProblem const problem{economy, config.buyer - 1};
  ExpectationOptions        options;
  options.node_limit = config.node_limit;
  options.leaf_limit = config.node_limit;

  out << "buyer: " << config.buyer << "\n";
  if (config.strategy)
  {
    Strategy const reported{strategy_row(economy, *config.strategy)};
    Rational const truthful = expected_profit_under_strategy(
        problem, Strategy::truthful(economy, problem.manipulator), options);
    Rational const profit = expected_profit_under_strategy(problem, reported, options);
    out << "truthful profit: " << fraction_and_decimal(truthful) << "\n";
    out << "strategy: " << format_strategy(economy, reported) << "\n";
    out << "strategy profit: " << fraction_and_decimal(profit) << "\n";
    out << "truthful better or equal: " << (truthful >= profit ? "yes" : "no") << "\n";
    return 0;
  }

  Money const cap = config.cap.value_or(default_strategy_cap(problem));
  auto const  result = optimal_strategy_search(problem, cap, options);
  out << "cap: " << cap << "\n";
  out << "truthful profit: " << fraction_and_decimal(result.truthful_profit) << "\n";
  out << "best strategy: " << format_strategy(economy, result.best) << "\n";
  out << "best profit: " << fraction_and_decimal(result.best_profit) << "\n";
  out << "strategies evaluated: " << result.evaluated << "\n";
  out << "truthful optimal within cap: " << (result.truthful_optimal ? "yes" : "no") << "\n";
  if (economy.buyer_count() == 2)
  {
    auto const verdict = two_buyer_truthfulness_analysis(problem);
    out << "two-buyer case: " << to_string(verdict.kind)
        << ", closed form " << to_fraction(verdict.closed_form)
        << (verdict.agrees ? " (agrees)" : " (DISAGREES)") << "\n";
  }
  return 0;
}

int cmd_matching(RunConfig const &config, std::ostream &out)
{
  Economy const economy = load_economy(config.economy_path);
  PriceVector   prices  = PriceVector::lower_bounds(economy);
  if (config.prices)
  {
    if (config.prices->size() != economy.real_item_count())
    {
      throw Error(ErrorCode::InvalidInput, "--prices must list one price per real item");
    }
    for (ItemIndex a = 1; a < economy.item_count(); ++a)
    {
      prices[a] = (*config.prices)[a - 1];
    }
  }
  if (!prices.admissible(economy))
  {
    throw Error(ErrorCode::InvalidInput, "prices are outside the admissible bounds");
  }

  RationingSystem rationing = RationingSystem::full(economy.buyer_count(), economy.item_count());
  for (auto const &entry : config.rationing_zeros)
  {
    auto const colon = entry.find(':');
    if (colon == std::string::npos)
    {
      throw Error(ErrorCode::InvalidInput, "rationing zero must look like buyer:item");
    }
    std::size_t buyer = 0;
    try
    {
      buyer = std::stoul(entry.substr(0, colon));
    }
    catch (std::exception const &)
    {
      throw Error(ErrorCode::InvalidInput, "bad buyer in rationing zero \"" + entry + "\"");
    }
    if (buyer < 1 || buyer > economy.buyer_count())
    {
      throw Error(ErrorCode::InvalidInput, "unknown buyer in rationing zero \"" + entry + "\"");
    }
    ItemIndex const item = parse_item(economy, entry.substr(colon + 1));
    if (item == kDummyItem)
    {
      throw Error(ErrorCode::InvalidInput, "the dummy item cannot be rationed");
    }
    rationing.forbid(buyer - 1, item);
  }

  DemandSituation const demands  = demand_situation(economy, prices, rationing);
  Matching const        matching = max_matching(demands);
  for (BuyerIndex i = 0; i < economy.buyer_count(); ++i)
  {
    out << "D_" << i + 1 << "=" << format_items(economy, demands.demand(i)) << "  V_" << i + 1
        << "=" << indirect_utility(economy, prices, rationing, i) << "\n";
  }
  out << "matching:";
  for (auto const &[i, a] : matching.edges())
  {
    out << " " << i + 1 << "-" << economy.item_name(a);
  }
  out << "\nsize: " << matching.size() << "\n";
  bool const complete = matching.size() == demands.demanders().size();
  out << "equilibrium allocation exists: " << (complete ? "yes" : "no") << "\n";
  if (!complete)
  {
    auto const report = analyze_overdemand(demands, matching);
    out << "grown over-demanded set: " << format_items(economy, report.grown_set) << "\n";
    out << "minimal over-demanded set: " << format_items(economy, report.minimal_set) << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(std::vector<std::string> const &args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Ascending-price allocation of indivisible items with price bounds"};
  app.require_subcommand(1);

  RunConfig config;

  auto add_economy = [&](CLI::App *sub) {
    sub->add_option("economy", config.economy_path, "economy JSON file")->required();
  };
  auto add_limit = [&](CLI::App *sub) {
    sub->add_option("--node-limit", config.node_limit, "lottery tree size guard");
  };

  auto *run = app.add_subcommand("run", "run the mechanism and print its trace");
  add_economy(run);
  auto *seed = run->add_option("--seed", config.seed, "seed of the lottery generator (default 0)");
  auto *scripted = run->add_option("--scripted-winners", config.scripted_winners,
                                   "winners of successive lotteries, e.g. 2,3")
                       ->delimiter(',');
  seed->excludes(scripted);
  scripted->excludes(seed);
  run->add_option("--format", config.output_format, "table or json")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, RunConfig::Format>{{"table", RunConfig::Format::Table},
                                                   {"json", RunConfig::Format::Json}}));

  auto *check = app.add_subcommand("check", "check a (prices, rationing, allocation) tuple");
  add_economy(check);
  check->add_option("--tuple", config.tuple_path, "tuple JSON file")->required();

  auto *expect = app.add_subcommand("expect", "expected profits and prices over all lotteries");
  add_economy(expect);
  expect->add_flag("--histories", config.histories, "list every leaf of the lottery tree");
  add_limit(expect);

  auto *manipulate = app.add_subcommand("manipulate", "search for a profitable misreport");
  add_economy(manipulate);
  manipulate->add_option("--buyer", config.buyer, "manipulating buyer (1-based)");
  manipulate->add_option("--cap", config.cap, "largest value tried per item");
  manipulate->add_option("--strategy", config.strategy, "evaluate one report, e.g. 0,0,7,5")
      ->delimiter(',');
  add_limit(manipulate);

  auto *matching = app.add_subcommand("matching", "demands and a maximum matching at (p, R)");
  add_economy(matching);
  matching->add_option("--prices", config.prices, "real item prices, e.g. 5,4,4,7")
      ->delimiter(',');
  matching->add_option("--rationing-zeros", config.rationing_zeros, "forbidden pairs, e.g. 1:c,3:c")
      ->delimiter(',');

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try
  {
    app.parse(reversed);
  }
  catch (CLI::ParseError const &e)
  {
    int const code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try
  {
    if (run->parsed())
    {
      return cmd_run(config, out);
    }
    if (check->parsed())
    {
      return cmd_check(config, out);
    }
    if (expect->parsed())
    {
      return cmd_expect(config, out);
    }
    if (manipulate->parsed())
    {
      return cmd_manipulate(config, out);
    }
    return cmd_matching(config, out);
  }
  catch (Error const &e)
  {
    err << "error: " << e.what() << "\n";
    bool const guard =
        e.code() == ErrorCode::SizeGuard || e.code() == ErrorCode::TreeSizeExceeded;
    return guard ? 2 : 1;
  }
  catch (std::exception const &e)
  {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace mapr
