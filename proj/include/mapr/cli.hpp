#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mapr {

struct RunConfig
{
  enum class Command
  {
    Run,
    Check,
    Expect,
    Manipulate,
    Matching,
  };
  enum class Format
  {
    Table,
    Json,
  };

  Command                                command = Command::Run;
  std::string                            economy_path;
  std::optional<std::uint64_t>           seed;
  std::optional<std::vector<std::size_t>> scripted_winners;  // 1-based
  Format                                 output_format = Format::Table;

  std::string tuple_path;                        // check
  bool        histories  = false;                // expect
  std::size_t node_limit = 1'000'000;            // expect, manipulate
  std::size_t buyer      = 1;                    // manipulate, 1-based
  std::optional<std::int64_t>              cap;  // manipulate
  std::optional<std::vector<std::int64_t>> strategy;
  std::optional<std::vector<std::int64_t>> prices;  // matching, real items
  std::vector<std::string>                 rationing_zeros;  // matching, "buyer:item"
};

/// Exit codes: 0 success, 1 usage, input or validation error, 2 a size or
/// tree guard was hit.
int run_cli(std::vector<std::string> const &args, std::ostream &out, std::ostream &err);

}  // namespace mapr
