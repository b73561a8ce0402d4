#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mapr {

enum class ErrorCode
{
  InvalidInput,
  InvalidAllocation,
  InvalidMatching,
  DummyInSet,
  EquilibriumExists,
  UpperBoundViolation,
  NoEntrants,
  ScriptedWinnerNotEntrant,
  ScriptExhausted,
  SizeGuard,
  TreeSizeExceeded,
  NotTwoBuyers,
  InvalidStrategy,
  InternalInvariant,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, std::string const &message)
    : std::runtime_error(message)
    , code_(code)
  {}

  ErrorCode code() const noexcept
  {
    return code_;
  }

private:
  ErrorCode code_;
};

}  // namespace mapr
