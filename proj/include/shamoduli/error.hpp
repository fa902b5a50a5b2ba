#pragma once

#include <stdexcept>
#include <string>

namespace shamoduli {

// Every precondition failure carries a stable code so the CLI can map it to an
// exit status and a name the caller can grep for.
enum class ErrorCode {
  InvalidArgument,
  ProportionalLines,
  TooFewPoints,
  DegenerateBasePoints,
  BadIndexSize,
  BasePointOnSpecialLine,
  LengthMismatch,
  EndpointOnWall,
  NoChainFound,
  BadN,
  UnstableReplacement,
  NotDestabilized,
  BudgetExceeded,
  EmptyIntersection,
  DimensionUnderflow,
  FirstWeightNotOne,
  NonGenericConditions,
  NotMaximallyDegenerate,
  NoContributor,
  MultipleContributors,
  DegenerateInput,
  ParseError,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace shamoduli
