#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shamoduli/error.hpp"
#include "shamoduli/io.hpp"

namespace shamoduli {

enum class Format { Json, Dot, Text };

struct RunConfig {
  int n = 5;
  std::optional<RationalVector> weights;  // default: the base weight w0
  std::uint64_t seed = 1;
  std::size_t budget = 200000;
  Format format = Format::Json;
  int threads = 1;
  bool oracle = false;
  bool timing = false;
  std::optional<int> depth;
  std::optional<std::string> sha_path;
  std::optional<std::vector<int>> m;
  int trials = 100;
  int vertex = 0;
  std::optional<std::vector<int>> I;
  std::optional<RationalVector> mu;
};

struct Report {
  std::string command;
  Json args;
  Json result;
  std::vector<std::string> certificates;
  std::optional<long long> microseconds;  // only with --timing
  std::string dot;   // set by commands with a graph view
  std::string text;  // short human summary
};

const std::vector<std::string>& command_names();

// Throws Error on precondition failures; BudgetExceeded maps to exit 3.
Report run_command(const std::string& name, const RunConfig& cfg);
std::string render(const Report& r, Format format);
int exit_code(ErrorCode code);

}  // namespace shamoduli
