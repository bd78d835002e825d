#pragma once

#include <boxfdc/cli/serialize.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace boxfdc::cli {

enum ExitCode : int { kPass = 0, kNegative = 1, kUsage = 2, kInternal = 3 };

struct CommandOptions {
  std::string config_path;
  std::optional<std::string> config_text;  // used instead of reading config_path
  std::optional<std::string> out_path;
  std::optional<std::string> input_path;
  std::optional<std::int64_t> bound;
  std::optional<std::uint64_t> seed;
  std::optional<bool> exact;
  std::optional<std::string> cache_dir;
};

struct CommandResult {
  int exit_code = kPass;
  Json report;  // deterministic for a given scenario
  Json timing;  // wall-clock figures and cache statistics
};

const std::vector<std::string>& command_names();

CommandResult run_command(const std::string& name, const CommandOptions& options);

// Report to --out (timing beside it as <out>.timing.json) or to stdout.
void write_outputs(const CommandResult& result, const CommandOptions& options);

std::string report_text(const Json& report);

}  // namespace boxfdc::cli
