#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "app/config.hpp"
#include "app/report.hpp"
#include "json.hpp"

namespace fracspec::app {

enum ExitCode : int { kOk = 0, kContractViolation = 2, kConfigFailure = 3, kResourceExceeded = 4 };

struct RunResult {
  std::vector<Check> checks;
  nlohmann::json results = nlohmann::json::object();
  std::map<std::string, std::string> artifacts;  // file name -> contents

  bool passed() const;
  /// Byte-stable report: sorted keys, no timings.
  nlohmann::json report(const RunConfig& cfg) const;
};

/// Runs one experiment in memory. Library errors propagate.
RunResult execute(const RunConfig& cfg);

/// report.json, summary.md and every artifact, written into `dir`.
void write_outputs(const RunConfig& cfg, const RunResult& result, const std::filesystem::path& dir);

struct CommandOptions {
  std::filesystem::path config;
  std::filesystem::path out = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
};

/// Load, execute, write, and map failures onto exit codes. Progress goes to
/// `out`, diagnostics to `err`.
int run_command(const CommandOptions& options, std::ostream& out, std::ostream& err);

}  // namespace fracspec::app
