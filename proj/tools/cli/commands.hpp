#pragma once

// Command dispatch and report emission for the razor tool.

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "config.hpp"

namespace razor::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kToolName = "razor";
inline constexpr std::string_view kToolVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kVerdictFails = 1, kUsageError = 2, kBudgetExceeded = 3 };

const std::vector<std::string>& command_names();
bool needs_config(std::string_view cmd);

struct CommandResult {
  int exit_code = kOk;
  nlohmann::ordered_json report;
  std::string csv;
};

/// Runs a command in memory. Throws UsageError, ConfigError or BudgetExceeded.
CommandResult run_command(std::string_view cmd, const RunConfig& cfg);

/// Runs a command and writes <out>/<cmd>.json and .csv atomically. Errors go to
/// `err` and leave no files behind. Returns the process exit code.
int execute(std::string_view cmd, const RunConfig& cfg, const std::filesystem::path& out, std::ostream& err);

/// JSON text exactly as written to disk.
std::string render_json(const nlohmann::ordered_json& report);

}  // namespace razor::cli
