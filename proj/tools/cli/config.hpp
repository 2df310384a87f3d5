#pragma once

// Run configuration for the razor command-line tool.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "razor/outcome.hpp"
#include "razor/tasks.hpp"

namespace razor::cli {

using FactLists = std::vector<std::vector<int>>;

struct VocabularySpec {
  bool full = false;
  FactLists facts;  // declared order; ignored when full
};

/// Statements as lists of fact indices into the declared vocabulary.
struct TaskLiteral {
  FactLists inputs;
  FactLists outputs;
};

struct RunConfig {
  int states = 0;
  std::optional<VocabularySpec> vocabulary;
  SubsetMode mode = SubsetMode::strict;
  std::optional<Population> population;  // unset: command default
  std::uint64_t seed = 0;
  std::uint64_t trials = 1000;
  std::size_t child_size = 0;  // 0: one fewer input than the parent
  std::size_t bootstrap = 1000;
  std::optional<TaskLiteral> task;
  int search_facts = 2;
  std::uint64_t search_budget = 100000;
  int restarts = 16;
  std::size_t task_max_language = 12;
  std::uint64_t task_budget = std::uint64_t{1} << 24;
  std::vector<std::string> formats{"json", "csv"};

  nlohmann::ordered_json input;  // the configuration exactly as given
};

/// Field-level diagnostics, one message per problem.
using ConfigErrors = std::vector<std::string>;

Outcome<RunConfig, ConfigErrors> parse_config(std::string_view text);

/// The configuration with defaults applied, as echoed into reports.
nlohmann::ordered_json resolved_json(const RunConfig& cfg);

std::optional<SubsetMode> parse_mode(std::string_view s);
std::optional<Population> parse_population(std::string_view s);

}  // namespace razor::cli
