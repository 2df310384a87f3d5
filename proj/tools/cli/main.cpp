// razor: batch front-end for the finite abstraction-layer models.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

std::string join(const std::vector<std::string>& xs, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? std::string(sep) : "") + xs[i];
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace razor::cli;

  CLI::App app{"Finite models of abstraction layers, tasks and learning proxies"};
  app.set_version_flag("--version", std::string(kToolVersion));

  std::string command;
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::string mode;
  std::string population;
  std::vector<std::string> formats;

  app.add_option("command", command, "One of: " + join(command_names(), ", "))
      ->required()
      ->check(CLI::IsMember(command_names()));
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--seed", seed, "Override the configured seed");
  app.add_option("--mode", mode, "Subset mode")->check(CLI::IsMember({"strict", "lax"}));
  app.add_option("--population", population, "Task population")->check(CLI::IsMember({"all", "solvable"}));
  app.add_option("--format", formats, "Comma-separated output formats")
      ->delimiter(',')
      ->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsageError;
  }

  RunConfig cfg;
  if (!config_path.empty()) {
    std::ifstream in(config_path, std::ios::binary);
    std::stringstream text;
    text << in.rdbuf();
    auto parsed = parse_config(text.str());
    if (!parsed) {
      for (const auto& msg : parsed.reason()) std::cerr << config_path << ": " << msg << '\n';
      return kUsageError;
    }
    cfg = std::move(parsed).value();
  } else if (needs_config(command)) {
    std::cerr << "command '" << command << "' needs --config\n";
    return kUsageError;
  } else {
    cfg.input = nlohmann::ordered_json::object();
  }

  if (seed) cfg.seed = *seed;
  if (!mode.empty()) cfg.mode = *parse_mode(mode);
  if (!population.empty()) cfg.population = *parse_population(population);
  if (!formats.empty()) cfg.formats = formats;

  return execute(command, cfg, out_dir, std::cerr);
}
