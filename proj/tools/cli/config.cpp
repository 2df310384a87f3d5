#include "config.hpp"

#include <algorithm>
#include <set>

#include "razor/abstraction.hpp"

namespace razor::cli {

using json = nlohmann::ordered_json;

std::optional<SubsetMode> parse_mode(std::string_view s) {
  if (s == "strict") return SubsetMode::strict;
  if (s == "lax") return SubsetMode::lax;
  return std::nullopt;
}

std::optional<Population> parse_population(std::string_view s) {
  if (s == "all") return Population::all;
  if (s == "solvable") return Population::solvable;
  return std::nullopt;
}

namespace {

const std::set<std::string>& known_fields() {
  static const std::set<std::string> kFields{
      "n",       "vocabulary", "subset_mode",   "population", "seed",        "trials",
      "child_size", "bootstrap", "task",       "k",          "search_budget", "restarts",
      "task_max_language", "task_budget", "formats"};
  return kFields;
}

std::string location(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

template <class T>
std::optional<T> unsigned_field(const json& j, const char* name, T min, T max, ConfigErrors& errors) {
  if (!j.contains(name)) return std::nullopt;
  const auto& v = j.at(name);
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    errors.push_back(std::string("field '") + name + "': expected a non-negative integer");
    return std::nullopt;
  }
  const auto x = v.get<std::uint64_t>();
  if (x < static_cast<std::uint64_t>(min) || x > static_cast<std::uint64_t>(max)) {
    errors.push_back(std::string("field '") + name + "': " + std::to_string(x) + " outside [" +
                     std::to_string(min) + ", " + std::to_string(max) + "]");
    return std::nullopt;
  }
  return static_cast<T>(x);
}

std::optional<FactLists> fact_lists(const json& v, const std::string& field, int states, ConfigErrors& errors) {
  if (!v.is_array()) {
    errors.push_back("field '" + field + "': expected a list of lists of integers");
    return std::nullopt;
  }
  FactLists out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& item = v[i];
    if (!item.is_array()) {
      errors.push_back("field '" + field + "[" + std::to_string(i) + "]': expected a list of integers");
      return std::nullopt;
    }
    std::vector<int> xs;
    for (const auto& x : item) {
      if (!x.is_number_integer() || x.get<std::int64_t>() < 0 || (states > 0 && x.get<std::int64_t>() >= states)) {
        errors.push_back("field '" + field + "[" + std::to_string(i) + "]': entry " + x.dump() +
                         (states > 0 ? " is not an index in [0, " + std::to_string(states) + ")"
                                     : " is not a non-negative integer"));
        return std::nullopt;
      }
      xs.push_back(x.get<int>());
    }
    out.push_back(std::move(xs));
  }
  return out;
}

void check_vocabulary(const RunConfig& cfg, ConfigErrors& errors) {
  if (!cfg.vocabulary || cfg.states < 1) return;
  try {
    const StateSpace space(cfg.states);
    if (cfg.vocabulary->full) {
      (void)full_vocabulary(space);
      return;
    }
    std::vector<Fact> facts;
    for (const auto& states : cfg.vocabulary->facts) {
      std::uint64_t m = 0;
      for (int s : states) m |= std::uint64_t{1} << s;
      facts.emplace_back(m);
    }
    (void)Vocabulary(space, std::move(facts));
  } catch (const ConfigError& e) {
    errors.push_back(std::string("field 'vocabulary': ") + e.what());
  }
}

}  // namespace

Outcome<RunConfig, ConfigErrors> parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    return ConfigErrors{"malformed JSON at " + location(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what()};
  }
  if (!j.is_object()) return ConfigErrors{"configuration must be a JSON object"};

  ConfigErrors errors;
  for (const auto& [key, _] : j.items())
    if (!known_fields().count(key)) errors.push_back("unknown field '" + key + "'");

  RunConfig cfg;
  cfg.input = j;
  if (!j.contains("n")) {
    errors.push_back("missing required field(s): n");
  } else if (auto n = unsigned_field<int>(j, "n", 1, kMaxStates, errors)) {
    cfg.states = *n;
  }

  if (j.contains("vocabulary")) {
    const auto& v = j.at("vocabulary");
    if (v.is_string()) {
      if (v.get<std::string>() == "full")
        cfg.vocabulary = VocabularySpec{true, {}};
      else
        errors.push_back("field 'vocabulary': the only string value is \"full\"");
    } else if (auto facts = fact_lists(v, "vocabulary", cfg.states, errors)) {
      cfg.vocabulary = VocabularySpec{false, std::move(*facts)};
    }
    check_vocabulary(cfg, errors);
  }

  if (j.contains("subset_mode")) {
    const auto& v = j.at("subset_mode");
    auto m = v.is_string() ? parse_mode(v.get<std::string>()) : std::nullopt;
    if (m)
      cfg.mode = *m;
    else
      errors.push_back("field 'subset_mode': expected \"strict\" or \"lax\"");
  }
  if (j.contains("population")) {
    const auto& v = j.at("population");
    auto p = v.is_string() ? parse_population(v.get<std::string>()) : std::nullopt;
    if (p)
      cfg.population = *p;
    else
      errors.push_back("field 'population': expected \"all\" or \"solvable\"");
  }

  constexpr auto kU64 = std::numeric_limits<std::uint64_t>::max();
  if (auto x = unsigned_field<std::uint64_t>(j, "seed", 0, kU64, errors)) cfg.seed = *x;
  if (auto x = unsigned_field<std::uint64_t>(j, "trials", 1, kU64, errors)) cfg.trials = *x;
  if (auto x = unsigned_field<std::size_t>(j, "child_size", 0, 1U << 20, errors)) cfg.child_size = *x;
  if (auto x = unsigned_field<std::size_t>(j, "bootstrap", 0, 1U << 20, errors)) cfg.bootstrap = *x;
  if (auto x = unsigned_field<int>(j, "k", 1, kMaxVocabularyFacts, errors)) cfg.search_facts = *x;
  if (auto x = unsigned_field<std::uint64_t>(j, "search_budget", 1, kU64, errors)) cfg.search_budget = *x;
  if (auto x = unsigned_field<int>(j, "restarts", 1, 1 << 16, errors)) cfg.restarts = *x;
  if (auto x = unsigned_field<std::size_t>(j, "task_max_language", 1, 20, errors)) cfg.task_max_language = *x;
  if (auto x = unsigned_field<std::uint64_t>(j, "task_budget", 1, std::uint64_t{1} << 32, errors)) cfg.task_budget = *x;

  if (j.contains("task")) {
    const auto& t = j.at("task");
    if (!t.is_object() || !t.contains("inputs") || !t.contains("outputs")) {
      errors.push_back("field 'task': expected an object with 'inputs' and 'outputs'");
    } else {
      for (const auto& [key, _] : t.items())
        if (key != "inputs" && key != "outputs") errors.push_back("unknown field 'task." + key + "'");
      auto in = fact_lists(t.at("inputs"), "task.inputs", 0, errors);
      auto out = fact_lists(t.at("outputs"), "task.outputs", 0, errors);
      if (in && out) cfg.task = TaskLiteral{std::move(*in), std::move(*out)};
    }
  }

  if (j.contains("formats")) {
    const auto& f = j.at("formats");
    cfg.formats.clear();
    if (!f.is_array()) {
      errors.push_back("field 'formats': expected a list drawn from \"json\", \"csv\"");
    } else {
      for (const auto& x : f) {
        if (x.is_string() && (x.get<std::string>() == "json" || x.get<std::string>() == "csv"))
          cfg.formats.push_back(x.get<std::string>());
        else
          errors.push_back("field 'formats': unsupported entry " + x.dump());
      }
    }
  }

  if (!errors.empty()) return errors;
  return cfg;
}

json resolved_json(const RunConfig& cfg) {
  json j;
  j["n"] = cfg.states;
  if (cfg.vocabulary) {
    if (cfg.vocabulary->full)
      j["vocabulary"] = "full";
    else
      j["vocabulary"] = cfg.vocabulary->facts;
  } else {
    j["vocabulary"] = nullptr;
  }
  j["subset_mode"] = to_string(cfg.mode);
  j["population"] = cfg.population ? json(to_string(*cfg.population)) : json(nullptr);
  j["seed"] = cfg.seed;
  j["trials"] = cfg.trials;
  j["child_size"] = cfg.child_size;
  j["bootstrap"] = cfg.bootstrap;
  if (cfg.task) j["task"] = json{{"inputs", cfg.task->inputs}, {"outputs", cfg.task->outputs}};
  j["k"] = cfg.search_facts;
  j["search_budget"] = cfg.search_budget;
  j["restarts"] = cfg.restarts;
  j["task_max_language"] = cfg.task_max_language;
  j["task_budget"] = cfg.task_budget;
  j["formats"] = cfg.formats;
  return j;
}

}  // namespace razor::cli
