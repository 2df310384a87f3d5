#include "commands.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "razor/errors.hpp"
#include "razor/experiments.hpp"
#include "razor/proxies.hpp"
#include "razor/vocabulary_search.hpp"

namespace razor::cli {

using json = nlohmann::ordered_json;

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> kNames{"lang",    "tasks",   "policies", "prop1",
                                               "prop2",   "proxies", "genexp",   "vocabsearch"};
  return kNames;
}

bool needs_config(std::string_view cmd) { return cmd != "prop2"; }

namespace {

std::string joined(const std::vector<int>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? " " : "") + std::to_string(xs[i]);
  return out;
}

std::string joined(const std::vector<StatementId>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? " " : "") + std::to_string(xs[i]);
  return out;
}

Fact fact_from(const std::vector<int>& states) {
  std::uint64_t m = 0;
  for (int s : states) m |= std::uint64_t{1} << s;
  return Fact(m);
}

Vocabulary vocabulary_for(const RunConfig& cfg, std::string_view cmd) {
  if (!cfg.vocabulary) throw ConfigError("command '" + std::string(cmd) + "' needs field 'vocabulary'");
  const StateSpace space(cfg.states);
  if (cfg.vocabulary->full) return full_vocabulary(space);
  std::vector<Fact> facts;
  for (const auto& f : cfg.vocabulary->facts) facts.push_back(fact_from(f));
  return Vocabulary(space, std::move(facts));
}

TaskBudget task_budget(const RunConfig& cfg) { return {cfg.task_max_language, cfg.task_budget}; }

json fact_lists(const Vocabulary& v) {
  json out = json::array();
  for (const Fact& f : v.facts()) out.push_back(f.members());
  return out;
}

json statement_json(StatementId id, const Language& L) {
  const Statement& s = L[id];
  return json{{"id", id},
              {"facts", s.facts.members()},
              {"description_length", s.description_length()},
              {"weakness", L.weakness(id)},
              {"truth_set", s.truth.members()}};
}

json labels(std::optional<SubsetMode> mode, std::optional<Population> pop, std::optional<Distribution> dist) {
  return json{{"subset_mode", mode ? json(to_string(*mode)) : json(nullptr)},
              {"population", pop ? json(to_string(*pop)) : json(nullptr)},
              {"distribution", dist ? json(to_string(*dist)) : json(nullptr)}};
}

json ratio_json(const Ratio& r) {
  const Ratio q = r.reduced();
  return json{{"num", q.num}, {"den", q.den}, {"value", q.value()}};
}

json optional_number(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

struct Pieces {
  json labels;
  json results;
  json counterexamples = json::array();
  std::string csv;
  int exit_code = kOk;
};

// Task literal indices refer to the declared vocabulary order.
IdSet statements_from_literal(const FactLists& lits, const RunConfig& cfg, const Vocabulary& v, const Language& L,
                              std::string_view side) {
  IdSet out = L.empty_set();
  for (std::size_t i = 0; i < lits.size(); ++i) {
    std::uint64_t mask = 0;
    for (int declared : lits[i]) {
      int sorted = declared;
      if (!cfg.vocabulary->full) {
        if (declared < 0 || static_cast<std::size_t>(declared) >= cfg.vocabulary->facts.size())
          throw ConfigError("task." + std::string(side) + "[" + std::to_string(i) + "]: fact index " +
                            std::to_string(declared) + " outside the vocabulary");
        sorted = *v.index_of(fact_from(cfg.vocabulary->facts[static_cast<std::size_t>(declared)]));
      } else if (declared >= static_cast<int>(v.size())) {
        throw ConfigError("task." + std::string(side) + "[" + std::to_string(i) + "]: fact index " +
                          std::to_string(declared) + " outside the vocabulary");
      }
      mask |= std::uint64_t{1} << sorted;
    }
    auto id = mask == 0 ? std::nullopt : L.find(FactMask(mask));
    if (!id)
      throw ConfigError("task." + std::string(side) + "[" + std::to_string(i) + "] is not a statement of the language");
    out.insert(*id);
  }
  return out;
}

Pieces cmd_lang(const RunConfig& cfg) {
  const Language L = language_of(vocabulary_for(cfg, "lang"));
  Pieces p;
  p.labels = labels(std::nullopt, std::nullopt, std::nullopt);
  json stmts = json::array();
  std::ostringstream csv;
  csv << "statement_id,facts,description_length,weakness,truth_set\n";
  for (StatementId id = 0; id < L.size(); ++id) {
    stmts.push_back(statement_json(id, L));
    csv << id << ',' << joined(L[id].facts.members()) << ',' << L[id].description_length() << ','
        << L.weakness(id) << ',' << joined(L[id].truth.members()) << '\n';
  }
  p.results = json{{"states", cfg.states},
                   {"vocabulary", fact_lists(L.vocabulary())},
                   {"size", L.size()},
                   {"statements", std::move(stmts)}};
  p.csv = csv.str();
  return p;
}

Pieces cmd_tasks(const RunConfig& cfg) {
  const Language L = language_of(vocabulary_for(cfg, "tasks"));
  const TaskUniverse u = enumerate_tasks(L, cfg.mode, task_budget(cfg));
  Pieces p;
  p.labels = labels(cfg.mode, std::nullopt, Distribution::uniform);
  std::uint64_t closed_form = 0;
  json groups = json::array();
  for (const auto& g : u.groups()) {
    closed_form += admissible_output_count(g.domain.size(), cfg.mode);
    groups.push_back(json{{"inputs", g.inputs.members()},
                          {"extension", g.domain},
                          {"first_task", g.first},
                          {"task_count", g.count}});
  }
  std::ostringstream csv;
  csv << "task_id,inputs,outputs,policy_count\n";
  std::uint64_t solvable = 0;
  u.for_each([&](std::uint64_t i, const Task& t) {
    const auto pc = correct_policies(t, L).count();
    if (pc > 0) ++solvable;
    csv << i << ',' << joined(t.inputs.members()) << ',' << joined(t.outputs.members()) << ',' << pc << '\n';
  });
  p.results = json{{"language_size", L.size()},
                   {"task_count", u.size()},
                   {"closed_form_count", closed_form},
                   {"solvable_count", solvable},
                   {"input_groups", std::move(groups)}};
  p.csv = csv.str();
  return p;
}

Pieces cmd_policies(const RunConfig& cfg) {
  const Vocabulary v = vocabulary_for(cfg, "policies");
  const Language L = language_of(v);
  if (!cfg.task) throw ConfigError("command 'policies' needs field 'task'");
  IdSet in = statements_from_literal(cfg.task->inputs, cfg, v, L, "inputs");
  IdSet out = statements_from_literal(cfg.task->outputs, cfg, v, L, "outputs");
  auto task = validate_task(std::move(in), std::move(out), L, cfg.mode);
  if (!task) throw ConfigError("task rejected: " + std::string(to_string(task.reason())));
  const PolicySet pi = correct_policies(task.value(), L);

  Pieces p;
  p.labels = labels(cfg.mode, std::nullopt, std::nullopt);
  json members = json::array();
  std::ostringstream csv;
  csv << "statement_id,facts,description_length,weakness\n";
  pi.for_each([&](StatementId id) {
    members.push_back(statement_json(id, L));
    csv << id << ',' << joined(L[id].facts.members()) << ',' << L[id].description_length() << ','
        << L.weakness(id) << '\n';
  });
  p.results = json{{"vocabulary", fact_lists(v)},
                   {"task", json{{"inputs", task.value().inputs.members()}, {"outputs", task.value().outputs.members()}}},
                   {"policy_count", pi.count()},
                   {"members", std::move(members)}};
  p.csv = csv.str();
  return p;
}

Pieces proposition(const PropositionReport& r) {
  Pieces p;
  p.labels = labels(std::nullopt, std::nullopt, std::nullopt);
  json rows = json::array();
  std::ostringstream csv;
  csv << "interpretation,passed,total,verdict\n";
  for (const auto& x : r.results) {
    rows.push_back(json{{"interpretation", x.interpretation},
                        {"passed", x.passed},
                        {"total", x.total},
                        {"verdict", to_string(x.verdict)}});
    csv << '"' << x.interpretation << "\"," << x.passed << ',' << x.total << ',' << to_string(x.verdict) << '\n';
  }
  for (const auto& cx : r.counterexamples)
    p.counterexamples.push_back(json{{"interpretation", cx.interpretation},
                                     {"subject", cx.subject},
                                     {"reference", cx.reference},
                                     {"detail", cx.detail}});
  p.results = json{{"proposition", r.proposition},
                   {"states", r.states},
                   {"vocabulary", r.vocabulary},
                   {"verdicts", std::move(rows)},
                   {"counterexample_cap", r.counterexample_cap}};
  p.csv = csv.str();
  p.exit_code = r.any_fails() ? kVerdictFails : kOk;
  return p;
}

Pieces cmd_prop1(const RunConfig& cfg) {
  if (cfg.vocabulary && !cfg.vocabulary->full)
    throw ConfigError("command 'prop1' runs over the full vocabulary; omit 'vocabulary' or set it to \"full\"");
  return proposition(check_subjectivity(cfg.states, {EquivalenceMode::syntactic_extension,
                                                     EquivalenceMode::weakness_cardinality,
                                                     EquivalenceMode::semantic_truth_set}));
}

Pieces cmd_prop2(const RunConfig&) { return proposition(check_confounding()); }

Pieces cmd_proxies(const RunConfig& cfg) {
  const Language L = language_of(vocabulary_for(cfg, "proxies"));
  const Population pop = cfg.population.value_or(Population::all);
  const TaskUniverse u = enumerate_tasks(L, cfg.mode, task_budget(cfg));
  const GeneralisationTable g = generalisation_table(u, pop);
  const auto battery = default_battery(L, cfg.seed);
  const BatteryReport table = proxy_battery_table(L, g, battery);
  const CorrelationReport corr = correlation_report(L, g);
  const auto delta = sample_efficiency_delta(weakness_proxy(L), simplicity_proxy(L), L, g);

  Pieces p;
  p.labels = labels(cfg.mode, pop, Distribution::uniform);
  json rows = json::array();
  std::ostringstream csv;
  csv << "proxy,score,delta_w,rank\n";
  for (const auto& r : table.rows) {
    rows.push_back(json{{"proxy", r.proxy}, {"score", r.score}, {"delta_w", r.delta_w}, {"rank", r.rank}});
    csv << r.proxy << ',' << r.score << ',' << r.delta_w << ',' << r.rank << '\n';
  }
  json probs = json::array();
  for (StatementId id = 0; id < L.size(); ++id) {
    json row = ratio_json(g.probability[id]);
    row["statement"] = id;
    row["facts"] = L[id].facts.members();
    probs.push_back(std::move(row));
  }
  // The optimality claim is asserted in lax mode only.
  const bool asserted = cfg.mode == SubsetMode::lax;
  const Verdict verdict = table.weakness_minimal ? Verdict::holds : Verdict::fails;
  p.results = json{
      {"language_size", L.size()},
      {"task_count", u.size()},
      {"generalisation", std::move(probs)},
      {"battery", std::move(rows)},
      {"optimal_proxy", json{{"claim", "weakness score <= every battery score"},
                             {"verdict", to_string(verdict)},
                             {"asserted", asserted}}},
      {"sample_efficiency_delta_weakness_simplicity", delta},
      {"correlation", json{{"statements", corr.statements},
                           {"weakness_vs_simplicity", optional_number(corr.weakness_vs_simplicity)},
                           {"simplicity_vs_generalisation", optional_number(corr.simplicity_vs_generalisation)},
                           {"weakness_vs_generalisation", optional_number(corr.weakness_vs_generalisation)},
                           {"partial_simplicity_given_weakness",
                            optional_number(corr.partial_simplicity_given_weakness)}}}};
  p.csv = csv.str();
  if (asserted && verdict == Verdict::fails) p.exit_code = kVerdictFails;
  return p;
}

json rate_json(const RateSummary& r) {
  return json{{"mean", r.mean}, {"ci_low", r.ci_low}, {"ci_high", r.ci_high}};
}

Pieces cmd_genexp(const RunConfig& cfg) {
  const Language L = language_of(vocabulary_for(cfg, "genexp"));
  GenExperimentConfig gc;
  gc.mode = cfg.mode;
  gc.population = cfg.population.value_or(Population::solvable);
  gc.trials = cfg.trials;
  gc.child_size = cfg.child_size;
  gc.seed = cfg.seed;
  gc.bootstrap = cfg.bootstrap;
  const GenExperimentReport r = generalisation_experiment(L, gc);

  Pieces p;
  p.labels = labels(gc.mode, gc.population, r.distribution);
  const Verdict verdict = r.weakness.mean >= r.simplicity.mean ? Verdict::holds : Verdict::fails;
  p.results = json{{"language_size", L.size()},
                   {"trials", r.trials},
                   {"rate_weakness", rate_json(r.weakness)},
                   {"rate_simplicity", rate_json(r.simplicity)},
                   {"ratio", optional_number(r.ratio)},
                   {"ratio_ci_low", optional_number(r.ratio_ci_low)},
                   {"ratio_ci_high", optional_number(r.ratio_ci_high)},
                   {"direction", json{{"claim", "mean rate_w >= mean rate_d"}, {"verdict", to_string(verdict)}}}};
  std::ostringstream csv;
  csv.precision(17);
  csv << "trial,parent_draws,rate_w,rate_d\n";
  for (std::size_t i = 0; i < r.records.size(); ++i)
    csv << i << ',' << r.records[i].parent_draws << ',' << r.records[i].weakness << ',' << r.records[i].simplicity
        << '\n';
  p.csv = csv.str();
  if (verdict == Verdict::fails) p.exit_code = kVerdictFails;
  return p;
}

json scored_json(const ScoredVocabulary& s) {
  json facts = json::array();
  for (const Fact& f : s.facts) facts.push_back(f.members());
  return json{{"facts", std::move(facts)}, {"score", s.score}, {"language_size", s.language_size}};
}

std::string facts_cell(const std::vector<Fact>& facts) {
  std::string out;
  for (std::size_t i = 0; i < facts.size(); ++i) out += (i ? " " : "") + std::to_string(facts[i].bits());
  return out;
}

Pieces cmd_vocabsearch(const RunConfig& cfg) {
  SearchConfig sc;
  sc.states = cfg.states;
  sc.facts = cfg.search_facts;
  sc.budget = cfg.search_budget;
  sc.restarts = cfg.restarts;
  sc.seed = cfg.seed;
  const SearchReport r = search_confounded_vocabulary(sc);

  Pieces p;
  p.labels = labels(std::nullopt, std::nullopt, std::nullopt);
  json perfect = json::array();
  for (const auto& s : r.perfect) perfect.push_back(scored_json(s));
  p.results = json{{"states", cfg.states},
                   {"k", cfg.search_facts},
                   {"strategy", r.exhaustive ? "exhaustive" : "hill-climb"},
                   {"incomplete", r.incomplete},
                   {"evaluations", r.evaluations},
                   {"best", scored_json(r.best)},
                   {"perfect_count", r.perfect.size()},
                   {"perfect", std::move(perfect)},
                   {"traces", r.traces}};
  std::ostringstream csv;
  csv.precision(17);
  if (r.exhaustive) {
    csv << "index,facts,score,language_size\n";
    for (std::size_t i = 0; i < r.sweep.size(); ++i)
      csv << i << ',' << facts_cell(r.sweep[i].facts) << ',' << r.sweep[i].score << ',' << r.sweep[i].language_size
          << '\n';
  } else {
    csv << "restart,step,score\n";
    for (std::size_t i = 0; i < r.traces.size(); ++i)
      for (std::size_t j = 0; j < r.traces[i].size(); ++j) csv << i << ',' << j << ',' << r.traces[i][j] << '\n';
  }
  p.csv = csv.str();
  return p;
}

class DirectoryLock {
 public:
  explicit DirectoryLock(std::filesystem::path path) : path_(std::move(path)) {
    std::FILE* f = std::fopen(path_.c_str(), "wx");
    if (!f) throw UsageError("output directory is locked by another run (" + path_.string() + ")");
    std::fprintf(f, "%ld\n", static_cast<long>(::getpid()));
    std::fclose(f);
  }
  ~DirectoryLock() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  DirectoryLock(const DirectoryLock&) = delete;
  DirectoryLock& operator=(const DirectoryLock&) = delete;

 private:
  std::filesystem::path path_;
};

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  os << text;
  os.close();
  if (!os) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace

CommandResult run_command(std::string_view cmd, const RunConfig& cfg) {
  Pieces p;
  if (cmd == "lang") p = cmd_lang(cfg);
  else if (cmd == "tasks") p = cmd_tasks(cfg);
  else if (cmd == "policies") p = cmd_policies(cfg);
  else if (cmd == "prop1") p = cmd_prop1(cfg);
  else if (cmd == "prop2") p = cmd_prop2(cfg);
  else if (cmd == "proxies") p = cmd_proxies(cfg);
  else if (cmd == "genexp") p = cmd_genexp(cfg);
  else if (cmd == "vocabsearch") p = cmd_vocabsearch(cfg);
  else throw UsageError("unknown command '" + std::string(cmd) + "'");

  CommandResult out;
  out.exit_code = p.exit_code;
  out.report = json{{"schema_version", kSchemaVersion},
                    {"tool", kToolName},
                    {"tool_version", kToolVersion},
                    {"command", cmd},
                    {"seed", cfg.seed},
                    {"config", json{{"input", cfg.input}, {"resolved", resolved_json(cfg)}}},
                    {"labels", std::move(p.labels)},
                    {"results", std::move(p.results)},
                    {"counterexamples", std::move(p.counterexamples)}};
  out.csv = std::move(p.csv);
  return out;
}

std::string render_json(const json& report) { return report.dump(2) + "\n"; }

int execute(std::string_view cmd, const RunConfig& cfg, const std::filesystem::path& out, std::ostream& err) {
  CommandResult result;
  try {
    result = run_command(cmd, cfg);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kBudgetExceeded;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kUsageError;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Unsupported& e) {
    err << "unsupported: " << e.what() << '\n';
    return kUsageError;
  }

  const std::string base(cmd);
  std::vector<std::pair<std::filesystem::path, std::string>> files;
  for (const auto& f : cfg.formats) {
    if (f == "json") files.emplace_back(out / (base + ".json"), render_json(result.report));
    if (f == "csv") files.emplace_back(out / (base + ".csv"), result.csv);
  }

  std::vector<std::filesystem::path> temps;
  std::vector<std::filesystem::path> renamed;
  auto cleanup = [&] {
    std::error_code ec;
    for (const auto& t : temps) std::filesystem::remove(t, ec);
    for (const auto& t : renamed) std::filesystem::remove(t, ec);
  };
  try {
    std::filesystem::create_directories(out);
    DirectoryLock lock(out / ".razor.lock");
    const std::string suffix = ".tmp." + std::to_string(::getpid());
    for (const auto& [path, text] : files) {
      temps.push_back(path.string() + suffix);
      write_file(temps.back(), text);
    }
    for (std::size_t i = 0; i < files.size(); ++i) {
      std::filesystem::rename(temps[i], files[i].first);
      renamed.push_back(files[i].first);
    }
  } catch (const UsageError& e) {
    cleanup();
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    cleanup();
    err << "output error: " << e.what() << '\n';
    return kUsageError;
  }
  return result.exit_code;
}

}  // namespace razor::cli
