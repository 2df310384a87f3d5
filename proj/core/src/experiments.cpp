#include "razor/experiments.hpp"

#include <algorithm>
#include <string>

#include "parallel.hpp"
#include "razor/errors.hpp"
#include "razor/extension.hpp"
#include "razor/statistics.hpp"

namespace razor {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::not_applicable: return "not-applicable";
  }
  return "unknown";
}

Verdict verdict_from(std::uint64_t passed, std::uint64_t total) {
  if (total == 0) return Verdict::not_applicable;
  return passed == total ? Verdict::holds : Verdict::fails;
}

bool PropositionReport::any_fails() const {
  return std::any_of(results.begin(), results.end(),
                     [](const InterpretationResult& r) { return r.verdict == Verdict::fails; });
}

namespace {

constexpr std::string_view kSubjectivity = "subjectivity";
constexpr std::string_view kConfounding = "confounding";
constexpr std::string_view kMinimalForm = "minimal-semantic-form-length-1";

FactList fact_list(const Statement& s, const Vocabulary& v) {
  FactList out;
  for (int f : s.facts.members()) out.push_back(v[static_cast<std::size_t>(f)].members());
  return out;
}

FactList vocabulary_list(const Vocabulary& v) {
  FactList out;
  for (const Fact& f : v.facts()) out.push_back(f.members());
  return out;
}

// Statement id for a fact list written against the vocabulary; nullopt if absent.
std::optional<StatementId> statement_from(const FactList& facts, const Vocabulary& v, const Language& L) {
  std::uint64_t mask = 0;
  for (const auto& states : facts) {
    std::uint64_t m = 0;
    for (int s : states) m |= std::uint64_t{1} << s;
    auto idx = v.index_of(Fact(m));
    if (!idx) return std::nullopt;
    mask |= std::uint64_t{1} << *idx;
  }
  return L.find(FactMask(mask));
}

std::optional<EquivalenceMode> mode_named(std::string_view name) {
  for (auto m : {EquivalenceMode::syntactic_extension, EquivalenceMode::weakness_cardinality,
                 EquivalenceMode::semantic_truth_set})
    if (to_string(m) == name) return m;
  return std::nullopt;
}

// Statement {⋂l} over a full vocabulary.
StatementId collapsed(StatementId l, const Vocabulary& v, const Language& L) {
  const int f = *v.index_of(L[l].truth);
  return L.id_of(FactMask::single(f));
}

std::string set_string(const std::vector<int>& xs) {
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
  return out + "}";
}

std::string mismatch_detail(EquivalenceMode mode, StatementId l, StatementId f, const Language& L) {
  switch (mode) {
    case EquivalenceMode::syntactic_extension:
    case EquivalenceMode::weakness_cardinality:
      return "|E_l|=" + std::to_string(L.weakness(l)) + " vs |E_{f}|=" + std::to_string(L.weakness(f));
    case EquivalenceMode::semantic_truth_set:
      return "truth " + set_string(L[l].truth.members()) + " vs " + set_string(L[f].truth.members());
  }
  return {};
}

struct ConfoundingOrdering {
  std::string name;
  std::uint64_t lhs;  // fact masks over the fixture vocabulary
  std::uint64_t rhs;
  bool weakness;      // <_w when true, <_d otherwise
};

const std::vector<ConfoundingOrdering>& confounding_orderings() {
  static const std::vector<ConfoundingOrdering> kOrderings{
      {"{a,b} <_w {a}", 0b11, 0b01, true},
      {"{a,b} <_w {b}", 0b11, 0b10, true},
      {"{a,b} <_d {a}", 0b11, 0b01, false},
      {"{a,b} <_d {b}", 0b11, 0b10, false},
  };
  return kOrderings;
}

constexpr std::string_view kLanguageRow = "language = {{a},{b},{a,b}}";
constexpr std::string_view kEquivalenceRow = "(x <_w y) <=> (x <_d y)";

bool fixture_language_matches(const Language& L) {
  return L.size() == 3 && L.find(FactMask(0b01)) && L.find(FactMask(0b10)) && L.find(FactMask(0b11));
}

bool ordering_holds(const ConfoundingOrdering& o, const Language& L) {
  const StatementId x = L.id_of(FactMask(o.lhs));
  const StatementId y = L.id_of(FactMask(o.rhs));
  return o.weakness ? weakness_less(x, y, L) : simplicity_less(L[x], L[y]);
}

bool pair_agrees(StatementId x, StatementId y, const Language& L) {
  return weakness_less(x, y, L) == simplicity_less(L[x], L[y]);
}

}  // namespace

PropositionReport check_subjectivity(int n, const std::vector<EquivalenceMode>& modes, std::size_t cap) {
  if (n > 3) throw ConfigError("the subjectivity check enumerates the full vocabulary and needs n <= 3, got " +
                               std::to_string(n));
  const StateSpace space(n);
  const Vocabulary v = full_vocabulary(space);
  const Language L = language_of(v);

  PropositionReport report;
  report.proposition = std::string(kSubjectivity);
  report.states = n;
  report.vocabulary = vocabulary_list(v);
  report.counterexample_cap = cap;

  for (EquivalenceMode mode : modes) {
    InterpretationResult r{std::string(to_string(mode)), 0, 0, Verdict::not_applicable};
    std::size_t recorded = 0;
    for (StatementId l = 0; l < L.size(); ++l) {
      const StatementId f = collapsed(l, v, L);
      ++r.total;
      if (equivalent(l, f, L, mode)) {
        ++r.passed;
      } else if (recorded < cap) {
        ++recorded;
        report.counterexamples.push_back(
            {r.interpretation, fact_list(L[l], v), fact_list(L[f], v), mismatch_detail(mode, l, f, L)});
      }
    }
    r.verdict = verdict_from(r.passed, r.total);
    report.results.push_back(std::move(r));
  }

  InterpretationResult minimal{std::string(kMinimalForm), 0, 0, Verdict::not_applicable};
  std::size_t recorded = 0;
  for (StatementId l = 0; l < L.size(); ++l) {
    const StatementId m = minimal_equivalent_form(l, L, EquivalenceMode::semantic_truth_set);
    ++minimal.total;
    if (L[m].description_length() == 1) {
      ++minimal.passed;
    } else if (recorded < cap) {
      ++recorded;
      report.counterexamples.push_back({minimal.interpretation, fact_list(L[l], v), fact_list(L[m], v),
                                        "minimal length " + std::to_string(L[m].description_length())});
    }
  }
  minimal.verdict = verdict_from(minimal.passed, minimal.total);
  report.results.push_back(std::move(minimal));
  return report;
}

Vocabulary confounding_fixture() {
  // 1-based {1,2,4} and {1,3,4} over four states, re-indexed from 0.
  return Vocabulary(StateSpace(4), {Fact(0b1011), Fact(0b1101)});
}

PropositionReport check_confounding() {
  const Vocabulary v = confounding_fixture();
  const Language L = language_of(v);

  PropositionReport report;
  report.proposition = std::string(kConfounding);
  report.states = 4;
  report.vocabulary = vocabulary_list(v);
  report.counterexample_cap = L.size() * L.size();

  const bool language_ok = fixture_language_matches(L);
  report.results.push_back({std::string(kLanguageRow), language_ok ? 1U : 0U, 1, verdict_from(language_ok, 1)});
  if (!language_ok) {
    FactList got;
    for (const auto& s : L.statements()) got.push_back(s.facts.members());
    report.counterexamples.push_back({std::string(kLanguageRow), got, {}, "language has " +
                                      std::to_string(L.size()) + " statements (fact indices listed)"});
    return report;
  }

  for (const auto& o : confounding_orderings()) {
    const bool ok = ordering_holds(o, L);
    report.results.push_back({o.name, ok ? 1U : 0U, 1, verdict_from(ok, 1)});
    if (!ok)
      report.counterexamples.push_back({o.name, fact_list(L[L.id_of(FactMask(o.lhs))], v),
                                        fact_list(L[L.id_of(FactMask(o.rhs))], v), "ordering does not hold"});
  }

  InterpretationResult eq{std::string(kEquivalenceRow), 0, 0, Verdict::not_applicable};
  for (StatementId x = 0; x < L.size(); ++x)
    for (StatementId y = 0; y < L.size(); ++y) {
      ++eq.total;
      if (pair_agrees(x, y, L)) {
        ++eq.passed;
      } else {
        report.counterexamples.push_back({eq.interpretation, fact_list(L[x], v), fact_list(L[y], v),
                                          weakness_less(x, y, L) ? "<_w holds, <_d does not"
                                                                 : "<_d holds, <_w does not"});
      }
    }
  eq.verdict = verdict_from(eq.passed, eq.total);
  report.results.push_back(std::move(eq));
  return report;
}

bool replay_fails(const PropositionReport& report, const Counterexample& cx) {
  if (report.proposition == kSubjectivity) {
    const Vocabulary v = full_vocabulary(StateSpace(report.states));
    const Language L = language_of(v);
    const auto l = statement_from(cx.subject, v, L);
    const auto ref = statement_from(cx.reference, v, L);
    if (!l || !ref) throw UsageError("counterexample statements are not in the language");
    if (cx.interpretation == kMinimalForm)
      return L[minimal_equivalent_form(*l, L, EquivalenceMode::semantic_truth_set)].description_length() != 1;
    const auto mode = mode_named(cx.interpretation);
    if (!mode) throw UsageError("unknown interpretation: " + cx.interpretation);
    return !equivalent(*l, collapsed(*l, v, L), L, *mode);
  }
  if (report.proposition == kConfounding) {
    const Vocabulary v = confounding_fixture();
    const Language L = language_of(v);
    if (cx.interpretation == kLanguageRow) return !fixture_language_matches(L);
    const auto x = statement_from(cx.subject, v, L);
    const auto y = statement_from(cx.reference, v, L);
    if (!x || !y) throw UsageError("counterexample statements are not in the language");
    if (cx.interpretation == kEquivalenceRow) return !pair_agrees(*x, *y, L);
    for (const auto& o : confounding_orderings())
      if (o.name == cx.interpretation) return !ordering_holds(o, L);
    throw UsageError("unknown interpretation: " + cx.interpretation);
  }
  throw UsageError("unknown proposition: " + report.proposition);
}

CorrelationReport correlation_report(const Language& L, const GeneralisationTable& g) {
  const std::size_t n = L.size();
  if (g.probability.size() != n) throw UsageError("generalisation table belongs to a different language");
  const auto w = stats::average_ranks(n, [&](std::size_t a, std::size_t b) {
    return L.weakness(static_cast<StatementId>(a)) < L.weakness(static_cast<StatementId>(b));
  });
  // negated description length: shorter statements rank higher
  const auto s = stats::average_ranks(n, [&](std::size_t a, std::size_t b) {
    return L[static_cast<StatementId>(a)].description_length() > L[static_cast<StatementId>(b)].description_length();
  });
  const auto gr = stats::average_ranks(n, [&](std::size_t a, std::size_t b) { return g.probability[a] < g.probability[b]; });

  CorrelationReport r;
  r.statements = n;
  r.mode = g.mode;
  r.population = g.population;
  r.weakness_vs_simplicity = stats::spearman(w, s);
  r.simplicity_vs_generalisation = stats::spearman(s, gr);
  r.weakness_vs_generalisation = stats::spearman(w, gr);
  r.partial_simplicity_given_weakness =
      stats::partial(r.simplicity_vs_generalisation, r.weakness_vs_simplicity, r.weakness_vs_generalisation);
  return r;
}

namespace {

constexpr std::uint64_t kParentDrawCap = 100000;

std::size_t child_size_for(const GenExperimentConfig& cfg, std::size_t parent_inputs) {
  return cfg.child_size == 0 ? parent_inputs - 1 : cfg.child_size;
}

bool parent_shape_ok(const GenExperimentConfig& cfg, std::size_t parent_inputs) {
  return parent_inputs >= 2 && child_size_for(cfg, parent_inputs) < parent_inputs;
}

// Fraction of the proxy-maximal policy set that also solves the parent.
double maximal_set_score(const IdSet& maximal, const PolicySet& parent_policies) {
  return static_cast<double>((maximal & parent_policies).count()) / static_cast<double>(maximal.count());
}

// Cheap existence check over the exhaustive universe.
bool any_eligible_parent(const TaskUniverse& u, const GenExperimentConfig& cfg) {
  const Language& L = u.language();
  for (const auto& g : u.groups()) {
    if (!parent_shape_ok(cfg, g.inputs.count())) continue;
    if (cfg.population == Population::all) return true;
    for (StatementId pi = 0; pi < L.size(); ++pi) {
      const IdSet o = g.outputs_domain & L.extension(pi);
      if (!o.empty() && (u.mode() == SubsetMode::lax || o != g.outputs_domain)) return true;
    }
  }
  return false;
}

RateSummary summarize(double mean, std::vector<double> boot) {
  if (boot.empty()) return {mean, mean, mean};
  const double lo = stats::percentile(boot, 0.025);
  const double hi = stats::percentile(std::move(boot), 0.975);
  return {mean, lo, hi};
}

}  // namespace

GenExperimentReport generalisation_experiment(const Language& L, const GenExperimentConfig& cfg) {
  if (cfg.trials == 0) throw ConfigError("the generalisation experiment needs at least one trial");
  const TaskSampler sampler(L, cfg.mode);
  if (sampler.universe() && !any_eligible_parent(*sampler.universe(), cfg))
    throw ConfigError("no eligible parent task: the configuration has no " + std::string(to_string(cfg.population)) +
                      " task with enough inputs for the child size");

  std::vector<TrialRecord> records(cfg.trials);
  detail::parallel_for(cfg.trials, [&](std::size_t t) {
    Rng rng = make_rng(cfg.seed, t);
    TrialRecord rec;
    while (true) {
      if (++rec.parent_draws > kParentDrawCap)
        throw ConfigError("no eligible parent task found within " + std::to_string(kParentDrawCap) + " draws");
      const Task parent = sampler.sample(rng).task;
      const std::size_t k = parent.inputs.count();
      if (!parent_shape_ok(cfg, k)) continue;
      const PolicySet parent_policies = correct_policies(parent, L);
      if (cfg.population == Population::solvable && parent_policies.empty()) continue;
      auto child = sample_child(parent, child_size_for(cfg, k), L, rng, cfg.outputs);
      if (!child) continue;
      const PolicySet child_policies = correct_policies(child.value(), L);
      if (child_policies.empty()) continue;

      std::size_t best_weakness = 0;
      int best_length = 65;
      child_policies.for_each([&](StatementId pi) {
        best_weakness = std::max(best_weakness, L.weakness(pi));
        best_length = std::min(best_length, L[pi].description_length());
      });
      IdSet weak_max(L.size()), simple_max(L.size());
      child_policies.for_each([&](StatementId pi) {
        if (L.weakness(pi) == best_weakness) weak_max.insert(pi);
        if (L[pi].description_length() == best_length) simple_max.insert(pi);
      });
      rec.weakness = maximal_set_score(weak_max, parent_policies);
      rec.simplicity = maximal_set_score(simple_max, parent_policies);
      break;
    }
    records[t] = rec;
  });

  GenExperimentReport report;
  report.config = cfg;
  report.distribution = sampler.distribution();
  report.trials = cfg.trials;

  const auto n = static_cast<double>(cfg.trials);
  double sum_w = 0, sum_d = 0;
  for (const auto& r : records) {
    sum_w += r.weakness;
    sum_d += r.simplicity;
  }
  const double mean_w = sum_w / n;
  const double mean_d = sum_d / n;
  if (mean_d > 0) report.ratio = mean_w / mean_d;

  std::vector<double> boot_w, boot_d, boot_ratio;
  Rng rng = make_rng(cfg.seed, ~std::uint64_t{0});
  for (std::size_t b = 0; b < cfg.bootstrap; ++b) {
    double bw = 0, bd = 0;
    for (std::uint64_t i = 0; i < cfg.trials; ++i) {
      const auto& r = records[uniform_below(rng, cfg.trials)];
      bw += r.weakness;
      bd += r.simplicity;
    }
    boot_w.push_back(bw / n);
    boot_d.push_back(bd / n);
    if (bd > 0) boot_ratio.push_back(bw / bd);
  }
  report.weakness = summarize(mean_w, std::move(boot_w));
  report.simplicity = summarize(mean_d, std::move(boot_d));
  if (report.ratio && !boot_ratio.empty()) {
    report.ratio_ci_low = stats::percentile(boot_ratio, 0.025);
    report.ratio_ci_high = stats::percentile(std::move(boot_ratio), 0.975);
  }
  report.records = std::move(records);
  return report;
}

}  // namespace razor
