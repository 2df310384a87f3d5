#pragma once

// Executable claim checks over finite models: the subjectivity and
// confounding propositions, correlation reporting, and the child-to-parent
// generalisation experiment.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "razor/abstraction.hpp"
#include "razor/proxies.hpp"
#include "razor/tasks.hpp"

namespace razor {

enum class Verdict { holds, fails, not_applicable };
std::string_view to_string(Verdict v);

/// Verdict from counts: holds iff every case passed, not-applicable when there were none.
Verdict verdict_from(std::uint64_t passed, std::uint64_t total);

using FactList = std::vector<std::vector<int>>;  // each fact as its state indices

struct InterpretationResult {
  std::string interpretation;
  std::uint64_t passed = 0;
  std::uint64_t total = 0;
  Verdict verdict = Verdict::not_applicable;
};

/// A failing case with both sides written out as fact lists so it can be replayed.
struct Counterexample {
  std::string interpretation;
  FactList subject;
  FactList reference;
  std::string detail;
};

struct PropositionReport {
  std::string proposition;
  int states = 0;
  FactList vocabulary;
  std::vector<InterpretationResult> results;
  std::vector<Counterexample> counterexamples;
  std::size_t counterexample_cap = 0;

  bool any_fails() const;
};

inline constexpr std::size_t kDefaultCounterexampleCap = 32;

/// Over the full vocabulary at n states, compares every statement l against
/// {⋂l} under each equivalence mode, and checks that the minimal semantic form
/// of every l has description length 1. Requires n <= 3.
PropositionReport check_subjectivity(int n, const std::vector<EquivalenceMode>& modes,
                                     std::size_t cap = kDefaultCounterexampleCap);

/// The two-fact confounding fixture over four states: the language, the four
/// orderings of {a,b} against {a} and {b}, and (x <_w y) <=> (x <_d y) over all of L × L.
PropositionReport check_confounding();

/// The fixture vocabulary, 0-based: a = {0,1,3}, b = {0,2,3}.
Vocabulary confounding_fixture();

/// Re-runs a counterexample through the public operations; true if it still fails.
bool replay_fails(const PropositionReport& report, const Counterexample& cx);

struct CorrelationReport {
  std::size_t statements = 0;
  std::optional<double> weakness_vs_simplicity;          // ρ(weakness, -description length)
  std::optional<double> simplicity_vs_generalisation;    // ρ(-description length, g)
  std::optional<double> weakness_vs_generalisation;      // ρ(weakness, g)
  std::optional<double> partial_simplicity_given_weakness;
  SubsetMode mode = SubsetMode::strict;
  Population population = Population::all;
};

/// Spearman statistics over the statements of L; nullopt marks `undefined`.
CorrelationReport correlation_report(const Language& L, const GeneralisationTable& g);

struct GenExperimentConfig {
  SubsetMode mode = SubsetMode::lax;
  Population population = Population::solvable;
  std::uint64_t trials = 1000;
  std::size_t child_size = 0;  // 0: one fewer input than the parent
  std::uint64_t seed = 0;
  std::size_t bootstrap = 1000;
  ChildOutputs outputs = ChildOutputs::all_visible;
};

struct RateSummary {
  double mean = 0;
  double ci_low = 0;
  double ci_high = 0;
};

struct TrialRecord {
  std::uint64_t parent_draws = 0;  // parents drawn until one was eligible
  double weakness = 0;
  double simplicity = 0;
};

struct GenExperimentReport {
  GenExperimentConfig config;
  Distribution distribution = Distribution::uniform;
  std::uint64_t trials = 0;
  RateSummary weakness;
  RateSummary simplicity;
  std::optional<double> ratio;  // weakness / simplicity; nullopt when the simplicity rate is 0
  std::optional<double> ratio_ci_low;
  std::optional<double> ratio_ci_high;
  std::vector<TrialRecord> records;
};

/// Learns a parent from a sampled child with the <_w- and <_d-maximal correct
/// child policies; a proxy's trial score is the fraction of its maximal set
/// that is correct for the parent. Throws ConfigError when no eligible parent exists.
GenExperimentReport generalisation_experiment(const Language& L, const GenExperimentConfig& cfg);

}  // namespace razor
