#pragma once

// Search for vocabularies in which weaker statements take simpler forms.

#include <cstdint>
#include <functional>
#include <vector>

#include "razor/abstraction.hpp"

namespace razor {

/// Fraction of distinct ordered pairs (x, y) of L with (x <_w y) <=> (x <_d y).
/// 1.0 when L has fewer than two statements.
double confounding_score(const Language& L);

using SearchObjective = std::function<double(const Language&)>;

struct SearchConfig {
  int states = 4;
  int facts = 2;                      // vocabulary size k
  std::uint64_t budget = 100000;      // cap on objective evaluations
  int restarts = 16;
  std::uint64_t seed = 0;
  std::size_t max_statements = 1U << 16;  // per-vocabulary language guardrail
  SearchObjective objective = confounding_score;
};

struct ScoredVocabulary {
  std::vector<Fact> facts;
  double score = 0;
  std::size_t language_size = 0;
};

struct SearchReport {
  ScoredVocabulary best;
  bool exhaustive = false;
  bool incomplete = false;  // budget ran out before the search finished
  std::uint64_t evaluations = 0;
  std::vector<ScoredVocabulary> sweep;          // every vocabulary, exhaustive mode only
  std::vector<ScoredVocabulary> perfect;        // score 1.0, exhaustive mode only
  std::vector<std::vector<double>> traces;      // accepted scores per hill-climb restart
};

/// Number of k-subsets of the 2^n candidate facts, saturating at UINT64_MAX.
std::uint64_t vocabulary_count(int states, int facts);

/// Exhaustive over all k-subsets of facts when their count fits the budget,
/// otherwise seeded best-improvement hill climbing (swap one fact for an unused one)
/// with restarts sharing the budget equally.
SearchReport search_confounded_vocabulary(const SearchConfig& cfg);

}  // namespace razor
