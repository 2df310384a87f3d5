#include "razor/vocabulary_search.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "parallel.hpp"
#include "razor/errors.hpp"
#include "razor/proxies.hpp"
#include "razor/random.hpp"
#include "razor/rational.hpp"

namespace razor {

double confounding_score(const Language& L) {
  const std::size_t n = L.size();
  if (n < 2) return 1.0;
  std::uint64_t agree = 0;
  for (StatementId x = 0; x < n; ++x)
    for (StatementId y = 0; y < n; ++y)
      if (x != y && weakness_less(x, y, L) == simplicity_less(L[x], L[y])) ++agree;
  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1);
  return agree == total ? 1.0 : static_cast<double>(agree) / static_cast<double>(total);
}

std::uint64_t vocabulary_count(int states, int facts) {
  const std::uint64_t pool = std::uint64_t{1} << states;
  if (facts < 0 || static_cast<std::uint64_t>(facts) > pool) return 0;
  uint128 c = 1;
  for (int i = 1; i <= facts; ++i) {
    c = c * (pool - static_cast<std::uint64_t>(facts) + static_cast<std::uint64_t>(i)) / static_cast<unsigned>(i);
    if (c > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(c);
}

namespace {

void validate(const SearchConfig& cfg) {
  if (cfg.states < 1 || cfg.states > 8)
    throw ConfigError("vocabulary search supports 1 <= n <= 8 states, got " + std::to_string(cfg.states));
  const int pool = 1 << cfg.states;
  if (cfg.facts < 1 || cfg.facts > std::min(pool, kMaxVocabularyFacts))
    throw ConfigError("vocabulary size k must be in [1, " + std::to_string(std::min(pool, kMaxVocabularyFacts)) +
                      "], got " + std::to_string(cfg.facts));
  if (cfg.budget == 0) throw ConfigError("search budget must be positive");
  if (cfg.restarts < 1) throw ConfigError("hill climbing needs at least one restart");
  if (!cfg.objective) throw ConfigError("search objective is empty");
}

ScoredVocabulary evaluate(const SearchConfig& cfg, std::vector<Fact> facts) {
  const Language L = language_of(Vocabulary(StateSpace(cfg.states), facts), cfg.max_statements);
  return {std::move(facts), cfg.objective(L), L.size()};
}

std::vector<Fact> to_facts(const std::vector<std::uint32_t>& idx) {
  std::vector<Fact> out;
  for (auto i : idx) out.emplace_back(i);
  return out;
}

struct ClimbResult {
  ScoredVocabulary best;
  std::vector<double> trace;
  std::uint64_t evaluations = 0;
  bool incomplete = false;
};

ClimbResult climb(const SearchConfig& cfg, std::uint64_t budget, Rng rng) {
  const auto pool = static_cast<std::uint32_t>(1U << cfg.states);
  const auto k = static_cast<std::size_t>(cfg.facts);
  std::vector<std::uint32_t> all(pool);
  std::iota(all.begin(), all.end(), 0U);
  for (std::size_t i = 0; i < k; ++i) std::swap(all[i], all[i + uniform_below(rng, pool - i)]);
  std::vector<std::uint32_t> current(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(current.begin(), current.end());

  ClimbResult out;
  out.best = evaluate(cfg, to_facts(current));
  out.evaluations = 1;
  out.trace.push_back(out.best.score);

  while (out.best.score < 1.0) {
    std::optional<std::vector<std::uint32_t>> next;
    ScoredVocabulary next_score;
    next_score.score = out.best.score;
    for (std::size_t i = 0; i < k && !out.incomplete; ++i) {
      for (std::uint32_t c = 0; c < pool; ++c) {
        if (std::binary_search(current.begin(), current.end(), c)) continue;
        if (out.evaluations >= budget) {
          out.incomplete = true;
          break;
        }
        auto candidate = current;
        candidate[i] = c;
        std::sort(candidate.begin(), candidate.end());
        auto scored = evaluate(cfg, to_facts(candidate));
        ++out.evaluations;
        if (scored.score > next_score.score) {
          next_score = std::move(scored);
          next = std::move(candidate);
        }
      }
    }
    if (!next) break;
    current = std::move(*next);
    out.best = std::move(next_score);
    out.trace.push_back(out.best.score);
    if (out.incomplete) break;
  }
  return out;
}

}  // namespace

SearchReport search_confounded_vocabulary(const SearchConfig& cfg) {
  validate(cfg);
  SearchReport report;
  const auto pool = static_cast<std::uint32_t>(1U << cfg.states);
  const auto k = static_cast<std::size_t>(cfg.facts);

  if (vocabulary_count(cfg.states, cfg.facts) <= cfg.budget) {
    report.exhaustive = true;
    std::vector<std::uint32_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0U);
    while (true) {
      auto scored = evaluate(cfg, to_facts(idx));
      ++report.evaluations;
      if (report.sweep.empty() || scored.score > report.best.score) report.best = scored;
      if (scored.score == 1.0) report.perfect.push_back(scored);
      report.sweep.push_back(std::move(scored));
      // next combination in lexicographic order
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == pool - k + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return report;
  }

  const auto restarts = static_cast<std::size_t>(cfg.restarts);
  const std::uint64_t per_restart = std::max<std::uint64_t>(1, cfg.budget / restarts);
  std::vector<ClimbResult> results(restarts);
  detail::parallel_for(restarts, [&](std::size_t r) { results[r] = climb(cfg, per_restart, make_rng(cfg.seed, r)); });

  for (std::size_t r = 0; r < restarts; ++r) {
    auto& res = results[r];
    report.evaluations += res.evaluations;
    report.incomplete = report.incomplete || res.incomplete;
    if (r == 0 || res.best.score > report.best.score) report.best = res.best;
    report.traces.push_back(std::move(res.trace));
  }
  return report;
}

}  // namespace razor
