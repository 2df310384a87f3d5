#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "razor/errors.hpp"
#include "razor/experiments.hpp"

using namespace razor;

namespace {

const std::vector<EquivalenceMode> kAllModes{EquivalenceMode::syntactic_extension,
                                             EquivalenceMode::weakness_cardinality,
                                             EquivalenceMode::semantic_truth_set};

const InterpretationResult& row(const PropositionReport& r, std::string_view name) {
  for (const auto& x : r.results)
    if (x.interpretation == name) return x;
  throw std::runtime_error("missing row");
}

// Average ranks computed by counting, independent of the library's sort.
std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<double> out;
  for (double a : v) {
    double below = 0, equal = 0;
    for (double b : v) {
      if (b < a) ++below;
      if (b == a) ++equal;
    }
    out.push_back(below + (equal + 1) / 2);
  }
  return out;
}

std::optional<double> corr(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i] / n, my += y[i] / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

TEST(Subjectivity, TwoStates) {
  const auto r = check_subjectivity(2, kAllModes);
  EXPECT_EQ(row(r, "semantic-truth-set").passed, 5U);
  EXPECT_EQ(row(r, "semantic-truth-set").verdict, Verdict::holds);
  EXPECT_EQ(row(r, "minimal-semantic-form-length-1").verdict, Verdict::holds);
  EXPECT_EQ(row(r, "syntactic-extension").verdict, Verdict::fails);
  EXPECT_TRUE(r.any_fails());
  const auto it = std::find_if(r.counterexamples.begin(), r.counterexamples.end(), [](const Counterexample& c) {
    return c.interpretation == "syntactic-extension" && c.subject == FactList{{0}, {0, 1}};
  });
  ASSERT_NE(it, r.counterexamples.end());
  EXPECT_EQ(it->reference, (FactList{{0}}));
}

TEST(Subjectivity, ThreeStates) {
  const auto r = check_subjectivity(3, kAllModes);
  EXPECT_EQ(row(r, "semantic-truth-set").passed, 37U);
  EXPECT_EQ(row(r, "semantic-truth-set").total, 37U);
  EXPECT_EQ(row(r, "minimal-semantic-form-length-1").passed, 37U);
  EXPECT_LT(row(r, "syntactic-extension").passed, 37U);
  EXPECT_LE(r.counterexamples.size(), r.counterexample_cap * 2);
}

TEST(Subjectivity, OneStateIsVacuous) {
  const auto r = check_subjectivity(1, kAllModes);
  EXPECT_FALSE(r.any_fails());
  EXPECT_TRUE(r.counterexamples.empty());
}

TEST(Subjectivity, Guardrail) { EXPECT_THROW((void)check_subjectivity(4, kAllModes), ConfigError); }

TEST(Subjectivity, CounterexamplesReplay) {
  const auto r = check_subjectivity(3, kAllModes);
  ASSERT_FALSE(r.counterexamples.empty());
  for (const auto& cx : r.counterexamples) EXPECT_TRUE(replay_fails(r, cx));
}

TEST(Confounding, FixtureHolds) {
  const auto r = check_confounding();
  EXPECT_FALSE(r.any_fails());
  ASSERT_EQ(r.results.size(), 6U);
  for (const auto& x : r.results) EXPECT_EQ(x.verdict, Verdict::holds) << x.interpretation;
  EXPECT_EQ(r.results.back().total, 9U);
  EXPECT_EQ(r.vocabulary, (FactList{{0, 1, 3}, {0, 2, 3}}));
}

TEST(Correlation, FixtureIsPerfectlyConfounded) {
  const Language L = language_of(confounding_fixture());
  const auto g = generalisation_table(enumerate_tasks(L, SubsetMode::strict), Population::all);
  const auto r = correlation_report(L, g);
  ASSERT_TRUE(r.weakness_vs_simplicity.has_value());
  EXPECT_NEAR(*r.weakness_vs_simplicity, 1.0, 1e-12);
  EXPECT_FALSE(r.partial_simplicity_given_weakness.has_value());
}

TEST(Correlation, EqualLengthsAreUndefined) {
  const Language L = oracle::language(3, {0b001, 0b010, 0b100});
  const auto g = generalisation_table(enumerate_tasks(L, SubsetMode::lax), Population::all);
  const auto r = correlation_report(L, g);
  EXPECT_FALSE(r.weakness_vs_simplicity.has_value());
  EXPECT_FALSE(r.simplicity_vs_generalisation.has_value());
}

TEST(Correlation, SeededVocabularyMatchesOracle) {
  std::mt19937_64 rng(4242);
  const auto facts = oracle::random_facts(4, 4, rng);
  const Language L = oracle::language(4, facts);
  ASSERT_LE(L.size(), 12U);
  for (bool strict : {true, false}) {
    const auto g = generalisation_table(enumerate_tasks(L, strict ? SubsetMode::strict : SubsetMode::lax),
                                        Population::all);
    const auto p = oracle::generalisation(L, strict, false);
    const auto ext = oracle::extensions(L);
    std::vector<double> w, d, gv;
    for (StatementId x = 0; x < L.size(); ++x) {
      w.push_back(std::popcount(ext[x]));
      d.push_back(-std::popcount(L[x].facts.bits()));
      gv.push_back(static_cast<double>(p[x].num) / static_cast<double>(p[x].den));
    }
    const auto rw = ranks(w), rd = ranks(d), rg = ranks(gv);
    const auto r = correlation_report(L, g);
    auto same = [](std::optional<double> a, std::optional<double> b) {
      ASSERT_EQ(a.has_value(), b.has_value());
      if (a) {
        EXPECT_NEAR(*a, *b, 1e-12);
      }
    };
    same(r.weakness_vs_simplicity, corr(rw, rd));
    same(r.simplicity_vs_generalisation, corr(rd, rg));
    same(r.weakness_vs_generalisation, corr(rw, rg));
  }
}

TEST(GenExperiment, DeterministicAndBounded) {
  const Language L = language_of(full_vocabulary(StateSpace(2)));
  GenExperimentConfig cfg;
  cfg.trials = 300;
  cfg.seed = 99;
  cfg.bootstrap = 200;
  const auto a = generalisation_experiment(L, cfg);
  const auto b = generalisation_experiment(L, cfg);
  EXPECT_EQ(a.weakness.mean, b.weakness.mean);
  EXPECT_EQ(a.simplicity.ci_low, b.simplicity.ci_low);
  EXPECT_EQ(a.ratio, b.ratio);
  EXPECT_EQ(a.distribution, Distribution::uniform);
  for (const auto& r : a.records) {
    EXPECT_GE(r.weakness, 0.0);
    EXPECT_LE(r.weakness, 1.0);
    EXPECT_GE(r.simplicity, 0.0);
    EXPECT_LE(r.simplicity, 1.0);
    EXPECT_GE(r.parent_draws, 1U);
  }
  EXPECT_LE(a.weakness.ci_low, a.weakness.mean);
  EXPECT_GE(a.weakness.ci_high, a.weakness.mean);
}

TEST(GenExperiment, Errors) {
  const Language L = language_of(confounding_fixture());
  GenExperimentConfig cfg;
  cfg.trials = 0;
  EXPECT_THROW((void)generalisation_experiment(L, cfg), ConfigError);
  cfg.trials = 10;
  cfg.child_size = 2;  // fixture parents have at most two inputs
  EXPECT_THROW((void)generalisation_experiment(L, cfg), ConfigError);
}

TEST(GenExperiment, FixtureRatesCoincide) {
  // <_w and <_d induce the same maximal sets on the fixture.
  const Language L = language_of(confounding_fixture());
  GenExperimentConfig cfg;
  cfg.trials = 500;
  cfg.seed = 3;
  const auto r = generalisation_experiment(L, cfg);
  for (const auto& rec : r.records) EXPECT_EQ(rec.weakness, rec.simplicity);
  ASSERT_TRUE(r.ratio.has_value());
  EXPECT_EQ(*r.ratio, 1.0);
}

namespace {

// Exact expected rates: parents uniform over solvable tasks with |I| >= 2 that
// admit a valid child, children uniform over valid (|I|-1)-subsets.
std::pair<double, double> exact_rates(const Language& L, bool strict) {
  const auto ext = oracle::extensions(L);
  double sum_w = 0, sum_d = 0;
  std::uint64_t parents = 0;
  for (const auto& t : oracle::tasks(L, strict)) {
    const auto k = std::popcount(t.inputs);
    const auto parent_pi = oracle::policies(t, ext);
    if (k < 2 || parent_pi == 0) continue;
    double pw = 0, pd = 0;
    std::uint64_t children = 0;
    for (std::uint64_t sub = t.inputs; sub != 0; sub = (sub - 1) & t.inputs) {
      if (std::popcount(sub) != k - 1) continue;
      const std::uint64_t e = oracle::extension_of(sub, ext);
      const oracle::Task child{sub, t.outputs & e};
      if (child.outputs == 0 || (strict && child.outputs == e)) continue;
      const auto pi = oracle::policies(child, ext);
      int best_w = 0, best_d = 65;
      for (std::size_t p = 0; p < L.size(); ++p)
        if ((pi >> p) & 1U) {
          best_w = std::max(best_w, std::popcount(ext[p]));
          best_d = std::min(best_d, std::popcount(L[p].facts.bits()));
        }
      double in_w = 0, n_w = 0, in_d = 0, n_d = 0;
      for (std::size_t p = 0; p < L.size(); ++p) {
        if (!((pi >> p) & 1U)) continue;
        const bool good = (parent_pi >> p) & 1U;
        if (std::popcount(ext[p]) == best_w) n_w += 1, in_w += good;
        if (std::popcount(L[p].facts.bits()) == best_d) n_d += 1, in_d += good;
      }
      pw += in_w / n_w;
      pd += in_d / n_d;
      ++children;
    }
    if (children == 0) continue;
    sum_w += pw / static_cast<double>(children);
    sum_d += pd / static_cast<double>(children);
    ++parents;
  }
  return {sum_w / static_cast<double>(parents), sum_d / static_cast<double>(parents)};
}

}  // namespace

TEST(GenExperiment, AgreesWithExactExpectation) {
  for (const Language& L : {language_of(confounding_fixture()), language_of(full_vocabulary(StateSpace(2)))}) {
    const auto [w, d] = exact_rates(L, false);
    GenExperimentConfig cfg;
    cfg.trials = 4000;
    cfg.seed = 12;
    cfg.bootstrap = 0;
    const auto r = generalisation_experiment(L, cfg);
    EXPECT_NEAR(r.weakness.mean, w, 0.025);
    EXPECT_NEAR(r.simplicity.mean, d, 0.025);
  }
}

TEST(GenExperiment, FullTwoStateExactRatesFavourSimplicity) {
  const auto [w, d] = exact_rates(language_of(full_vocabulary(StateSpace(2))), false);
  EXPECT_LT(w, d);
}
