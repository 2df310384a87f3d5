#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "razor/errors.hpp"
#include "razor/experiments.hpp"
#include "razor/proxies.hpp"

using namespace razor;

namespace {

Language fixture() { return language_of(confounding_fixture()); }

GeneralisationTable table(const Language& L, SubsetMode mode, Population pop = Population::all) {
  return generalisation_table(enumerate_tasks(L, mode), pop);
}

}  // namespace

TEST(Ratio, ExactComparison) {
  EXPECT_EQ((Ratio{5, 14}), (Ratio{10, 28}));
  EXPECT_LT((Ratio{3, 14}), (Ratio{5, 14}));
  EXPECT_EQ((Ratio{10, 28}).reduced().str(), "5/14");
  EXPECT_EQ((Ratio{0, 9}).reduced().str(), "0/1");
}

TEST(Generalisation, FixtureStrict) {
  const Language L = fixture();
  const auto g = table(L, SubsetMode::strict);
  EXPECT_TRUE(g.exact);
  EXPECT_EQ(g.probability[2], (Ratio{5, 14}));  // {a,b}
  EXPECT_EQ(g.probability[0], (Ratio{3, 14}));  // {a}
  EXPECT_EQ(g.probability[1], (Ratio{3, 14}));  // {b}
  EXPECT_EQ(g.probability[2].num, 5U);
  EXPECT_EQ(g.probability[2].den, 14U);
}

TEST(Generalisation, MatchesDefinitionalLoop) {
  std::mt19937_64 rng(11);
  int checked = 0;
  while (checked < 25) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const Language L = oracle::language(n, oracle::random_facts(n, 1 + static_cast<int>(rng() % 4), rng));
    if (L.size() < 2 || L.size() > 7) continue;
    ++checked;
    for (bool strict : {true, false}) {
      const auto u = enumerate_tasks(L, strict ? SubsetMode::strict : SubsetMode::lax);
      if (u.size() == 0) continue;
      for (bool solvable : {false, true}) {
        const auto expect = oracle::generalisation(L, strict, solvable);
        if (expect.empty() || expect[0].den == 0) continue;
        const auto g = generalisation_table(u, solvable ? Population::solvable : Population::all);
        for (StatementId x = 0; x < L.size(); ++x) {
          EXPECT_EQ(g.probability[x], expect[x]);
          EXPECT_EQ(g.probability[x].den, expect[x].den);
        }
      }
    }
  }
}

TEST(Generalisation, EmptyPopulation) {
  const Language L = oracle::language(2, {0b01});
  EXPECT_THROW((void)table(L, SubsetMode::lax), ConfigError);
}

TEST(Generalisation, EstimateCarriesLabels) {
  const Language L = fixture();
  Rng rng(3);
  const auto g = estimate_generalisation(L, SubsetMode::strict, Population::all, 20000, rng);
  EXPECT_FALSE(g.exact);
  EXPECT_EQ(g.trials, 20000U);
  EXPECT_EQ(g.distribution, Distribution::uniform);
  EXPECT_NEAR(g.probability[2].value(), 5.0 / 14.0, 0.02);
  EXPECT_THROW((void)sample_efficiency_delta(weakness_proxy(L), simplicity_proxy(L), L, g), Unsupported);
}

TEST(Orders, FixtureOrderings) {
  const Language L = fixture();
  EXPECT_TRUE(weakness_less(2, 0, L));
  EXPECT_TRUE(weakness_less(2, 1, L));
  EXPECT_FALSE(weakness_less(0, 1, L));
  EXPECT_TRUE(simplicity_less(L[2], L[0]));
  EXPECT_FALSE(simplicity_less(L[0], L[0]));
}

TEST(Disagreement, MatchesPairwiseCount) {
  std::mt19937_64 rng(21);
  int checked = 0;
  while (checked < 20) {
    const int n = 3 + static_cast<int>(rng() % 2);
    const Language L = oracle::language(n, oracle::random_facts(n, 2 + static_cast<int>(rng() % 3), rng));
    if (L.size() < 2 || L.size() > 8) continue;
    ++checked;
    const auto g = table(L, SubsetMode::lax);
    const auto p = oracle::generalisation(L, false, false);
    const auto ext = oracle::extensions(L);
    auto g_rel = [&](std::size_t x, std::size_t y) { return p[x] < p[y]; };
    auto w_rel = [&](std::size_t x, std::size_t y) { return std::popcount(ext[x]) < std::popcount(ext[y]); };
    auto d_rel = [&](std::size_t x, std::size_t y) {
      return std::popcount(L[x].facts.bits()) > std::popcount(L[y].facts.bits());
    };
    const Relation rg(generalisation_proxy(g), L.size());
    const Relation rw(weakness_proxy(L), L.size());
    const Relation rd(simplicity_proxy(L), L.size());
    const auto dw = oracle::disagreement(L.size(), g_rel, w_rel);
    const auto dd = oracle::disagreement(L.size(), g_rel, d_rel);
    EXPECT_EQ(disagreement(rg, rw), dw);
    EXPECT_EQ(disagreement(rg, rd), dd);
    EXPECT_EQ(sample_efficiency_delta(weakness_proxy(L), simplicity_proxy(L), L, g),
              static_cast<std::int64_t>(dw) - static_cast<std::int64_t>(dd));
  }
}

TEST(Disagreement, FixtureDeltaIsZero) {
  // <_w and <_d coincide on the fixture, so their scores against any <_g coincide.
  const Language L = fixture();
  for (auto mode : {SubsetMode::strict, SubsetMode::lax})
    EXPECT_EQ(sample_efficiency_delta(weakness_proxy(L), simplicity_proxy(L), L, table(L, mode)), 0);
}

TEST(RandomProxy, StrictTotalOrderFixedBySeed) {
  const Language L = language_of(full_vocabulary(StateSpace(2)));
  const Proxy a = random_proxy(L, 5, "r");
  const Proxy b = random_proxy(L, 5, "r");
  for (StatementId x = 0; x < L.size(); ++x) {
    EXPECT_FALSE(a.less(x, x));
    for (StatementId y = 0; y < L.size(); ++y) {
      EXPECT_EQ(a.less(x, y), b.less(x, y));
      if (x != y) {
        EXPECT_NE(a.less(x, y), a.less(y, x));
      }
    }
  }
}

TEST(Battery, FixtureLaxTable) {
  // All lax probabilities tie at 6/20, so <_g is empty and a proxy's score is its pair count.
  const Language L = fixture();
  const auto g = table(L, SubsetMode::lax);
  for (StatementId x = 0; x < L.size(); ++x) EXPECT_EQ(g.probability[x], (Ratio{6, 20}));
  const auto report = proxy_battery_table(L, g, default_battery(L, 0));
  ASSERT_EQ(report.rows.size(), 8U);
  EXPECT_TRUE(report.weakness_minimal);
  for (const auto& r : report.rows) {
    if (r.proxy.rfind("random-", 0) == 0) {
      EXPECT_EQ(r.score, 3U);
      EXPECT_EQ(r.delta_w, 1);
      EXPECT_EQ(r.rank, 4U);
    } else {
      EXPECT_EQ(r.score, 2U);
      EXPECT_EQ(r.delta_w, 0);
      EXPECT_EQ(r.rank, 1U);
    }
  }
  EXPECT_EQ(report.rows[0].proxy, "weakness");
  EXPECT_EQ(report.rows[1].proxy, "simplicity");
  EXPECT_EQ(report.rows[2].proxy, "anti-weakness");
}

TEST(Battery, StrictFixtureIsReportedNotAsserted) {
  const Language L = fixture();
  const auto report = proxy_battery_table(L, table(L, SubsetMode::strict), default_battery(L, 0));
  EXPECT_FALSE(report.weakness_minimal);
  EXPECT_EQ(report.mode, SubsetMode::strict);
  EXPECT_EQ(report.rows.front().proxy, "anti-weakness");
  EXPECT_EQ(report.rows.front().score, 0U);
}

TEST(Battery, NeedsWeakness) {
  const Language L = fixture();
  EXPECT_THROW((void)proxy_battery_table(L, table(L, SubsetMode::lax), {simplicity_proxy(L)}), UsageError);
}
