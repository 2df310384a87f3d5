#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "razor/errors.hpp"
#include "razor/experiments.hpp"
#include "razor/extension.hpp"

using namespace razor;

namespace {

Language fixture() { return language_of(confounding_fixture()); }

}  // namespace

TEST(StateSpace, Bounds) {
  EXPECT_THROW(StateSpace(0), ConfigError);
  EXPECT_THROW(StateSpace(65), ConfigError);
  EXPECT_EQ(StateSpace(64).all().bits(), ~std::uint64_t{0});
  EXPECT_EQ(StateSpace(4).all().bits(), 0b1111U);
}

TEST(Statement, TruthAndIntersection) {
  const std::vector<Fact> facts{Fact(0b1011), Fact(0b1101)};
  const StateSpace space(4);
  auto s = validate_statement(FactMask(0b11), facts);
  ASSERT_TRUE(s.ok());
  EXPECT_EQ(s.value().truth.bits(), 0b1001U);
  EXPECT_TRUE(is_true(s.value(), 0, space));
  EXPECT_FALSE(is_true(s.value(), 1, space));
  EXPECT_TRUE(is_true(s.value(), 3, space));
  EXPECT_THROW(is_true(s.value(), 4, space), UsageError);
  EXPECT_THROW(intersection(FactMask(0), facts), UsageError);
}

TEST(Statement, Rejections) {
  const std::vector<Fact> facts{Fact(0b0011), Fact(0b1100)};
  EXPECT_EQ(validate_statement(FactMask(0), facts).reason(), StatementError::empty_statement);
  EXPECT_EQ(validate_statement(FactMask(0b11), facts).reason(), StatementError::empty_intersection);
  EXPECT_TRUE(validate_statement(FactMask(0b10), facts).ok());
}

TEST(Vocabulary, SortsAndValidates) {
  const StateSpace space(3);
  Vocabulary v(space, {Fact(0b110), Fact(0b001)});
  EXPECT_EQ(v[0].bits(), 0b001U);
  EXPECT_EQ(v[1].bits(), 0b110U);
  EXPECT_EQ(v.index_of(Fact(0b110)), 1);
  EXPECT_FALSE(v.index_of(Fact(0b111)).has_value());
  EXPECT_THROW(Vocabulary(space, {Fact(0b1000)}), ConfigError);
  EXPECT_THROW(Vocabulary(space, {Fact(1), Fact(1)}), ConfigError);
  EXPECT_NO_THROW(full_vocabulary(StateSpace(6)));
  EXPECT_THROW(full_vocabulary(StateSpace(7)), ConfigError);
  EXPECT_TRUE(full_vocabulary(StateSpace(2)).is_full());
  EXPECT_FALSE(v.is_full());
}

TEST(Language, FixtureStatements) {
  const Language L = fixture();
  ASSERT_EQ(L.size(), 3U);
  EXPECT_EQ(L[0].facts.bits(), 0b01U);
  EXPECT_EQ(L[1].facts.bits(), 0b10U);
  EXPECT_EQ(L[2].facts.bits(), 0b11U);
  EXPECT_EQ(L[2].truth.bits(), 0b1001U);
  EXPECT_EQ(L.weakness(0), 2U);
  EXPECT_EQ(L.weakness(2), 1U);
}

TEST(Language, FullVocabularyCountsMatchBruteForce) {
  EXPECT_EQ(language_of(full_vocabulary(StateSpace(1))).size(), 1U);
  EXPECT_EQ(language_of(full_vocabulary(StateSpace(2))).size(), 5U);
  EXPECT_EQ(language_of(full_vocabulary(StateSpace(3))).size(), 37U);
  for (int n = 1; n <= 3; ++n) {
    const Language L = language_of(full_vocabulary(StateSpace(n)));
    const auto expect = oracle::statements(oracle::full_facts(n));
    ASSERT_EQ(L.size(), expect.size()) << "n=" << n;
    std::set<std::uint64_t> got;
    for (const auto& s : L.statements()) got.insert(s.facts.bits());
    EXPECT_EQ(got, std::set<std::uint64_t>(expect.begin(), expect.end()));
  }
}

TEST(Language, RandomVocabulariesMatchBruteForce) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const int k = 1 + static_cast<int>(rng() % 8);
    const auto facts = oracle::random_facts(n, k, rng);
    const Language L = oracle::language(n, facts);
    const auto expect = oracle::statements(facts);
    ASSERT_EQ(L.size(), expect.size());
    for (auto m : expect) EXPECT_TRUE(L.find(FactMask(m)).has_value());
  }
}

TEST(Language, OrderedByLengthThenMask) {
  const Language L = language_of(full_vocabulary(StateSpace(3)));
  for (StatementId i = 1; i < L.size(); ++i) {
    const auto a = std::pair(L[i - 1].description_length(), L[i - 1].facts.bits());
    const auto b = std::pair(L[i].description_length(), L[i].facts.bits());
    EXPECT_LT(a, b);
  }
}

TEST(Language, GuardrailNamesTheLimit) {
  try {
    (void)language_of(full_vocabulary(StateSpace(3)), 10);
    FAIL() << "expected a guardrail error";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("10"), std::string::npos);
  }
}

TEST(Extension, MatchesNaiveFilter) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const auto facts = oracle::random_facts(n, 1 + static_cast<int>(rng() % 6), rng);
    const Language L = oracle::language(n, facts);
    const auto ext = oracle::extensions(L);
    for (StatementId x = 0; x < L.size(); ++x) {
      EXPECT_EQ(L.extension(x).low_word(), ext[x]);
      EXPECT_EQ(extension(L[x], L).low_word(), ext[x]);
      EXPECT_EQ(weakness(L[x], L), static_cast<std::size_t>(std::popcount(ext[x])));
    }
  }
}

TEST(Extension, SetIsUnion) {
  const Language L = fixture();
  IdSet x = L.empty_set();
  x.insert(0);
  x.insert(1);
  EXPECT_EQ(extension_of_set(x, L).count(), 3U);
  const std::vector<StatementId> ids{2};
  EXPECT_EQ(extension_of_set(std::span<const StatementId>(ids), L).count(), 1U);
}

TEST(Extension, ForeignStatement) {
  const Language L = fixture();
  Statement s{FactMask(0b100), StateSet(1)};
  EXPECT_THROW(extension(s, L), UsageError);
}

TEST(Equivalence, ModesDiffer) {
  const Language L = language_of(full_vocabulary(StateSpace(2)));
  // facts sorted: {} {0} {1} {0,1}; statement {{0},{0,1}} vs {{0}}
  const StatementId l = L.id_of(FactMask(0b1010));
  const StatementId f = L.id_of(FactMask(0b0010));
  EXPECT_FALSE(equivalent(l, f, L, EquivalenceMode::syntactic_extension));
  EXPECT_FALSE(equivalent(l, f, L, EquivalenceMode::weakness_cardinality));
  EXPECT_TRUE(equivalent(l, f, L, EquivalenceMode::semantic_truth_set));
  EXPECT_EQ(minimal_equivalent_form(l, L, EquivalenceMode::semantic_truth_set), f);
  EXPECT_EQ(minimal_equivalent_form(l, L, EquivalenceMode::syntactic_extension), l);
}

TEST(Equivalence, FixtureWeaknessCardinality) {
  const Language L = fixture();
  EXPECT_TRUE(equivalent(0, 1, L, EquivalenceMode::weakness_cardinality));
  EXPECT_FALSE(equivalent(0, 1, L, EquivalenceMode::syntactic_extension));
  EXPECT_EQ(minimal_equivalent_form(1, L, EquivalenceMode::weakness_cardinality), 0U);
}
