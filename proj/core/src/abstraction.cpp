#include "razor/abstraction.hpp"

#include <algorithm>
#include <string>

#include "razor/errors.hpp"
#include "razor/extension.hpp"

namespace razor {

namespace {

bool language_order(const Statement& a, const Statement& b) {
  if (a.facts.count() != b.facts.count()) return a.facts.count() < b.facts.count();
  return a.facts < b.facts;
}

}  // namespace

Vocabulary::Vocabulary(StateSpace space, std::vector<Fact> facts) : space_(space), facts_(std::move(facts)) {
  if (facts_.size() > static_cast<std::size_t>(kMaxVocabularyFacts))
    throw ConfigError("vocabulary has " + std::to_string(facts_.size()) + " facts; the width guardrail is " +
                      std::to_string(kMaxVocabularyFacts));
  for (const Fact& f : facts_)
    if (!f.subset_of(space_.all()))
      throw ConfigError("fact mentions a state outside [0, " + std::to_string(space_.size()) + ")");
  std::sort(facts_.begin(), facts_.end());
  if (std::adjacent_find(facts_.begin(), facts_.end()) != facts_.end())
    throw ConfigError("vocabulary facts must be distinct state subsets");
}

bool Vocabulary::is_full() const {
  return space_.size() < 64 && facts_.size() == (std::size_t{1} << space_.size());
}

std::optional<int> Vocabulary::index_of(Fact fact) const {
  auto it = std::lower_bound(facts_.begin(), facts_.end(), fact);
  if (it == facts_.end() || *it != fact) return std::nullopt;
  return static_cast<int>(it - facts_.begin());
}

Vocabulary full_vocabulary(const StateSpace& space) {
  const int n = space.size();
  if (n >= 63 || (std::uint64_t{1} << n) > static_cast<std::uint64_t>(kMaxVocabularyFacts))
    throw ConfigError("full vocabulary over " + std::to_string(n) + " states needs 2^" + std::to_string(n) +
                      " facts; the width guardrail is " + std::to_string(kMaxVocabularyFacts));
  std::vector<Fact> facts;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) facts.emplace_back(m);
  return Vocabulary(space, std::move(facts));
}

std::string_view to_string(EquivalenceMode m) {
  switch (m) {
    case EquivalenceMode::syntactic_extension: return "syntactic-extension";
    case EquivalenceMode::weakness_cardinality: return "weakness-cardinality";
    case EquivalenceMode::semantic_truth_set: return "semantic-truth-set";
  }
  return "unknown";
}

std::optional<StatementId> Language::find(FactMask facts) const {
  const auto& st = impl_->statements;
  Statement probe{facts, StateSet{}};
  auto it = std::lower_bound(st.begin(), st.end(), probe, language_order);
  if (it == st.end() || it->facts != facts) return std::nullopt;
  return static_cast<StatementId>(it - st.begin());
}

StatementId Language::id_of(FactMask facts) const {
  auto id = find(facts);
  if (!id) throw UsageError("statement is not a member of the language");
  return *id;
}

bool Language::contains(const Statement& s) const {
  auto id = find(s.facts);
  return id && (*this)[*id].truth == s.truth;
}

const IdSet& Language::extension(StatementId id) const {
  if (id >= size()) throw UsageError("statement id " + std::to_string(id) + " outside the language");
  std::call_once(impl_->filled[id], [&] {
    // Completions of x are the statements holding every fact of x.
    IdSet acc = IdSet::full(size());
    for (int f : impl_->statements[id].facts.members()) acc &= impl_->with_fact[static_cast<std::size_t>(f)];
    impl_->extensions[id] = std::move(acc);
  });
  return impl_->extensions[id];
}

Language language_of(const Vocabulary& v, std::size_t max_statements) {
  auto impl = std::make_shared<Language::Impl>(v);
  auto& out = impl->statements;
  const auto facts = impl->vocabulary.facts();
  const int k = static_cast<int>(facts.size());

  // Depth-first over ascending fact indices. Empty intersection is inherited
  // by every superset, so those branches are pruned.
  struct Frame {
    int next;
    FactMask mask;
    StateSet truth;
  };
  std::vector<Frame> stack;
  stack.push_back({0, FactMask{}, StateSet(~std::uint64_t{0})});
  while (!stack.empty()) {
    Frame fr = stack.back();
    stack.pop_back();
    for (int f = k - 1; f >= fr.next; --f) {
      StateSet t = fr.truth & facts[static_cast<std::size_t>(f)];
      if (t.empty()) continue;
      FactMask m = fr.mask | FactMask::single(f);
      if (out.size() >= max_statements)
        throw ConfigError("language exceeds the statement guardrail of " + std::to_string(max_statements) +
                          " statements; use a smaller vocabulary");
      out.push_back({m, t});
      stack.push_back({f + 1, m, t});
    }
  }
  std::sort(out.begin(), out.end(), language_order);

  const std::size_t n = out.size();
  impl->with_fact.assign(static_cast<std::size_t>(k), IdSet(n));
  for (std::size_t i = 0; i < n; ++i)
    for (int f : out[i].facts.members()) impl->with_fact[static_cast<std::size_t>(f)].insert(static_cast<StatementId>(i));
  impl->filled = std::make_unique<std::once_flag[]>(n);
  impl->extensions.assign(n, IdSet{});
  return Language(std::move(impl));
}

StatementId minimal_equivalent_form(StatementId s, const Language& L, EquivalenceMode mode) {
  // Language order is (description length, mask), so the first hit is minimal.
  for (StatementId y = 0; y < L.size(); ++y)
    if (equivalent(s, y, L, mode)) return y;
  return s;
}

}  // namespace razor
