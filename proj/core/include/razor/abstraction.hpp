#pragma once

// Abstraction layers: a vocabulary of facts and the language of statements it
// induces. Languages are immutable and cheap to copy (shared state).

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "razor/bits.hpp"
#include "razor/universe.hpp"

namespace razor {

/// Upper bound on |L| for exhaustive language enumeration.
inline constexpr std::size_t kDefaultMaxStatements = std::size_t{1} << 22;

/// A finite set of distinct facts, kept sorted by state mask.
class Vocabulary {
 public:
  Vocabulary(StateSpace space, std::vector<Fact> facts);

  const StateSpace& space() const { return space_; }
  std::span<const Fact> facts() const { return facts_; }
  std::size_t size() const { return facts_.size(); }
  const Fact& operator[](std::size_t i) const { return facts_[i]; }

  /// True iff the vocabulary is every subset of the state space (no abstraction).
  bool is_full() const;

  std::optional<int> index_of(Fact fact) const;

  bool operator==(const Vocabulary&) const = default;

 private:
  StateSpace space_;
  std::vector<Fact> facts_;
};

/// The vocabulary of all 2^n subsets of states, including the empty fact.
Vocabulary full_vocabulary(const StateSpace& space);

enum class EquivalenceMode { syntactic_extension, weakness_cardinality, semantic_truth_set };

std::string_view to_string(EquivalenceMode m);

/// All valid statements over a vocabulary, ordered by (description length, fact mask).
class Language {
 public:
  const Vocabulary& vocabulary() const { return impl_->vocabulary; }
  std::size_t size() const { return impl_->statements.size(); }
  std::span<const Statement> statements() const { return impl_->statements; }
  const Statement& operator[](StatementId id) const { return impl_->statements[id]; }

  std::optional<StatementId> find(FactMask facts) const;
  /// Like find, but a missing statement is a UsageError.
  StatementId id_of(FactMask facts) const;
  bool contains(const Statement& s) const;

  /// Statements whose fact set includes fact f.
  const IdSet& statements_with_fact(int f) const { return impl_->with_fact[static_cast<std::size_t>(f)]; }

  /// Completions of a statement: all y with x ⊆ y. Memoized, thread-safe.
  const IdSet& extension(StatementId id) const;
  std::size_t weakness(StatementId id) const { return extension(id).count(); }

  IdSet empty_set() const { return IdSet(size()); }

 private:
  friend Language language_of(const Vocabulary&, std::size_t);

  struct Impl {
    explicit Impl(Vocabulary v) : vocabulary(std::move(v)) {}
    Vocabulary vocabulary;
    std::vector<Statement> statements;
    std::vector<IdSet> with_fact;
    // write-once extension cache
    std::unique_ptr<std::once_flag[]> filled;
    mutable std::vector<IdSet> extensions;
  };

  explicit Language(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

/// Enumerates L_v. Throws ConfigError when |L| would exceed max_statements.
Language language_of(const Vocabulary& v, std::size_t max_statements = kDefaultMaxStatements);

/// Smallest statement equivalent to s under the mode; ties resolved by language order.
StatementId minimal_equivalent_form(StatementId s, const Language& L, EquivalenceMode mode);

}  // namespace razor
