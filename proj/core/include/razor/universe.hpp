#pragma once

// Finite environment model: states, facts (subsets of states) and statements
// (fact sets with a non-empty common intersection).

#include <span>
#include <string_view>

#include "razor/bits.hpp"
#include "razor/outcome.hpp"

namespace razor {

inline constexpr int kMaxStates = 64;
inline constexpr int kMaxVocabularyFacts = 64;

/// States are indexed 0..n-1.
class StateSpace {
 public:
  explicit StateSpace(int n);

  int size() const { return n_; }
  StateSet all() const { return StateSet::all(n_); }
  bool valid_state(int state) const { return state >= 0 && state < n_; }

  bool operator==(const StateSpace&) const = default;

 private:
  int n_;
};

/// A fact is exactly the set of states in which it holds.
using Fact = StateSet;

/// A valid statement: a non-empty fact set whose facts share at least one state.
struct Statement {
  FactMask facts;
  StateSet truth;  // intersection of member facts, never empty

  int description_length() const { return facts.count(); }
  bool operator==(const Statement&) const = default;
};

enum class StatementError { empty_statement, empty_intersection };

std::string_view to_string(StatementError e);

/// Intersection of the selected facts. Requires at least one selected fact.
StateSet intersection(FactMask selected, std::span<const Fact> facts);

inline StateSet intersection(const Statement& s) { return s.truth; }

/// True iff the state realises the statement. Throws UsageError for a state outside the space.
bool is_true(const Statement& s, int state, const StateSpace& space);

Outcome<Statement, StatementError> validate_statement(FactMask selected, std::span<const Fact> facts);

}  // namespace razor
