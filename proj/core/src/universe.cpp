#include "razor/universe.hpp"

#include <string>

#include "razor/errors.hpp"

namespace razor {

StateSpace::StateSpace(int n) : n_(n) {
  if (n < 1 || n > kMaxStates)
    throw ConfigError("state count must be in [1, " + std::to_string(kMaxStates) + "], got " +
                      std::to_string(n));
}

std::string_view to_string(StatementError e) {
  switch (e) {
    case StatementError::empty_statement: return "empty_statement";
    case StatementError::empty_intersection: return "empty_intersection";
  }
  return "unknown";
}

StateSet intersection(FactMask selected, std::span<const Fact> facts) {
  if (selected.empty()) throw UsageError("intersection of an empty fact set is undefined");
  StateSet acc(~std::uint64_t{0});
  for (int f : selected.members()) {
    if (static_cast<std::size_t>(f) >= facts.size())
      throw UsageError("fact index " + std::to_string(f) + " outside the vocabulary");
    acc &= facts[static_cast<std::size_t>(f)];
  }
  return acc;
}

bool is_true(const Statement& s, int state, const StateSpace& space) {
  if (!space.valid_state(state))
    throw UsageError("state index " + std::to_string(state) + " outside [0, " +
                     std::to_string(space.size()) + ")");
  return s.truth.contains(state);
}

Outcome<Statement, StatementError> validate_statement(FactMask selected, std::span<const Fact> facts) {
  if (selected.empty()) return StatementError::empty_statement;
  StateSet truth = intersection(selected, facts);
  if (truth.empty()) return StatementError::empty_intersection;
  return Statement{selected, truth};
}

}  // namespace razor
