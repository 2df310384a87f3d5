#include "razor/extension.hpp"

#include <string>

#include "razor/errors.hpp"

namespace razor {

const ExtensionSet& extension(const Statement& s, const Language& L) {
  if (!L.contains(s)) throw UsageError("statement is not a member of the language");
  return L.extension(L.id_of(s.facts));
}

ExtensionSet extension_of_set(const IdSet& X, const Language& L) {
  if (X.universe() != L.size()) throw UsageError("statement set belongs to a different language");
  ExtensionSet acc = L.empty_set();
  X.for_each([&](StatementId id) { acc |= L.extension(id); });
  return acc;
}

ExtensionSet extension_of_set(std::span<const StatementId> X, const Language& L) {
  ExtensionSet acc = L.empty_set();
  for (StatementId id : X) acc |= L.extension(id);
  return acc;
}

std::size_t weakness(const Statement& s, const Language& L) { return extension(s, L).count(); }

bool equivalent(StatementId x, StatementId y, const Language& L, EquivalenceMode mode) {
  if (x >= L.size() || y >= L.size()) throw UsageError("statement id outside the language");
  switch (mode) {
    case EquivalenceMode::syntactic_extension: return L.extension(x) == L.extension(y);
    case EquivalenceMode::weakness_cardinality: return L.weakness(x) == L.weakness(y);
    case EquivalenceMode::semantic_truth_set: return L[x].truth == L[y].truth;
  }
  return false;
}

}  // namespace razor
