#pragma once

// Extensions (sets of completions), weakness, and statement equivalence.

#include <cstddef>
#include <span>

#include "razor/abstraction.hpp"

namespace razor {

/// Members are statement ids of the language; count() is the cardinality.
using ExtensionSet = IdSet;

/// E_x. Throws UsageError if s is not in L.
const ExtensionSet& extension(const Statement& s, const Language& L);
inline const ExtensionSet& extension(StatementId s, const Language& L) { return L.extension(s); }

/// E_X, the union of the members' extensions.
ExtensionSet extension_of_set(std::span<const StatementId> X, const Language& L);
ExtensionSet extension_of_set(const IdSet& X, const Language& L);

std::size_t weakness(const Statement& s, const Language& L);
inline std::size_t weakness(StatementId s, const Language& L) { return L.weakness(s); }

inline int description_length(const Statement& s) { return s.description_length(); }

bool equivalent(StatementId x, StatementId y, const Language& L, EquivalenceMode mode);

}  // namespace razor
