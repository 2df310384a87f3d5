#pragma once

// Proxies (binary relations on statements), generalisation probability and
// the exact sample-efficiency comparison between proxies.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "razor/abstraction.hpp"
#include "razor/rational.hpp"
#include "razor/tasks.hpp"

namespace razor {

/// Per-statement probability that the statement is a correct policy for a random task.
struct GeneralisationTable {
  std::vector<Ratio> probability;  // indexed by StatementId
  bool exact = true;               // false: estimate from `trials` sampled tasks
  std::uint64_t trials = 0;
  Population population = Population::all;
  Distribution distribution = Distribution::uniform;
  SubsetMode mode = SubsetMode::strict;
};

/// Exact table over the enumerated universe. Denominator is |Γ| (all) or the number of solvable tasks.
GeneralisationTable generalisation_table(const TaskUniverse& universe, Population population);

/// Monte Carlo table; carries the sampler's distribution label and the trial count.
GeneralisationTable estimate_generalisation(const Language& L, SubsetMode mode, Population population,
                                            std::uint64_t trials, Rng& rng);

inline Ratio generalisation_probability(StatementId l, const GeneralisationTable& g) { return g.probability.at(l); }

bool weakness_less(StatementId l1, StatementId l2, const Language& L);
/// l1 <_d l2 iff |l1| > |l2|.
bool simplicity_less(const Statement& l1, const Statement& l2);
bool g_less(StatementId l1, StatementId l2, const GeneralisationTable& g);

struct Proxy {
  std::string name;
  std::function<bool(StatementId, StatementId)> less;
};

Proxy weakness_proxy(const Language& L);
Proxy simplicity_proxy(const Language& L);
/// Reverse of <_w.
Proxy anti_weakness_proxy(const Language& L);
Proxy generalisation_proxy(const GeneralisationTable& g);
/// Random strict total order over L, fixed by the seed.
Proxy random_proxy(const Language& L, std::uint64_t seed, std::string name);

/// Proxy materialised as a 0/1 matrix over L × L.
class Relation {
 public:
  Relation(const Proxy& proxy, std::size_t n);

  std::size_t size() const { return n_; }
  bool operator()(StatementId a, StatementId b) const { return bits_[a * n_ + b] != 0; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }

 private:
  std::size_t n_;
  std::vector<std::uint8_t> bits_;
};

/// Σ over ordered pairs of |g - q|.
std::uint64_t disagreement(const Relation& g, const Relation& q);

/// Σ over ordered pairs of |g - a| - |g - b|; negative means `a` is more sample efficient.
/// Requires an exact table.
std::int64_t sample_efficiency_delta(const Proxy& a, const Proxy& b, const Language& L, const GeneralisationTable& g);

/// <_w, <_d, anti-weakness and five seeded random orders.
std::vector<Proxy> default_battery(const Language& L, std::uint64_t seed);

struct BatteryRow {
  std::string proxy;
  std::uint64_t score = 0;
  std::int64_t delta_w = 0;  // score - score(<_w)
  std::size_t rank = 0;      // 1-based competition rank
};

struct BatteryReport {
  std::vector<BatteryRow> rows;  // ascending score, ties by battery order
  bool weakness_minimal = false;
  SubsetMode mode = SubsetMode::strict;
  Population population = Population::all;
};

/// The battery must contain a proxy named "weakness". Requires an exact table.
BatteryReport proxy_battery_table(const Language& L, const GeneralisationTable& g, const std::vector<Proxy>& battery);

}  // namespace razor
