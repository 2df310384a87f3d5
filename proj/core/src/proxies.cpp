#include "razor/proxies.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "razor/errors.hpp"
#include "razor/extension.hpp"

namespace razor {

namespace {

// Tasks (I, E_I ∩ E_π) that are valid for the mode. Policy π solves exactly
// this one task per input group, if it is valid.
bool solves_some_output(const IdSet& domain, const IdSet& outputs, SubsetMode mode) {
  return !outputs.empty() && (mode == SubsetMode::lax || outputs != domain);
}

}  // namespace

GeneralisationTable generalisation_table(const TaskUniverse& universe, Population population) {
  const Language& L = universe.language();
  const std::size_t n = L.size();
  std::vector<std::uint64_t> hits(n, 0);
  std::uint64_t solvable = 0;
  for (const auto& g : universe.groups()) {
    std::vector<std::uint64_t> distinct;
    for (StatementId pi = 0; pi < n; ++pi) {
      const IdSet outputs = g.outputs_domain & L.extension(pi);
      if (!solves_some_output(g.outputs_domain, outputs, universe.mode())) continue;
      ++hits[pi];
      distinct.push_back(outputs.low_word());
    }
    std::sort(distinct.begin(), distinct.end());
    solvable += static_cast<std::uint64_t>(std::unique(distinct.begin(), distinct.end()) - distinct.begin());
  }
  const std::uint64_t den = population == Population::all ? universe.size() : solvable;
  if (den == 0) throw ConfigError("the task population is empty; generalisation probability is undefined");
  GeneralisationTable t;
  t.exact = true;
  t.population = population;
  t.distribution = Distribution::uniform;
  t.mode = universe.mode();
  for (std::uint64_t h : hits) t.probability.push_back({h, den});
  return t;
}

GeneralisationTable estimate_generalisation(const Language& L, SubsetMode mode, Population population,
                                            std::uint64_t trials, Rng& rng) {
  if (trials == 0) throw UsageError("estimation needs at least one trial");
  TaskSampler sampler(L, mode);
  std::vector<std::uint64_t> hits(L.size(), 0);
  std::uint64_t accepted = 0;
  std::uint64_t attempts = 0;
  while (accepted < trials) {
    if (++attempts > trials * 1000) throw ConfigError("no solvable task found within the sampling budget");
    const Task t = sampler.sample(rng).task;
    const PolicySet pi = correct_policies(t, L);
    if (population == Population::solvable && pi.empty()) continue;
    ++accepted;
    pi.for_each([&](StatementId id) { ++hits[id]; });
  }
  GeneralisationTable out;
  out.exact = false;
  out.trials = trials;
  out.population = population;
  out.distribution = sampler.distribution();
  out.mode = mode;
  for (std::uint64_t h : hits) out.probability.push_back({h, trials});
  return out;
}

bool weakness_less(StatementId l1, StatementId l2, const Language& L) { return L.weakness(l1) < L.weakness(l2); }

bool simplicity_less(const Statement& l1, const Statement& l2) {
  return l1.description_length() > l2.description_length();
}

bool g_less(StatementId l1, StatementId l2, const GeneralisationTable& g) {
  return g.probability.at(l1) < g.probability.at(l2);
}

Proxy weakness_proxy(const Language& L) {
  return {"weakness", [L](StatementId a, StatementId b) { return weakness_less(a, b, L); }};
}

Proxy simplicity_proxy(const Language& L) {
  return {"simplicity", [L](StatementId a, StatementId b) { return simplicity_less(L[a], L[b]); }};
}

Proxy anti_weakness_proxy(const Language& L) {
  return {"anti-weakness", [L](StatementId a, StatementId b) { return L.weakness(a) > L.weakness(b); }};
}

Proxy generalisation_proxy(const GeneralisationTable& g) {
  return {"generalisation", [p = g.probability](StatementId a, StatementId b) { return p[a] < p[b]; }};
}

Proxy random_proxy(const Language& L, std::uint64_t seed, std::string name) {
  std::vector<std::uint32_t> rank(L.size());
  std::iota(rank.begin(), rank.end(), 0U);
  Rng rng(derive_seed(seed, 0x70726f7879ULL));
  for (std::size_t i = rank.size(); i > 1; --i) std::swap(rank[i - 1], rank[uniform_below(rng, i)]);
  return {std::move(name), [rank = std::move(rank)](StatementId a, StatementId b) { return rank[a] < rank[b]; }};
}

Relation::Relation(const Proxy& proxy, std::size_t n) : n_(n), bits_(n * n, 0) {
  for (StatementId a = 0; a < n; ++a)
    for (StatementId b = 0; b < n; ++b) bits_[a * n + b] = proxy.less(a, b) ? 1 : 0;
}

std::uint64_t disagreement(const Relation& g, const Relation& q) {
  if (g.size() != q.size()) throw UsageError("relations over different languages");
  std::uint64_t sum = 0;
  const auto& gb = g.bits();
  const auto& qb = q.bits();
  for (std::size_t i = 0; i < gb.size(); ++i) sum += static_cast<std::uint64_t>(gb[i] ^ qb[i]);
  return sum;
}

std::int64_t sample_efficiency_delta(const Proxy& a, const Proxy& b, const Language& L, const GeneralisationTable& g) {
  if (!g.exact) throw Unsupported("sample efficiency is an exact sum; sampled tables cannot feed it");
  const Relation rg(generalisation_proxy(g), L.size());
  const Relation ra(a, L.size());
  const Relation rb(b, L.size());
  std::int64_t sum = 0;
  for (StatementId x = 0; x < L.size(); ++x)
    for (StatementId y = 0; y < L.size(); ++y)
      sum += std::int64_t{rg(x, y) != ra(x, y)} - std::int64_t{rg(x, y) != rb(x, y)};
  return sum;
}

std::vector<Proxy> default_battery(const Language& L, std::uint64_t seed) {
  std::vector<Proxy> out{weakness_proxy(L), simplicity_proxy(L), anti_weakness_proxy(L)};
  for (std::uint64_t i = 0; i < 5; ++i)
    out.push_back(random_proxy(L, derive_seed(seed, i), "random-" + std::to_string(i)));
  return out;
}

BatteryReport proxy_battery_table(const Language& L, const GeneralisationTable& g, const std::vector<Proxy>& battery) {
  if (!g.exact) throw Unsupported("the proxy battery needs an exact generalisation table");
  const Relation rg(generalisation_proxy(g), L.size());
  BatteryReport report;
  report.mode = g.mode;
  report.population = g.population;
  std::optional<std::uint64_t> weak_score;
  for (const Proxy& p : battery) {
    BatteryRow row{p.name, disagreement(rg, Relation(p, L.size())), 0, 0};
    if (p.name == "weakness") weak_score = row.score;
    report.rows.push_back(std::move(row));
  }
  if (!weak_score) throw UsageError("the battery has no proxy named \"weakness\"");
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const BatteryRow& a, const BatteryRow& b) { return a.score < b.score; });
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    auto& row = report.rows[i];
    row.delta_w = static_cast<std::int64_t>(row.score) - static_cast<std::int64_t>(*weak_score);
    row.rank = (i > 0 && report.rows[i - 1].score == row.score) ? report.rows[i - 1].rank : i + 1;
  }
  report.weakness_minimal = *weak_score <= report.rows.front().score;
  return report;
}

}  // namespace razor
