#include "razor/tasks.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <unordered_map>

#include "razor/errors.hpp"
#include "razor/extension.hpp"

namespace razor {

std::string_view to_string(SubsetMode m) { return m == SubsetMode::strict ? "strict" : "lax"; }
std::string_view to_string(Population p) { return p == Population::all ? "all" : "solvable"; }
std::string_view to_string(Distribution d) { return d == Distribution::uniform ? "uniform" : "input-uniform"; }

std::string_view to_string(TaskError e) {
  switch (e) {
    case TaskError::foreign_statement: return "foreign_statement";
    case TaskError::empty_inputs: return "empty_inputs";
    case TaskError::inputs_cover_language: return "inputs_cover_language";
    case TaskError::empty_outputs: return "empty_outputs";
    case TaskError::outputs_outside_extension: return "outputs_outside_extension";
    case TaskError::outputs_cover_extension: return "outputs_cover_extension";
  }
  return "unknown";
}

Outcome<Task, TaskError> validate_task(IdSet inputs, IdSet outputs, const Language& L, SubsetMode mode) {
  if (inputs.universe() != L.size() || outputs.universe() != L.size()) return TaskError::foreign_statement;
  if (inputs.empty()) return TaskError::empty_inputs;
  if (inputs.count() == L.size()) return TaskError::inputs_cover_language;
  if (outputs.empty()) return TaskError::empty_outputs;
  const ExtensionSet domain = extension_of_set(inputs, L);
  if (!outputs.subset_of(domain)) return TaskError::outputs_outside_extension;
  if (mode == SubsetMode::strict && outputs == domain) return TaskError::outputs_cover_extension;
  return Task{std::move(inputs), std::move(outputs), mode};
}

std::uint64_t admissible_output_count(std::size_t extension_size, SubsetMode mode) {
  if (extension_size >= 63) throw BudgetExceeded("extension too large to count its output subsets");
  const std::uint64_t subsets = std::uint64_t{1} << extension_size;
  const std::uint64_t excluded = mode == SubsetMode::strict ? 2 : 1;
  return subsets > excluded ? subsets - excluded : 0;
}

namespace {

IdSet ids_from_mask(std::uint64_t mask, std::size_t universe) {
  IdSet s(universe);
  for (std::uint64_t b = mask; b != 0; b &= b - 1) s.insert(static_cast<StatementId>(std::countr_zero(b)));
  return s;
}

IdSet outputs_from_code(std::uint64_t code, const std::vector<StatementId>& domain, std::size_t universe) {
  IdSet s(universe);
  for (std::uint64_t b = code; b != 0; b &= b - 1) s.insert(domain[static_cast<std::size_t>(std::countr_zero(b))]);
  return s;
}

// Output set as a code over the group's domain; nullopt if not inside the domain.
std::optional<std::uint64_t> code_of(const IdSet& outputs, const TaskUniverse::InputGroup& g) {
  if (!outputs.subset_of(g.outputs_domain)) return std::nullopt;
  std::uint64_t code = 0;
  for (std::size_t j = 0; j < g.domain.size(); ++j)
    if (outputs.contains(g.domain[j])) code |= std::uint64_t{1} << j;
  return code;
}

std::uint64_t input_weight_sum(const Language& L, std::uint64_t cap) {
  const std::size_t n = L.size();
  std::uint64_t sum = 0;
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    const std::size_t e = extension_of_set(ids_from_mask(mask, n), L).count();
    sum += std::uint64_t{1} << e;
    if (sum > cap) return sum;
  }
  return sum;
}

}  // namespace

bool exhaustive_feasible(const Language& L, TaskBudget budget) {
  if (L.size() > budget.max_language) return false;
  return input_weight_sum(L, budget.max_weight) <= budget.max_weight;
}

TaskUniverse enumerate_tasks(const Language& L, SubsetMode mode, TaskBudget budget) {
  if (L.size() > budget.max_language)
    throw BudgetExceeded("language has " + std::to_string(L.size()) + " statements; exhaustive task enumeration "
                         "allows at most " + std::to_string(budget.max_language) + " (use sampling)");
  const std::size_t n = L.size();
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  TaskUniverse u(L, mode);
  u.group_by_mask_.assign(static_cast<std::size_t>(full) + 1, -1);
  std::uint64_t weight = 0;
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    TaskUniverse::InputGroup g;
    g.inputs = ids_from_mask(mask, n);
    g.outputs_domain = extension_of_set(g.inputs, L);
    weight += std::uint64_t{1} << g.outputs_domain.count();
    if (weight > budget.max_weight)
      throw BudgetExceeded("task universe exceeds the enumeration budget of " + std::to_string(budget.max_weight) +
                           " weighted inputs (use sampling)");
    g.count = admissible_output_count(g.outputs_domain.count(), mode);
    if (g.count == 0) continue;
    g.domain = g.outputs_domain.members();
    g.first = u.total_;
    u.total_ += g.count;
    u.group_by_mask_[static_cast<std::size_t>(mask)] = static_cast<std::int32_t>(u.groups_.size());
    u.groups_.push_back(std::move(g));
  }
  return u;
}

Task TaskUniverse::task(std::uint64_t index) const {
  if (index >= total_) throw UsageError("task index " + std::to_string(index) + " outside the universe");
  auto it = std::upper_bound(groups_.begin(), groups_.end(), index,
                             [](std::uint64_t i, const InputGroup& g) { return i < g.first; });
  const InputGroup& g = *(it - 1);
  const std::uint64_t code = index - g.first + 1;
  return Task{g.inputs, outputs_from_code(code, g.domain, language_.size()), mode_};
}

const TaskUniverse::InputGroup* TaskUniverse::group_for(std::uint64_t input_mask) const {
  if (input_mask >= group_by_mask_.size()) return nullptr;
  const std::int32_t gi = group_by_mask_[static_cast<std::size_t>(input_mask)];
  return gi < 0 ? nullptr : &groups_[static_cast<std::size_t>(gi)];
}

std::optional<std::uint64_t> TaskUniverse::index_of(const Task& t) const {
  if (t.mode != mode_ || t.inputs.universe() != language_.size()) return std::nullopt;
  const InputGroup* g = group_for(t.inputs.low_word());
  if (g == nullptr) return std::nullopt;
  auto code = code_of(t.outputs, *g);
  if (!code || *code == 0 || *code > g->count) return std::nullopt;
  return g->first + *code - 1;
}

TaskSampler::TaskSampler(const Language& L, SubsetMode mode, TaskBudget budget) : language_(L), mode_(mode) {
  if (exhaustive_feasible(L, budget)) universe_ = enumerate_tasks(L, mode, budget);
}

SampledTask TaskSampler::sample(Rng& rng) const {
  if (universe_) {
    if (universe_->size() == 0) throw ConfigError("the language admits no tasks in " + std::string(to_string(mode_)) + " mode");
    // A uniform index picks I with weight equal to its admissible-O count, then O uniformly.
    return {universe_->task(uniform_below(rng, universe_->size())), Distribution::uniform};
  }
  const std::size_t n = language_.size();
  constexpr int kAttempts = 1 << 16;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    IdSet inputs(n);
    for (std::size_t i = 0; i < n; ++i)
      if (rng() & 1U) inputs.insert(static_cast<StatementId>(i));
    if (inputs.empty() || inputs.count() == n) continue;
    const ExtensionSet domain = extension_of_set(inputs, language_);
    if (domain.count() < (mode_ == SubsetMode::strict ? 2U : 1U)) continue;
    const auto members = domain.members();
    for (int inner = 0; inner < kAttempts; ++inner) {
      IdSet outputs(n);
      for (StatementId id : members)
        if (rng() & 1U) outputs.insert(id);
      if (outputs.empty() || (mode_ == SubsetMode::strict && outputs == domain)) continue;
      return {Task{std::move(inputs), std::move(outputs), mode_}, Distribution::input_uniform};
    }
  }
  throw ConfigError("no valid task found by input-uniform sampling");
}

SampledTask sample_task(const Language& L, SubsetMode mode, Rng& rng) { return TaskSampler(L, mode).sample(rng); }

PolicySet correct_policies(const Task& task, const Language& L) {
  if (task.inputs.universe() != L.size()) throw UsageError("task belongs to a different language");
  const ExtensionSet domain = extension_of_set(task.inputs, L);
  PolicySet out(L.size());
  for (StatementId pi = 0; pi < L.size(); ++pi)
    if ((domain & L.extension(pi)) == task.outputs) out.insert(pi);
  return out;
}

bool is_child(const Task& child, const Task& parent) {
  if (child.inputs.universe() != parent.inputs.universe())
    throw UsageError("is_child compares tasks from different languages");
  if (child.mode != parent.mode) throw UsageError("is_child compares tasks with different subset modes");
  return child.inputs.subset_of(parent.inputs) && child.inputs != parent.inputs &&
         child.outputs.subset_of(parent.outputs);
}

std::size_t task_level(const Task& task, const TaskUniverse& universe) {
  auto start = universe.index_of(task);
  if (!start) throw UsageError("task is not a member of the universe");
  const std::size_t n = universe.language().size();

  // Any chain step that adds several inputs can be split into single-input
  // steps holding O fixed, so longest chains only use single-input edges.
  std::unordered_map<std::uint64_t, std::size_t> memo;
  auto level = [&](auto&& self, std::uint64_t index) -> std::size_t {
    if (auto it = memo.find(index); it != memo.end()) return it->second;
    const Task t = universe.task(index);
    const std::uint64_t mask = t.inputs.low_word();
    std::size_t best = 0;
    for (std::size_t x = 0; x < n; ++x) {
      if ((mask >> x) & 1U) continue;
      const auto* g = universe.group_for(mask | (std::uint64_t{1} << x));
      if (g == nullptr) continue;
      const std::uint64_t base = *code_of(t.outputs, *g);
      const std::uint64_t all = (std::uint64_t{1} << g->domain.size()) - 1;
      // supersets of base within the domain
      for (std::uint64_t code = base;; code = (code + 1) | base) {
        if (code != 0 && code <= g->count) best = std::max(best, 1 + self(self, g->first + code - 1));
        if (code == all) break;
      }
    }
    memo.emplace(index, best);
    return best;
  };
  return level(level, *start);
}

Outcome<Task, ChildError> sample_child(const Task& parent, std::size_t m, const Language& L, Rng& rng,
                                       ChildOutputs outputs, int retries) {
  std::vector<StatementId> pool = parent.inputs.members();
  if (m < 1 || m >= pool.size())
    throw UsageError("child size must satisfy 1 <= m < |I_parent| (m=" + std::to_string(m) +
                     ", |I_parent|=" + std::to_string(pool.size()) + ")");
  for (int attempt = 0; attempt < retries; ++attempt) {
    for (std::size_t i = 0; i < m; ++i) std::swap(pool[i], pool[i + uniform_below(rng, pool.size() - i)]);
    IdSet child_inputs(L.size());
    for (std::size_t i = 0; i < m; ++i) child_inputs.insert(pool[i]);
    IdSet visible = parent.outputs & extension_of_set(child_inputs, L);
    if (outputs == ChildOutputs::subsampled && !visible.empty()) {
      const auto members = visible.members();
      IdSet pick(L.size());
      while (pick.empty())
        for (StatementId id : members)
          if (rng() & 1U) pick.insert(id);
      visible = std::move(pick);
    }
    auto child = validate_task(std::move(child_inputs), std::move(visible), L, parent.mode);
    if (child) return std::move(child).value();
  }
  return ChildError::no_valid_child;
}

Inference infer(StatementId policy, StatementId input, const Task& task, const Language& L, Selector selector,
                Rng* rng) {
  if (!task.inputs.contains(input)) throw UsageError("inference input is not an input of the task");
  if (policy >= L.size()) throw UsageError("policy is not a statement of the language");
  const IdSet candidates = L.extension(input) & L.extension(policy);
  if (candidates.empty()) return {};
  StatementId chosen = 0;
  if (selector == Selector::first) {
    chosen = candidates.members().front();
  } else {
    if (rng == nullptr) throw UsageError("the uniform-random selector needs a random source");
    const auto members = candidates.members();
    chosen = members[uniform_below(*rng, members.size())];
  }
  return {chosen, task.outputs.contains(chosen)};
}

}  // namespace razor
