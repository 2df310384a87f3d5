#pragma once

// v-tasks over a language: validity, the task universe (exhaustive or
// sampled), correct-policy sets, the child hierarchy and inference.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "razor/abstraction.hpp"
#include "razor/outcome.hpp"
#include "razor/random.hpp"

namespace razor {

/// strict: O must be a proper subset of E_I. lax: O may equal E_I.
/// Inputs are a proper subset of L in both modes.
enum class SubsetMode { strict, lax };
enum class Population { all, solvable };
enum class Distribution { uniform, input_uniform };

std::string_view to_string(SubsetMode m);
std::string_view to_string(Population p);
std::string_view to_string(Distribution d);

struct Task {
  IdSet inputs;
  IdSet outputs;
  SubsetMode mode = SubsetMode::strict;

  bool operator==(const Task&) const = default;
};

enum class TaskError {
  foreign_statement,
  empty_inputs,
  inputs_cover_language,
  empty_outputs,
  outputs_outside_extension,
  outputs_cover_extension,
};

std::string_view to_string(TaskError e);

Outcome<Task, TaskError> validate_task(IdSet inputs, IdSet outputs, const Language& L, SubsetMode mode);

/// Admissible outputs for an input set: 2^|E_I| - 1 (lax) or 2^|E_I| - 2 (strict), clamped at 0.
std::uint64_t admissible_output_count(std::size_t extension_size, SubsetMode mode);

struct TaskBudget {
  std::size_t max_language = 12;
  std::uint64_t max_weight = std::uint64_t{1} << 24;  // bound on the sum of 2^|E_I|
};

/// Whether the exhaustive universe fits the budget.
bool exhaustive_feasible(const Language& L, TaskBudget budget = {});

/// The exhaustive task set Γ in deterministic order: input sets by ascending
/// id mask, then outputs by ascending code within E_I.
class TaskUniverse {
 public:
  struct InputGroup {
    IdSet inputs;
    IdSet outputs_domain;             // E_I
    std::vector<StatementId> domain;  // E_I members, ascending; output code bit j selects domain[j]
    std::uint64_t first = 0;          // index of the first task in this group
    std::uint64_t count = 0;
  };

  const Language& language() const { return language_; }
  SubsetMode mode() const { return mode_; }
  std::uint64_t size() const { return total_; }
  std::span<const InputGroup> groups() const { return groups_; }

  Task task(std::uint64_t index) const;
  std::optional<std::uint64_t> index_of(const Task& t) const;
  /// Group for an input set given as a mask over statement ids, if admissible.
  const InputGroup* group_for(std::uint64_t input_mask) const;

  template <class F>
  void for_each(F&& f) const {
    for (std::uint64_t i = 0; i < total_; ++i) f(i, task(i));
  }

 private:
  friend TaskUniverse enumerate_tasks(const Language&, SubsetMode, TaskBudget);

  TaskUniverse(Language L, SubsetMode mode) : language_(std::move(L)), mode_(mode) {}

  Language language_;
  SubsetMode mode_;
  std::vector<InputGroup> groups_;
  std::vector<std::int32_t> group_by_mask_;  // input mask -> group index or -1
  std::uint64_t total_ = 0;
};

/// Throws BudgetExceeded (pointing at sampling) when the universe is too large.
TaskUniverse enumerate_tasks(const Language& L, SubsetMode mode, TaskBudget budget = {});

struct SampledTask {
  Task task;
  Distribution distribution;
};

/// Draws tasks. Exactly uniform over Γ when the universe is enumerable,
/// otherwise input-uniform (I uniform among inputs with an admissible O, then O uniform).
class TaskSampler {
 public:
  TaskSampler(const Language& L, SubsetMode mode, TaskBudget budget = {});

  Distribution distribution() const { return universe_ ? Distribution::uniform : Distribution::input_uniform; }
  const std::optional<TaskUniverse>& universe() const { return universe_; }
  SampledTask sample(Rng& rng) const;

 private:
  Language language_;
  SubsetMode mode_;
  std::optional<TaskUniverse> universe_;
};

SampledTask sample_task(const Language& L, SubsetMode mode, Rng& rng);

/// Π_α = { π ∈ L : E_I ∩ E_π = O }. May be empty.
using PolicySet = IdSet;

PolicySet correct_policies(const Task& task, const Language& L);

/// α ⊏ ω: I_α ⊊ I_ω and O_α ⊆ O_ω.
bool is_child(const Task& child, const Task& parent);

/// Length of the longest ascending child chain starting at the task.
std::size_t task_level(const Task& task, const TaskUniverse& universe);

enum class ChildOutputs { all_visible, subsampled };
enum class ChildError { no_valid_child };

/// Child from m distinct parent inputs; O' = O_ω ∩ E_I' (or a random non-empty subset of it).
Outcome<Task, ChildError> sample_child(const Task& parent, std::size_t m, const Language& L, Rng& rng,
                                       ChildOutputs outputs = ChildOutputs::all_visible, int retries = 64);

enum class Selector { first, uniform_random };

struct Inference {
  std::optional<StatementId> output;  // empty: E_i ∩ E_π was empty
  bool correct = false;
};

Inference infer(StatementId policy, StatementId input, const Task& task, const Language& L, Selector selector,
                Rng* rng = nullptr);

}  // namespace razor
