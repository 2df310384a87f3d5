#pragma once

#include <utility>
#include <variant>

#include "razor/errors.hpp"

namespace razor {

/// Either a validated value or the enumerated reason it was rejected.
template <class T, class Reason>
class Outcome {
 public:
  Outcome(T value) : state_(std::move(value)) {}            // NOLINT(google-explicit-constructor)
  Outcome(Reason reason) : state_(reason) {}                // NOLINT(google-explicit-constructor)

  bool ok() const { return std::holds_alternative<T>(state_); }
  explicit operator bool() const { return ok(); }

  const T& value() const& {
    if (!ok()) throw UsageError("value() on a rejected outcome");
    return std::get<T>(state_);
  }
  T&& value() && {
    if (!ok()) throw UsageError("value() on a rejected outcome");
    return std::get<T>(std::move(state_));
  }
  Reason reason() const {
    if (ok()) throw UsageError("reason() on an accepted outcome");
    return std::get<Reason>(state_);
  }

 private:
  std::variant<T, Reason> state_;
};

}  // namespace razor
