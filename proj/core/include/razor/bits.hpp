#pragma once

// Fixed-width masks for states and vocabulary facts, plus a dynamic bitset
// over statement ids used for extensions, task sides and policy sets.

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace razor {

/// A set of states, one bit per state index (at most 64 states).
class StateSet {
 public:
  constexpr StateSet() = default;
  constexpr explicit StateSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr StateSet all(int n) {
    return StateSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static constexpr StateSet single(int state) { return StateSet(std::uint64_t{1} << state); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int count() const { return std::popcount(bits_); }
  constexpr bool contains(int state) const { return (bits_ >> state) & 1U; }
  constexpr bool subset_of(StateSet other) const { return (bits_ & ~other.bits_) == 0; }

  constexpr StateSet operator&(StateSet o) const { return StateSet(bits_ & o.bits_); }
  constexpr StateSet operator|(StateSet o) const { return StateSet(bits_ | o.bits_); }
  constexpr StateSet& operator&=(StateSet o) { bits_ &= o.bits_; return *this; }
  constexpr StateSet& operator|=(StateSet o) { bits_ |= o.bits_; return *this; }

  constexpr auto operator<=>(const StateSet&) const = default;

  /// State indices in ascending order.
  std::vector<int> members() const {
    std::vector<int> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

 private:
  std::uint64_t bits_ = 0;
};

/// A set of fact indices into a vocabulary (at most 64 facts).
class FactMask {
 public:
  constexpr FactMask() = default;
  constexpr explicit FactMask(std::uint64_t bits) : bits_(bits) {}

  static constexpr FactMask single(int fact) { return FactMask(std::uint64_t{1} << fact); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int count() const { return std::popcount(bits_); }
  constexpr bool contains(int fact) const { return (bits_ >> fact) & 1U; }
  constexpr bool subset_of(FactMask other) const { return (bits_ & ~other.bits_) == 0; }

  constexpr FactMask operator|(FactMask o) const { return FactMask(bits_ | o.bits_); }
  constexpr FactMask operator&(FactMask o) const { return FactMask(bits_ & o.bits_); }

  constexpr auto operator<=>(const FactMask&) const = default;

  std::vector<int> members() const {
    std::vector<int> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

 private:
  std::uint64_t bits_ = 0;
};

using StatementId = std::uint32_t;

/// Dynamic bitset over the statement ids of one language.
class IdSet {
 public:
  IdSet() = default;
  explicit IdSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

  static IdSet full(std::size_t universe) {
    IdSet s(universe);
    for (std::size_t i = 0; i < universe; ++i) s.insert(static_cast<StatementId>(i));
    return s;
  }

  std::size_t universe() const { return universe_; }

  void insert(StatementId id) { words_[id >> 6] |= std::uint64_t{1} << (id & 63); }
  void erase(StatementId id) { words_[id >> 6] &= ~(std::uint64_t{1} << (id & 63)); }
  bool contains(StatementId id) const {
    return id < universe_ && ((words_[id >> 6] >> (id & 63)) & 1U);
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  bool subset_of(const IdSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & ~o.words_[i]) != 0) return false;
    return true;
  }
  bool intersects(const IdSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & o.words_[i]) != 0) return true;
    return false;
  }

  IdSet& operator&=(const IdSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  IdSet& operator|=(const IdSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  friend IdSet operator&(IdSet a, const IdSet& b) { return a &= b; }
  friend IdSet operator|(IdSet a, const IdSet& b) { return a |= b; }

  bool operator==(const IdSet&) const = default;

  /// Low 64 ids packed into an integer; only meaningful when universe() <= 64.
  std::uint64_t low_word() const { return words_.empty() ? 0 : words_[0]; }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      for (std::uint64_t b = words_[i]; b != 0; b &= b - 1)
        f(static_cast<StatementId>(i * 64 + static_cast<std::size_t>(std::countr_zero(b))));
  }

  std::vector<StatementId> members() const {
    std::vector<StatementId> out;
    for_each([&](StatementId id) { out.push_back(id); });
    return out;
  }

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace razor
