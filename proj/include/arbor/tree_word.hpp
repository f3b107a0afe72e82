#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace arbor {

// A node of the rooted binary tree, named by a word over {a, b}.
//
// Stored as (length, value) where value reads the word as a binary number,
// first symbol most significant, a = 0 and b = 1. Heap index follows:
// idx(w) = 2^len - 1 + value, so idx(wa) = 2 idx(w) + 1, idx(wb) = 2 idx(w) + 2.
class TreeWord {
 public:
  static constexpr unsigned kMaxLength = 62;

  constexpr TreeWord() = default;

  static TreeWord parse(std::string_view text);
  static TreeWord from_index(std::uint64_t index);
  static TreeWord from_bits(unsigned length, std::uint64_t value);

  constexpr unsigned length() const noexcept { return length_; }
  constexpr std::uint64_t value() const noexcept { return value_; }
  constexpr bool empty() const noexcept { return length_ == 0; }

  constexpr std::uint64_t index() const noexcept {
    return ((std::uint64_t{1} << length_) - 1) + value_;
  }

  // Symbol at position k (0-based); 0 = a, 1 = b.
  unsigned symbol(unsigned k) const;

  TreeWord child(unsigned symbol) const;
  TreeWord a() const { return child(0); }
  TreeWord b() const { return child(1); }
  TreeWord prefix(unsigned k) const;
  TreeWord concat(const TreeWord& tail) const;

  std::string str() const;

  friend constexpr bool operator==(const TreeWord&, const TreeWord&) = default;
  friend constexpr auto operator<=>(const TreeWord& x, const TreeWord& y) {
    return x.index() <=> y.index();
  }

 private:
  constexpr TreeWord(unsigned length, std::uint64_t value)
      : length_(length), value_(value) {}

  unsigned length_ = 0;
  std::uint64_t value_ = 0;
};

// Index helpers on heap positions.
constexpr std::uint64_t first_index_at_level(unsigned level) {
  return (std::uint64_t{1} << level) - 1;
}

constexpr unsigned level_of_index(std::uint64_t index) {
  unsigned level = 0;
  while (index >= (std::uint64_t{1} << (level + 1)) - 1) ++level;
  return level;
}

// First heap index among the descendants of `index` exactly `up` levels above.
constexpr std::uint64_t first_descendant(std::uint64_t index, unsigned up) {
  return ((index + 1) << up) - 1;
}

}  // namespace arbor
