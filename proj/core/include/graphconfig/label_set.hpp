#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace graphconfig {

/// Fixed-capacity set of constraint-label indices (0..kCapacity-1).
class LabelSet {
 public:
  static constexpr std::size_t kCapacity = 128;

  LabelSet() = default;

  static LabelSet of(std::initializer_list<std::size_t> labels) {
    LabelSet s;
    for (auto l : labels) s.insert(l);
    return s;
  }

  void insert(std::size_t label) { words_[label >> 6] |= std::uint64_t{1} << (label & 63); }
  void erase(std::size_t label) { words_[label >> 6] &= ~(std::uint64_t{1} << (label & 63)); }
  bool contains(std::size_t label) const { return (words_[label >> 6] >> (label & 63)) & 1U; }

  bool empty() const { return (words_[0] | words_[1]) == 0; }
  std::size_t size() const;

  bool is_subset_of(const LabelSet& other) const {
    return (words_[0] & ~other.words_[0]) == 0 && (words_[1] & ~other.words_[1]) == 0;
  }

  LabelSet operator&(const LabelSet& o) const { return LabelSet(words_[0] & o.words_[0], words_[1] & o.words_[1]); }
  LabelSet operator|(const LabelSet& o) const { return LabelSet(words_[0] | o.words_[0], words_[1] | o.words_[1]); }
  LabelSet operator-(const LabelSet& o) const { return LabelSet(words_[0] & ~o.words_[0], words_[1] & ~o.words_[1]); }

  /// Members in increasing order.
  std::vector<std::size_t> indices() const;

  friend bool operator==(const LabelSet&, const LabelSet&) = default;
  /// Lexicographic on the sorted member lists.
  friend std::strong_ordering operator<=>(const LabelSet& a, const LabelSet& b);

  std::size_t hash() const { return static_cast<std::size_t>(words_[0] * 0x9E3779B97F4A7C15ULL ^ words_[1]); }

 private:
  LabelSet(std::uint64_t lo, std::uint64_t hi) : words_{lo, hi} {}
  std::array<std::uint64_t, 2> words_{};
};

}  // namespace graphconfig
