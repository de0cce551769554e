#include "graphconfig/label_set.hpp"

#include <bit>

namespace graphconfig {

std::size_t LabelSet::size() const {
  return static_cast<std::size_t>(std::popcount(words_[0]) + std::popcount(words_[1]));
}

std::vector<std::size_t> LabelSet::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits != 0) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

std::strong_ordering operator<=>(const LabelSet& a, const LabelSet& b) {
  // Lexicographic order of sorted member lists: find the lowest differing
  // label k. The set holding k is smaller unless the other set has nothing
  // above k (then the other is a proper prefix).
  for (std::size_t w = 0; w < 2; ++w) {
    const std::uint64_t diff = a.words_[w] ^ b.words_[w];
    if (diff == 0) continue;
    const int bit = std::countr_zero(diff);
    const bool a_has = (a.words_[w] >> bit) & 1U;
    const LabelSet& lacking = a_has ? b : a;
    const std::uint64_t above_mask = bit == 63 ? 0 : (~std::uint64_t{0} << (bit + 1));
    bool lacking_has_above = (lacking.words_[w] & above_mask) != 0;
    if (w == 0) lacking_has_above = lacking_has_above || lacking.words_[1] != 0;
    const bool a_smaller = a_has ? lacking_has_above : !lacking_has_above;
    return a_smaller ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

}  // namespace graphconfig
