#ifndef MULLAB_LABEL_SET_HPP
#define MULLAB_LABEL_SET_HPP

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "error.hpp"

namespace mullab {

// A subset of a fixed universe of M labels, stored as a bitset.
// Binary operations require both operands to share the same universe.
class LabelSet {
 public:
  LabelSet() = default;

  explicit LabelSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  LabelSet(std::size_t universe, std::initializer_list<std::size_t> labels)
      : LabelSet(universe) {
    for (auto j : labels) set(j);
  }

  static LabelSet full(std::size_t universe) {
    LabelSet s(universe);
    for (std::size_t j = 0; j < universe; ++j) s.set(j);
    return s;
  }

  static LabelSet from_indices(std::size_t universe, const std::vector<std::size_t>& labels) {
    LabelSet s(universe);
    for (auto j : labels) s.set(j);
    return s;
  }

  std::size_t universe() const noexcept { return universe_; }

  bool test(std::size_t j) const {
    check_index(j);
    return (words_[j / 64] >> (j % 64)) & 1U;
  }

  void set(std::size_t j, bool value = true) {
    check_index(j);
    const std::uint64_t mask = std::uint64_t{1} << (j % 64);
    if (value)
      words_[j / 64] |= mask;
    else
      words_[j / 64] &= ~mask;
  }

  void reset(std::size_t j) { set(j, false); }

  std::size_t cardinality() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  bool empty() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }

  bool is_full() const noexcept { return cardinality() == universe_; }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < universe_; ++j)
      if (test(j)) out.push_back(j);
    return out;
  }

  LabelSet operator|(const LabelSet& o) const { return combine(o, std::bit_or<>{}); }
  LabelSet operator&(const LabelSet& o) const { return combine(o, std::bit_and<>{}); }
  LabelSet operator^(const LabelSet& o) const { return combine(o, std::bit_xor<>{}); }

  LabelSet complement() const {
    LabelSet out(universe_);
    for (std::size_t j = 0; j < universe_; ++j)
      if (!test(j)) out.set(j);
    return out;
  }

  bool is_subset_of(const LabelSet& o) const {
    require_same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & ~o.words_[i]) != 0) return false;
    return true;
  }

  void require_same_universe(const LabelSet& o) const {
    if (universe_ != o.universe_)
      throw LabelSpaceError("label universes differ: " + std::to_string(universe_) + " vs " +
                            std::to_string(o.universe_));
  }

  bool operator==(const LabelSet& o) const = default;

  // Bit-pattern order: compares as the unsigned integer sum of 2^j over members.
  std::strong_ordering operator<=>(const LabelSet& o) const {
    if (auto c = universe_ <=> o.universe_; c != 0) return c;
    for (std::size_t i = words_.size(); i-- > 0;)
      if (auto c = words_[i] <=> o.words_[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }

  std::size_t hash() const noexcept {
    std::size_t h = std::hash<std::size_t>{}(universe_);
    for (auto w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

  // "{0,2,5}"
  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (auto j : indices()) {
      if (!first) s += ',';
      s += std::to_string(j);
      first = false;
    }
    return s + "}";
  }

 private:
  void check_index(std::size_t j) const {
    if (j >= universe_)
      throw LabelSpaceError("label index " + std::to_string(j) + " outside universe of " +
                            std::to_string(universe_));
  }

  template <typename Op>
  LabelSet combine(const LabelSet& o, Op op) const {
    require_same_universe(o);
    LabelSet out(universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = op(words_[i], o.words_[i]);
    return out;
  }

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

// |a Δ b|, the number of labels on which a and b disagree.
inline std::size_t labelset_symdiff_count(const LabelSet& a, const LabelSet& b) {
  return (a ^ b).cardinality();
}

struct LabelSetHash {
  std::size_t operator()(const LabelSet& s) const noexcept { return s.hash(); }
};

}  // namespace mullab

#endif  // MULLAB_LABEL_SET_HPP
