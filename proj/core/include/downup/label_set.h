#ifndef DOWNUP_LABEL_SET_H_
#define DOWNUP_LABEL_SET_H_

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace downup {

// Leaf labels are positive integers; label j lives in bit j-1 of a LabelSet.
using Label = int;

inline constexpr Label k_max_label = 64;

class LabelSet {
 public:
  constexpr LabelSet() = default;
  constexpr explicit LabelSet(std::uint64_t bits) : bits_{bits} {}

  static constexpr auto of(Label j) -> LabelSet { return LabelSet{std::uint64_t{1} << (j - 1)}; }
  static auto of(std::initializer_list<Label> labels) -> LabelSet;
  // {1, ..., n}
  static constexpr auto range(int n) -> LabelSet {
    return LabelSet{n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1};
  }

  constexpr auto bits() const -> std::uint64_t { return bits_; }
  constexpr auto empty() const -> bool { return bits_ == 0; }
  constexpr auto size() const -> int { return std::popcount(bits_); }
  constexpr auto contains(Label j) const -> bool { return (bits_ >> (j - 1)) & 1; }
  constexpr auto contains(LabelSet other) const -> bool { return (other.bits_ & ~bits_) == 0; }
  constexpr auto intersects(LabelSet other) const -> bool { return (bits_ & other.bits_) != 0; }
  // Smallest label, 0 when empty.
  constexpr auto min_label() const -> Label { return bits_ == 0 ? 0 : std::countr_zero(bits_) + 1; }
  constexpr auto max_label() const -> Label { return 64 - std::countl_zero(bits_); }

  auto labels() const -> std::vector<Label>;
  auto to_string() const -> std::string;  // "{1,3}"

  constexpr auto operator|(LabelSet o) const -> LabelSet { return LabelSet{bits_ | o.bits_}; }
  constexpr auto operator&(LabelSet o) const -> LabelSet { return LabelSet{bits_ & o.bits_}; }
  constexpr auto operator-(LabelSet o) const -> LabelSet { return LabelSet{bits_ & ~o.bits_}; }
  constexpr auto operator|=(LabelSet o) -> LabelSet& { bits_ |= o.bits_; return *this; }
  constexpr auto operator&=(LabelSet o) -> LabelSet& { bits_ &= o.bits_; return *this; }

  // Raw bit order, for use as a container key. Edge order in trees uses canonical_less.
  constexpr auto operator<=>(const LabelSet&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

// Canonical edge order: by cardinality, then lexicographically on the sorted label lists.
constexpr auto canonical_less(LabelSet a, LabelSet b) -> bool {
  auto sa = a.size();
  auto sb = b.size();
  if (sa != sb) { return sa < sb; }
  auto diff = a.bits() ^ b.bits();
  if (diff == 0) { return false; }
  // The smallest label of the symmetric difference decides the lexicographic order.
  return (a.bits() & (diff & (~diff + 1))) != 0;
}

constexpr auto canonical_compare(LabelSet a, LabelSet b) -> std::strong_ordering {
  if (a == b) { return std::strong_ordering::equal; }
  return canonical_less(a, b) ? std::strong_ordering::less : std::strong_ordering::greater;
}

// Swaps labels a and b in s.
constexpr auto swap_labels(LabelSet s, Label a, Label b) -> LabelSet {
  if (a == b || s.contains(a) == s.contains(b)) { return s; }
  return LabelSet{s.bits() ^ LabelSet::of(a).bits() ^ LabelSet::of(b).bits()};
}

// Removes label j (if present) and shifts every label above j down by one.
constexpr auto close_label_gap(LabelSet s, Label j) -> LabelSet {
  auto low_mask = (std::uint64_t{1} << (j - 1)) - 1;
  auto low = s.bits() & low_mask;
  auto high = j >= 64 ? std::uint64_t{0} : (s.bits() >> j) << (j - 1);
  return LabelSet{low | high};
}

}  // namespace downup

#endif  // DOWNUP_LABEL_SET_H_
