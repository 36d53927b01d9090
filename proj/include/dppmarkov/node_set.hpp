#ifndef DPPMARKOV_NODE_SET_HPP
#define DPPMARKOV_NODE_SET_HPP

#include <bit>
#include <compare>
#include <cstdint>
#include <vector>

namespace dppmarkov {

/// A subset of a labeled ground set, stored as a bitmask over label positions.
/// Bit i corresponds to the i-th label of the owning matrix, model or table.
class NodeSet {
 public:
  using Bits = std::uint32_t;
  static constexpr int kMaxSize = 32;

  constexpr NodeSet() = default;
  constexpr explicit NodeSet(Bits bits) : bits_(bits) {}

  static constexpr NodeSet singleton(int i) { return NodeSet(Bits{1} << i); }
  static constexpr NodeSet full(int n) {
    return NodeSet(n >= kMaxSize ? ~Bits{0} : (Bits{1} << n) - 1);
  }

  constexpr Bits bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int i) const { return (bits_ >> i) & 1U; }
  constexpr bool includes(NodeSet other) const { return (other.bits_ & ~bits_) == 0; }
  constexpr bool disjoint(NodeSet other) const { return (bits_ & other.bits_) == 0; }
  /// Smallest element; undefined on the empty set.
  constexpr int first() const { return std::countr_zero(bits_); }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(size());
    for (Bits b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  constexpr NodeSet with(int i) const { return NodeSet(bits_ | (Bits{1} << i)); }
  constexpr NodeSet without(int i) const { return NodeSet(bits_ & ~(Bits{1} << i)); }

  friend constexpr NodeSet operator|(NodeSet a, NodeSet b) { return NodeSet(a.bits_ | b.bits_); }
  friend constexpr NodeSet operator&(NodeSet a, NodeSet b) { return NodeSet(a.bits_ & b.bits_); }
  friend constexpr NodeSet operator-(NodeSet a, NodeSet b) { return NodeSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(NodeSet, NodeSet) = default;
  friend constexpr auto operator<=>(NodeSet a, NodeSet b) { return a.bits_ <=> b.bits_; }

 private:
  Bits bits_ = 0;
};

/// Calls f(sub) for every subset of `set`, empty set and `set` included, in ascending bitmask order.
template <typename F>
void for_each_subset(NodeSet set, F&& f) {
  const NodeSet::Bits mask = set.bits();
  NodeSet::Bits sub = 0;
  while (true) {
    f(NodeSet(sub));
    if (sub == mask) break;
    sub = (sub - mask) & mask;
  }
}

/// Packs the bits of `x` selected by `mask` into the low bits (software pext).
constexpr NodeSet::Bits compress_bits(NodeSet::Bits x, NodeSet::Bits mask) {
  NodeSet::Bits out = 0;
  int k = 0;
  for (NodeSet::Bits m = mask; m != 0; m &= m - 1, ++k) {
    if (x & (m & -m)) out |= NodeSet::Bits{1} << k;
  }
  return out;
}

/// Inverse of compress_bits: scatters the low bits of `x` onto the positions of `mask`.
constexpr NodeSet::Bits expand_bits(NodeSet::Bits x, NodeSet::Bits mask) {
  NodeSet::Bits out = 0;
  int k = 0;
  for (NodeSet::Bits m = mask; m != 0; m &= m - 1, ++k) {
    if ((x >> k) & 1U) out |= (m & -m);
  }
  return out;
}

}  // namespace dppmarkov

#endif  // DPPMARKOV_NODE_SET_HPP
