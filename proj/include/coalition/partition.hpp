#pragma once

// Coalition structures: canonical partitions of the player set {0..n-1}.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coalition {

using Player = int;

/// Player sets are limited to 64 players so a coalition fits in one word.
inline constexpr int kMaxPlayers = 64;

/// Default cap on `enumerate_all_structures`; B(10) = 115975.
inline constexpr int kDefaultEnumerationCap = 10;

/// A set of players stored as a bitmask. Iteration is in increasing player
/// order. The empty value is permitted as a set (e.g. "join nobody"); a
/// CoalitionStructure never contains it.
class Coalition {
 public:
  using Mask = std::uint64_t;

  constexpr Coalition() = default;
  constexpr explicit Coalition(Mask mask) : mask_(mask) {}
  Coalition(std::initializer_list<Player> members);

  static Coalition from_members(std::span<const Player> members);
  static constexpr Coalition single(Player i) { return Coalition(Mask{1} << i); }

  constexpr Mask mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool contains(Player i) const {
    return i >= 0 && i < kMaxPlayers && ((mask_ >> i) & 1U) != 0;
  }
  /// Smallest member. Undefined for the empty set.
  constexpr Player min_member() const { return std::countr_zero(mask_); }
  std::vector<Player> members() const;

  template <typename F>
  void for_each(F&& f) const {
    for (Mask m = mask_; m != 0; m &= m - 1) f(static_cast<Player>(std::countr_zero(m)));
  }

  constexpr Coalition operator|(Coalition o) const { return Coalition(mask_ | o.mask_); }
  constexpr Coalition operator&(Coalition o) const { return Coalition(mask_ & o.mask_); }
  constexpr Coalition without(Player i) const { return Coalition(mask_ & ~(Mask{1} << i)); }
  constexpr Coalition with(Player i) const { return Coalition(mask_ | (Mask{1} << i)); }
  constexpr bool intersects(Coalition o) const { return (mask_ & o.mask_) != 0; }

  friend constexpr bool operator==(Coalition, Coalition) = default;

  /// Comma-separated members, e.g. "1,2".
  std::string to_string() const;

 private:
  Mask mask_ = 0;
};

struct CoalitionHash {
  std::size_t operator()(Coalition c) const noexcept { return std::hash<Coalition::Mask>{}(c.mask()); }
};

/// A partition of {0..n-1} into non-empty, pairwise disjoint coalitions.
/// Blocks are kept sorted by their minimum member, so two structures are equal
/// iff their block sequences are identical, and the block index of each player
/// is its restricted-growth label.
class CoalitionStructure {
 public:
  /// Empty placeholder over zero players; not a valid structure.
  CoalitionStructure() = default;

  /// Validates and canonicalizes. Throws DomainError on an empty block, an
  /// overlap, a member outside {0..n-1}, or a player not covered by any block.
  static CoalitionStructure canonicalize(int n, std::vector<Coalition> blocks);
  static CoalitionStructure singletons(int n);
  static CoalitionStructure grand(int n);
  /// Builds from per-player labels; equal labels share a block. Labels need
  /// not be a restricted-growth string.
  static CoalitionStructure from_labels(std::span<const std::uint8_t> labels);
  /// Parses the text form "0,3|1|2,4". The player count is inferred and the
  /// members must cover {0..n-1} exactly.
  static CoalitionStructure parse(std::string_view text);

  int player_count() const { return n_; }
  std::size_t block_count() const { return blocks_.size(); }
  std::span<const Coalition> blocks() const { return blocks_; }
  const Coalition& block(std::size_t k) const { return blocks_[k]; }

  /// The block containing player i. Throws DomainError for an unknown player.
  const Coalition& coalition_of(Player i) const;
  std::size_t block_index_of(Player i) const;

  /// Restricted-growth string: label[i] = index of the block holding i.
  std::vector<std::uint8_t> labels() const;
  /// Byte string of the labels; a compact hash key.
  std::string key() const;
  /// Text form, e.g. "0,3|1|2,4".
  std::string to_string() const;

  friend bool operator==(const CoalitionStructure&, const CoalitionStructure&) = default;

 private:
  CoalitionStructure(int n, std::vector<Coalition> blocks) : n_(n), blocks_(std::move(blocks)) {}

  int n_ = 0;
  std::vector<Coalition> blocks_;
};

/// Free-function form of CoalitionStructure::coalition_of.
inline const Coalition& coalition_of(const CoalitionStructure& cs, Player i) { return cs.coalition_of(i); }

/// Total order by restricted-growth string. Throws DomainError when the
/// structures are over different player sets.
std::strong_ordering lex_order(const CoalitionStructure& a, const CoalitionStructure& b);

/// Calls f(labels) for every restricted-growth string of length n whose
/// largest label is below max_blocks, in lexicographic order. The span is
/// only valid during the call.
template <typename F>
void for_each_restricted_growth(int n, int max_blocks, F&& f) {
  if (n <= 0 || max_blocks <= 0) return;
  std::vector<std::uint8_t> a(static_cast<std::size_t>(n), 0);
  // prefix_max[k] = max(a[0..k])
  std::vector<std::uint8_t> prefix_max(static_cast<std::size_t>(n), 0);
  for (;;) {
    f(std::span<const std::uint8_t>(a));
    int k = n - 1;
    for (; k > 0; --k) {
      const int limit = std::min<int>(prefix_max[k - 1] + 1, max_blocks - 1);
      if (a[k] < limit) break;
    }
    if (k == 0) return;
    ++a[k];
    prefix_max[k] = std::max(prefix_max[k - 1], a[k]);
    for (int j = k + 1; j < n; ++j) {
      a[j] = 0;
      prefix_max[j] = prefix_max[k];
    }
  }
}

/// Every partition of {0..n-1} exactly once, in restricted-growth order.
/// Throws ResourceError if n exceeds cap and DomainError if n < 1.
std::vector<CoalitionStructure> enumerate_all_structures(int n, int cap = kDefaultEnumerationCap);

}  // namespace coalition
