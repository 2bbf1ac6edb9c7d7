#pragma once

// Brute-force reference implementations used only by tests. They work on
// std::set-of-std::set partitions and never call the library's enumerators.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "coalition/partition.hpp"

namespace oracle {

using Block = std::set<int>;
using Partition = std::set<Block>;

inline Partition to_sets(const coalition::CoalitionStructure& cs) {
  Partition p;
  for (const auto& b : cs.blocks()) {
    const auto m = b.members();
    p.insert(Block(m.begin(), m.end()));
  }
  return p;
}

inline coalition::CoalitionStructure from_sets(int n, const Partition& p) {
  std::vector<coalition::Coalition> blocks;
  for (const auto& b : p) {
    std::vector<int> m(b.begin(), b.end());
    blocks.push_back(coalition::Coalition::from_members(m));
  }
  return coalition::CoalitionStructure::canonicalize(n, std::move(blocks));
}

/// All partitions of {0..n-1}: every label assignment in [0,n)^n, deduplicated.
inline std::set<Partition> all_partitions(int n) {
  std::set<Partition> out;
  std::vector<int> label(static_cast<std::size_t>(n), 0);
  for (;;) {
    std::vector<Block> blocks(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) blocks[static_cast<std::size_t>(label[static_cast<std::size_t>(i)])].insert(i);
    Partition p;
    for (auto& b : blocks) {
      if (!b.empty()) p.insert(b);
    }
    out.insert(p);
    int k = 0;
    while (k < n && ++label[static_cast<std::size_t>(k)] == n) label[static_cast<std::size_t>(k++)] = 0;
    if (k == n) break;
  }
  return out;
}

/// Bell numbers from B(m+1) = sum_k C(m,k) B(k).
inline std::uint64_t bell_recurrence(int n) {
  std::vector<std::uint64_t> b{1};
  for (int m = 0; m < n; ++m) {
    std::uint64_t next = 0;
    std::uint64_t c = 1;  // C(m, k)
    for (int k = 0; k <= m; ++k) {
      next += c * b[static_cast<std::size_t>(k)];
      c = c * static_cast<std::uint64_t>(m - k) / static_cast<std::uint64_t>(k + 1);
    }
    b.push_back(next);
  }
  return b[static_cast<std::size_t>(n)];
}

/// Number of partitions of an n-set into exactly l blocks: onto maps / l!.
inline std::uint64_t count_partitions_exact(int n, int l) {
  if (l == 0) return n == 0 ? 1 : 0;
  std::uint64_t onto = 0;
  std::vector<int> f(static_cast<std::size_t>(n), 0);
  for (;;) {
    std::uint32_t hit = 0;
    for (int v : f) hit |= 1U << v;
    if (hit == (1U << l) - 1) ++onto;
    int k = 0;
    while (k < n && ++f[static_cast<std::size_t>(k)] == l) f[static_cast<std::size_t>(k++)] = 0;
    if (k == n) break;
  }
  std::uint64_t fact = 1;
  for (int j = 2; j <= l; ++j) fact *= static_cast<std::uint64_t>(j);
  return onto / fact;
}

/// Subsets of an m-set with 2..q elements, by scanning all 2^m masks.
inline std::uint64_t count_merge_subsets(int m, int q) {
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    const int k = __builtin_popcountll(mask);
    if (k >= 2 && k <= q) ++count;
  }
  return count;
}

inline Block unite(const std::vector<Block>& blocks) {
  Block out;
  for (const auto& b : blocks) out.insert(b.begin(), b.end());
  return out;
}

inline std::vector<Block> minus(const Partition& a, const Partition& b) {
  std::vector<Block> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// to = (union T) + (from \ T) for some T subset of from with 2 <= |T| <= q.
/// Returns the merged coalition when reachable.
inline std::optional<Block> merge_reachable(const Partition& from, const Partition& to, int q) {
  const auto gone = minus(from, to);
  const auto added = minus(to, from);
  if (added.size() != 1 || gone.size() < 2 || static_cast<int>(gone.size()) > q) return std::nullopt;
  if (unite(gone) != added.front()) return std::nullopt;
  return added.front();
}

/// to = (from \ {T}) + {S_1..S_k} with T = union S_j, 2 <= k <= q.
/// Returns T when reachable.
inline std::optional<Block> split_reachable(const Partition& from, const Partition& to, int q) {
  const auto gone = minus(from, to);
  const auto added = minus(to, from);
  if (gone.size() != 1 || added.size() < 2 || static_cast<int>(added.size()) > q) return std::nullopt;
  if (unite(added) != gone.front()) return std::nullopt;
  return gone.front();
}

struct IndividualMove {
  int player;
  Block joined;  // empty = leaves to be alone
};

/// Every (i, S) whose move turns `from` into `to`.
inline std::vector<IndividualMove> individual_moves(const Partition& from, const Partition& to, int n) {
  std::vector<IndividualMove> out;
  for (int i = 0; i < n; ++i) {
    const Block* own = nullptr;
    for (const auto& b : from) {
      if (b.contains(i)) own = &b;
    }
    std::vector<Block> options{Block{}};
    for (const auto& b : from) {
      if (&b != own) options.push_back(b);
    }
    for (const auto& s : options) {
      Partition next = from;
      next.erase(*own);
      next.erase(s);
      Block rest = *own;
      rest.erase(i);
      Block joined = s;
      joined.insert(i);
      if (!rest.empty()) next.insert(rest);
      next.insert(joined);
      if (next == to && next != from) out.push_back({i, s});
    }
  }
  return out;
}

inline bool weakly(double now, double before) { return now - before >= -1e-9; }
inline bool strictly(double now, double before) { return now - before > 1e-9; }

inline bool pareto(const std::vector<double>& now, const std::vector<double>& before, const Block& who) {
  bool all = true;
  bool some = false;
  for (int i : who) {
    all = all && weakly(now[static_cast<std::size_t>(i)], before[static_cast<std::size_t>(i)]);
    some = some || strictly(now[static_cast<std::size_t>(i)], before[static_cast<std::size_t>(i)]);
  }
  return all && some;
}

}  // namespace oracle
