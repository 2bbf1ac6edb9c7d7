#pragma once

// Reachability: the structures one deviation step away from a given
// structure under the q-merge, q-split, merge&split and individual models.

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "coalition/partition.hpp"

namespace coalition {

enum class DeviationKind { merge, split, merge_split, individual };

/// Kind of a single accepted step (merge&split produces both).
enum class StepKind { merge, split, individual };

std::string_view to_string(DeviationKind kind);
std::string_view to_string(StepKind kind);
/// Accepts "merge", "split", "merge_split" (also "merge&split") and "individual".
DeviationKind parse_deviation_kind(std::string_view text);

inline constexpr int kUnlimitedCoalitionSize = std::numeric_limits<int>::max();

/// Bound on the number of parts in the split half of merge&split.
inline constexpr int kMergeSplitSplitBound = 2;

struct DeviationModel {
  DeviationKind kind = DeviationKind::merge;
  /// Merge: at most q coalitions merge. Split: at most q parts.
  /// merge&split: q bounds the merge; splits are always 2-splits.
  /// Ignored for individual deviation.
  int q = 2;
  /// No step may form a coalition larger than this.
  int max_coalition_size = kUnlimitedCoalitionSize;

  void validate() const;
  int merge_bound() const { return q; }
  int split_bound() const { return kind == DeviationKind::merge_split ? kMergeSplitSplitBound : q; }
  /// "merge_3", "individual", ...
  std::string label() const;

  friend bool operator==(const DeviationModel&, const DeviationModel&) = default;
};

struct Deviation {
  StepKind kind = StepKind::merge;
  CoalitionStructure target;
  /// Players whose consent the step requires.
  Coalition deviators;
  /// Coalitions of `target` created by this step.
  std::vector<Coalition> formed;
  /// Individual deviation only: the moving player and the coalition it joins
  /// (empty when it leaves to be alone).
  Player mover = -1;
  Coalition joined;
};

/// Coalitions that have existed in any visited structure. A player has been a
/// member of C exactly when C has existed and contains the player, so one set
/// serves both the merge&split and the individual restriction.
class HistoryLedger {
 public:
  HistoryLedger() = default;
  /// Ledger holding the blocks of the initial structure.
  static HistoryLedger seeded(const CoalitionStructure& initial);

  /// Adds every block of cs. Monotone and idempotent.
  void record_visit(const CoalitionStructure& cs);

  bool has_existed(Coalition c) const { return seen_.contains(c); }
  bool was_member(Player i, Coalition c) const { return c.contains(i) && seen_.contains(c); }
  /// Coalitions player i has belonged to, sorted by mask.
  std::vector<Coalition> memberships(Player i) const;
  std::size_t size() const { return seen_.size(); }
  bool empty() const { return seen_.empty(); }

 private:
  std::unordered_set<Coalition, CoalitionHash> seen_;
};

/// Value-returning form of HistoryLedger::record_visit.
HistoryLedger record_visit(HistoryLedger ledger, const CoalitionStructure& cs);

/// One deviation per set of 2..min(q, |cs|) blocks merging into one, ordered by
/// lex_order of the target. Merges forming a coalition larger than
/// max_coalition_size are omitted; with `history`, so are merges re-forming a
/// coalition that has existed.
std::vector<Deviation> enumerate_merge(const CoalitionStructure& cs, const DeviationModel& model,
                                       const HistoryLedger* history = nullptr);

/// One deviation per block and per partition of that block into 2..split_bound
/// parts, ordered by block and then by lex_order of the target.
std::vector<Deviation> enumerate_split(const CoalitionStructure& cs, const DeviationModel& model);

/// Single-player moves: player i leaves C_i and joins S (another block, or
/// nobody). Omits no-ops, moves into a coalition i has belonged to before, and
/// moves forming a coalition above max_coalition_size. Ordered by player, then
/// lex_order of the target.
std::vector<Deviation> enumerate_individual(const CoalitionStructure& cs, const HistoryLedger& ledger,
                                            int max_coalition_size = kUnlimitedCoalitionSize);

/// Dispatches on model.kind. merge&split lists the history-filtered merges
/// first and then the 2-splits.
std::vector<Deviation> reachable(const CoalitionStructure& cs, const DeviationModel& model,
                                 const HistoryLedger& ledger);

}  // namespace coalition
