#include "coalition/deviation.hpp"

#include <algorithm>

#include "coalition/errors.hpp"

namespace coalition {

namespace {

// Sorts by target RGS while computing each label string only once.
void sort_by_target(std::vector<Deviation>& devs) {
  std::vector<std::pair<std::string, std::size_t>> keys;
  keys.reserve(devs.size());
  for (std::size_t k = 0; k < devs.size(); ++k) keys.emplace_back(devs[k].target.key(), k);
  std::sort(keys.begin(), keys.end());
  std::vector<Deviation> sorted;
  sorted.reserve(devs.size());
  for (auto& [key, k] : keys) sorted.push_back(std::move(devs[k]));
  devs = std::move(sorted);
}

}  // namespace

std::string_view to_string(DeviationKind kind) {
  switch (kind) {
    case DeviationKind::merge: return "merge";
    case DeviationKind::split: return "split";
    case DeviationKind::merge_split: return "merge_split";
    case DeviationKind::individual: return "individual";
  }
  return "?";
}

std::string_view to_string(StepKind kind) {
  switch (kind) {
    case StepKind::merge: return "merge";
    case StepKind::split: return "split";
    case StepKind::individual: return "individual";
  }
  return "?";
}

DeviationKind parse_deviation_kind(std::string_view text) {
  if (text == "merge") return DeviationKind::merge;
  if (text == "split") return DeviationKind::split;
  if (text == "merge_split" || text == "merge&split" || text == "mergesplit") return DeviationKind::merge_split;
  if (text == "individual") return DeviationKind::individual;
  throw DomainError("unknown deviation model '" + std::string(text) + "'");
}

void DeviationModel::validate() const {
  if (kind != DeviationKind::individual && q < 2) {
    throw DomainError("deviation bound q must be at least 2 (got " + std::to_string(q) + ")");
  }
  if (max_coalition_size < 1) throw DomainError("max_coalition_size must be at least 1");
}

std::string DeviationModel::label() const {
  if (kind == DeviationKind::individual) return "individual";
  return std::string(to_string(kind)) + "_" + std::to_string(q);
}

HistoryLedger HistoryLedger::seeded(const CoalitionStructure& initial) {
  HistoryLedger ledger;
  ledger.record_visit(initial);
  return ledger;
}

void HistoryLedger::record_visit(const CoalitionStructure& cs) {
  for (const Coalition& b : cs.blocks()) seen_.insert(b);
}

std::vector<Coalition> HistoryLedger::memberships(Player i) const {
  std::vector<Coalition> out;
  for (Coalition c : seen_) {
    if (c.contains(i)) out.push_back(c);
  }
  std::sort(out.begin(), out.end(), [](Coalition a, Coalition b) { return a.mask() < b.mask(); });
  return out;
}

HistoryLedger record_visit(HistoryLedger ledger, const CoalitionStructure& cs) {
  ledger.record_visit(cs);
  return ledger;
}

std::vector<Deviation> enumerate_merge(const CoalitionStructure& cs, const DeviationModel& model,
                                       const HistoryLedger* history) {
  model.validate();
  std::vector<Deviation> out;
  const auto blocks = cs.blocks();
  const int m = static_cast<int>(blocks.size());
  const int max_parts = std::min(model.merge_bound(), m);
  std::vector<int> pick;
  for (int k = 2; k <= max_parts; ++k) {
    // Combinations of k block indices in lexicographic order.
    pick.resize(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) pick[static_cast<std::size_t>(j)] = j;
    for (;;) {
      Coalition merged;
      for (int idx : pick) merged = merged | blocks[static_cast<std::size_t>(idx)];
      const bool too_large = merged.size() > model.max_coalition_size;
      const bool recurring = history != nullptr && history->has_existed(merged);
      if (!too_large && !recurring) {
        std::vector<Coalition> next;
        next.reserve(static_cast<std::size_t>(m - k + 1));
        next.push_back(merged);
        for (const Coalition& b : blocks) {
          if (!b.intersects(merged)) next.push_back(b);
        }
        Deviation d;
        d.kind = StepKind::merge;
        d.target = CoalitionStructure::canonicalize(cs.player_count(), std::move(next));
        d.deviators = merged;
        d.formed = {merged};
        out.push_back(std::move(d));
      }
      int j = k - 1;
      while (j >= 0 && pick[static_cast<std::size_t>(j)] == m - k + j) --j;
      if (j < 0) break;
      ++pick[static_cast<std::size_t>(j)];
      for (int l = j + 1; l < k; ++l) pick[static_cast<std::size_t>(l)] = pick[static_cast<std::size_t>(l - 1)] + 1;
    }
  }
  sort_by_target(out);
  return out;
}

std::vector<Deviation> enumerate_split(const CoalitionStructure& cs, const DeviationModel& model) {
  model.validate();
  std::vector<Deviation> out;
  const int bound = model.split_bound();
  for (const Coalition& block : cs.blocks()) {
    if (block.size() < 2) continue;
    const std::vector<Player> members = block.members();
    std::vector<Deviation> from_block;
    std::vector<Coalition> parts;
    for_each_restricted_growth(block.size(), bound, [&](std::span<const std::uint8_t> rgs) {
      const int k = 1 + *std::max_element(rgs.begin(), rgs.end());
      if (k < 2) return;
      parts.assign(static_cast<std::size_t>(k), Coalition{});
      for (std::size_t j = 0; j < rgs.size(); ++j) parts[rgs[j]] = parts[rgs[j]].with(members[j]);
      std::vector<Coalition> next;
      next.reserve(cs.block_count() + static_cast<std::size_t>(k) - 1);
      for (const Coalition& b : cs.blocks()) {
        if (b != block) next.push_back(b);
      }
      next.insert(next.end(), parts.begin(), parts.end());
      Deviation d;
      d.kind = StepKind::split;
      d.target = CoalitionStructure::canonicalize(cs.player_count(), std::move(next));
      d.deviators = block;
      d.formed = parts;
      from_block.push_back(std::move(d));
    });
    sort_by_target(from_block);
    std::move(from_block.begin(), from_block.end(), std::back_inserter(out));
  }
  return out;
}

std::vector<Deviation> enumerate_individual(const CoalitionStructure& cs, const HistoryLedger& ledger,
                                            int max_coalition_size) {
  std::vector<Deviation> out;
  const int n = cs.player_count();
  for (Player i = 0; i < n; ++i) {
    const Coalition own = cs.coalition_of(i);
    const Coalition rest = own.without(i);
    std::vector<Deviation> from_player;
    auto consider = [&](Coalition joined) {
      const Coalition formed = joined.with(i);
      if (joined.empty() && rest.empty()) return;  // no-op
      if (ledger.was_member(i, formed)) return;
      if (formed.size() > max_coalition_size) return;
      std::vector<Coalition> next;
      next.reserve(cs.block_count() + 1);
      for (const Coalition& b : cs.blocks()) {
        if (b != own && b != joined) next.push_back(b);
      }
      if (!rest.empty()) next.push_back(rest);
      next.push_back(formed);
      Deviation d;
      d.kind = StepKind::individual;
      d.target = CoalitionStructure::canonicalize(n, std::move(next));
      d.deviators = formed;
      d.formed = {formed};
      if (!rest.empty()) d.formed.push_back(rest);
      d.mover = i;
      d.joined = joined;
      from_player.push_back(std::move(d));
    };
    consider(Coalition{});
    for (const Coalition& b : cs.blocks()) {
      if (b != own) consider(b);
    }
    sort_by_target(from_player);
    std::move(from_player.begin(), from_player.end(), std::back_inserter(out));
  }
  return out;
}

std::vector<Deviation> reachable(const CoalitionStructure& cs, const DeviationModel& model,
                                 const HistoryLedger& ledger) {
  switch (model.kind) {
    case DeviationKind::merge: return enumerate_merge(cs, model);
    case DeviationKind::split: return enumerate_split(cs, model);
    case DeviationKind::merge_split: {
      auto out = enumerate_merge(cs, model, &ledger);
      auto splits = enumerate_split(cs, model);
      std::move(splits.begin(), splits.end(), std::back_inserter(out));
      return out;
    }
    case DeviationKind::individual: return enumerate_individual(cs, ledger, model.max_coalition_size);
  }
  throw InvariantViolation("unhandled deviation kind");
}

}  // namespace coalition
