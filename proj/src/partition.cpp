#include "coalition/partition.hpp"

#include <algorithm>
#include <charconv>
#include <string>

#include "coalition/errors.hpp"

namespace coalition {

namespace {

void check_player_count(int n) {
  if (n < 1 || n > kMaxPlayers) {
    throw DomainError("player count " + std::to_string(n) + " outside [1, " + std::to_string(kMaxPlayers) + "]");
  }
}

Coalition::Mask full_mask(int n) {
  return n == kMaxPlayers ? ~Coalition::Mask{0} : (Coalition::Mask{1} << n) - 1;
}

}  // namespace

Coalition::Coalition(std::initializer_list<Player> members)
    : Coalition(from_members(std::span<const Player>(members.begin(), members.size()))) {}

Coalition Coalition::from_members(std::span<const Player> members) {
  Mask mask = 0;
  for (Player i : members) {
    if (i < 0 || i >= kMaxPlayers) throw DomainError("player index " + std::to_string(i) + " out of range");
    mask |= Mask{1} << i;
  }
  return Coalition(mask);
}

std::vector<Player> Coalition::members() const {
  std::vector<Player> out;
  out.reserve(static_cast<std::size_t>(size()));
  for_each([&](Player i) { out.push_back(i); });
  return out;
}

std::string Coalition::to_string() const {
  std::string out;
  for_each([&](Player i) {
    if (!out.empty()) out += ',';
    out += std::to_string(i);
  });
  return out;
}

CoalitionStructure CoalitionStructure::canonicalize(int n, std::vector<Coalition> blocks) {
  check_player_count(n);
  const Coalition::Mask all = full_mask(n);
  Coalition::Mask covered = 0;
  for (const Coalition& b : blocks) {
    if (b.empty()) throw DomainError("empty block in coalition structure");
    if ((b.mask() & ~all) != 0) throw DomainError("block {" + b.to_string() + "} has a member outside the player set");
    if ((b.mask() & covered) != 0) throw DomainError("overlapping blocks at {" + b.to_string() + "}");
    covered |= b.mask();
  }
  if (covered != all) {
    const Player missing = std::countr_zero(~covered & all);
    throw DomainError("player " + std::to_string(missing) + " is not covered by any block");
  }
  std::sort(blocks.begin(), blocks.end(),
            [](Coalition a, Coalition b) { return a.min_member() < b.min_member(); });
  return CoalitionStructure(n, std::move(blocks));
}

CoalitionStructure CoalitionStructure::singletons(int n) {
  check_player_count(n);
  std::vector<Coalition> blocks;
  blocks.reserve(static_cast<std::size_t>(n));
  for (Player i = 0; i < n; ++i) blocks.push_back(Coalition::single(i));
  return CoalitionStructure(n, std::move(blocks));
}

CoalitionStructure CoalitionStructure::grand(int n) {
  check_player_count(n);
  return CoalitionStructure(n, {Coalition(full_mask(n))});
}

CoalitionStructure CoalitionStructure::from_labels(std::span<const std::uint8_t> labels) {
  const int n = static_cast<int>(labels.size());
  check_player_count(n);
  std::vector<Coalition> blocks;
  std::vector<int> slot(256, -1);
  for (Player i = 0; i < n; ++i) {
    int& s = slot[labels[static_cast<std::size_t>(i)]];
    if (s < 0) {
      s = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[static_cast<std::size_t>(s)] = blocks[static_cast<std::size_t>(s)].with(i);
  }
  // First-occurrence order is already min-member order.
  return CoalitionStructure(n, std::move(blocks));
}

CoalitionStructure CoalitionStructure::parse(std::string_view text) {
  std::vector<Coalition> blocks;
  int max_player = -1;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t bar = std::min(text.find('|', pos), text.size());
    const std::string_view block_text = text.substr(pos, bar - pos);
    Coalition block;
    std::size_t mpos = 0;
    while (mpos <= block_text.size()) {
      const std::size_t comma = std::min(block_text.find(',', mpos), block_text.size());
      const std::string_view tok = block_text.substr(mpos, comma - mpos);
      int value = -1;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size() || value < 0 || value >= kMaxPlayers) {
        throw DomainError("malformed member '" + std::string(tok) + "' in structure '" + std::string(text) + "'");
      }
      if (block.contains(value)) throw DomainError("duplicate member " + std::to_string(value));
      block = block.with(value);
      max_player = std::max(max_player, value);
      mpos = comma + 1;
    }
    blocks.push_back(block);
    pos = bar + 1;
  }
  return canonicalize(max_player + 1, std::move(blocks));
}

const Coalition& CoalitionStructure::coalition_of(Player i) const {
  return blocks_[block_index_of(i)];
}

std::size_t CoalitionStructure::block_index_of(Player i) const {
  if (i < 0 || i >= n_) throw DomainError("unknown player " + std::to_string(i));
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    if (blocks_[k].contains(i)) return k;
  }
  throw InvariantViolation("player " + std::to_string(i) + " not in any block");
}

std::vector<std::uint8_t> CoalitionStructure::labels() const {
  std::vector<std::uint8_t> out(static_cast<std::size_t>(n_));
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    blocks_[k].for_each([&](Player i) { out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(k); });
  }
  return out;
}

std::string CoalitionStructure::key() const {
  const auto l = labels();
  return std::string(l.begin(), l.end());
}

std::string CoalitionStructure::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    if (k > 0) out += '|';
    out += blocks_[k].to_string();
  }
  return out;
}

std::strong_ordering lex_order(const CoalitionStructure& a, const CoalitionStructure& b) {
  if (a.player_count() != b.player_count()) {
    throw DomainError("lex_order over different player sets (" + std::to_string(a.player_count()) + " vs " +
                      std::to_string(b.player_count()) + ")");
  }
  const auto la = a.labels();
  const auto lb = b.labels();
  return std::lexicographical_compare_three_way(la.begin(), la.end(), lb.begin(), lb.end());
}

std::vector<CoalitionStructure> enumerate_all_structures(int n, int cap) {
  check_player_count(n);
  if (n > cap) {
    throw ResourceError("enumerating all structures of " + std::to_string(n) + " players exceeds cap " +
                        std::to_string(cap));
  }
  std::vector<CoalitionStructure> out;
  for_each_restricted_growth(n, n, [&](std::span<const std::uint8_t> rgs) {
    out.push_back(CoalitionStructure::from_labels(rgs));
  });
  return out;
}

}  // namespace coalition
