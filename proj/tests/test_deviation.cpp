#include <doctest.h>

#include "coalition/complexity.hpp"
#include "coalition/deviation.hpp"
#include "coalition/errors.hpp"
#include "oracles.hpp"

using namespace coalition;

namespace {

CoalitionStructure cs(std::string_view text) { return CoalitionStructure::parse(text); }

DeviationModel merge(int q, int cap = kUnlimitedCoalitionSize) { return {DeviationKind::merge, q, cap}; }
DeviationModel split(int q) { return {DeviationKind::split, q, kUnlimitedCoalitionSize}; }

std::vector<std::string> targets(const std::vector<Deviation>& devs) {
  std::vector<std::string> out;
  for (const auto& d : devs) out.push_back(d.target.to_string());
  return out;
}

}  // namespace

TEST_CASE("model validation") {
  CHECK_THROWS_AS(merge(1).validate(), DomainError);
  CHECK_THROWS_AS(DeviationModel({DeviationKind::merge, 2, 0}).validate(), DomainError);
  CHECK_NOTHROW(DeviationModel({DeviationKind::individual, 0, 3}).validate());
  CHECK(parse_deviation_kind("merge&split") == DeviationKind::merge_split);
  CHECK_THROWS_AS(parse_deviation_kind("swap"), DomainError);
  CHECK(DeviationModel{DeviationKind::merge_split, 4, 8}.split_bound() == 2);
}

TEST_CASE("enumerate_merge examples") {
  const auto pairs = enumerate_merge(cs("0|1|2"), merge(2));
  CHECK(targets(pairs) == std::vector<std::string>{"0,1|2", "0,2|1", "0|1,2"});
  CHECK(pairs[1].deviators == Coalition{0, 2});
  CHECK(pairs[1].formed == std::vector<Coalition>{Coalition{0, 2}});

  CHECK(enumerate_merge(cs("0,1,2"), merge(2)).empty());
  CHECK(targets(enumerate_merge(cs("0|1|2"), merge(3))) ==
        std::vector<std::string>{"0,1,2", "0,1|2", "0,2|1", "0|1,2"});
}

TEST_CASE("enumerate_merge size cap and history filter") {
  // Merging {0,1} with {2} would form a coalition of 3.
  CHECK(targets(enumerate_merge(cs("0,1|2|3"), merge(2, 2))) == std::vector<std::string>{"0,1|2,3"});
  HistoryLedger ledger = HistoryLedger::seeded(cs("0|1|2"));
  ledger.record_visit(cs("0,1|2"));
  CHECK(targets(enumerate_merge(cs("0|1|2"), merge(2), &ledger)) == std::vector<std::string>{"0,2|1", "0|1,2"});
}

TEST_CASE("enumerate_split examples") {
  CHECK(targets(enumerate_split(cs("0,1"), split(2))) == std::vector<std::string>{"0|1"});
  const auto four = enumerate_split(cs("0,1,2,3"), split(2));
  CHECK(four.size() == 7);
  for (const auto& d : four) {
    CHECK(d.deviators == Coalition{0, 1, 2, 3});
    CHECK(d.target.block_count() == 2);
  }
  CHECK(enumerate_split(cs("0|1"), split(2)).empty());
  // Block order first: splits of {0,2} come before splits of {1,3}.
  CHECK(targets(enumerate_split(cs("0,2|1,3"), split(2))) == std::vector<std::string>{"0|1,3|2", "0,2|1|3"});
}

TEST_CASE("enumerate_individual examples") {
  const auto two = enumerate_individual(cs("0|1"), HistoryLedger::seeded(cs("0|1")));
  REQUIRE(two.size() == 2);
  CHECK(two[0].mover == 0);
  CHECK(two[0].joined == Coalition{1});
  CHECK(two[0].target == cs("0,1"));
  CHECK(two[1].mover == 1);
  CHECK(two[1].target == cs("0,1"));
  CHECK(two[1].deviators == Coalition{0, 1});

  const auto exits = enumerate_individual(cs("0,1"), HistoryLedger::seeded(cs("0,1")));
  REQUIRE(exits.size() == 2);
  for (const auto& d : exits) {
    CHECK(d.target == cs("0|1"));
    CHECK(d.joined.empty());
    CHECK(d.deviators == Coalition::single(d.mover));
  }

  // Player 0 was in {0,1}; player 1 was not.
  HistoryLedger ledger;
  ledger.record_visit(cs("0|1"));
  ledger.record_visit(cs("0,1"));
  CHECK(enumerate_individual(cs("0|1"), ledger).empty());

  // {0,2} existed before: neither 0 nor 2 may re-form it.
  HistoryLedger partial;
  partial.record_visit(cs("0|1|2"));
  partial.record_visit(cs("0,2|1"));
  const auto moves = enumerate_individual(cs("0|1|2"), partial);
  for (const auto& d : moves) CHECK(d.target != cs("0,2|1"));
  CHECK(moves.size() == 4);
}

TEST_CASE("enumerate_individual respects the size cap") {
  const auto moves = enumerate_individual(cs("0,1|2"), HistoryLedger::seeded(cs("0,1|2")), 2);
  for (const auto& d : moves) {
    for (const auto& b : d.target.blocks()) CHECK(b.size() <= 2);
  }
  CHECK(targets(moves) == std::vector<std::string>{"0,2|1", "0|1|2", "0|1,2", "0|1|2"});
}

TEST_CASE("record_visit") {
  HistoryLedger ledger;
  ledger.record_visit(cs("0|1,2"));
  CHECK(ledger.size() == 2);
  CHECK(ledger.has_existed(Coalition{1, 2}));
  CHECK(ledger.was_member(1, Coalition{1, 2}));
  CHECK_FALSE(ledger.was_member(0, Coalition{1, 2}));
  CHECK(ledger.memberships(1) == std::vector<Coalition>{Coalition{1, 2}});
  const auto again = record_visit(ledger, cs("0|1,2"));
  CHECK(again.size() == 2);

  HistoryLedger grow;
  grow.record_visit(cs("0,1"));
  grow.record_visit(cs("0|1"));
  CHECK(grow.size() == 3);
}

TEST_CASE("reachable dispatch") {
  const HistoryLedger empty;
  CHECK(reachable(cs("0|1|2"), merge(2), empty).size() == 3);
  const DeviationModel ms{DeviationKind::merge_split, 2, kUnlimitedCoalitionSize};
  CHECK(reachable(cs("0,1,2"), ms, HistoryLedger::seeded(cs("0,1,2"))).size() == 3);
  const DeviationModel ind{DeviationKind::individual, 0, kUnlimitedCoalitionSize};
  CHECK(reachable(cs("0|1|2"), ind, HistoryLedger::seeded(cs("0|1|2"))).size() == 6);

  // merge&split with q = 3 still splits into at most two parts.
  const DeviationModel ms3{DeviationKind::merge_split, 3, kUnlimitedCoalitionSize};
  const auto from_grand = reachable(cs("0,1,2"), ms3, HistoryLedger::seeded(cs("0,1,2")));
  CHECK(from_grand.size() == 3);
  // Merges precede splits.
  const auto mixed = reachable(cs("0,1|2"), ms, HistoryLedger::seeded(cs("0,1|2")));
  REQUIRE(mixed.size() == 2);
  CHECK(mixed[0].kind == StepKind::merge);
  CHECK(mixed[1].kind == StepKind::split);
}

TEST_CASE("merge and split counts equal D(n,q) and T(n,q)") {
  for (int n = 1; n <= 10; ++n) {
    for (int q = 2; q <= 5; ++q) {
      CHECK(enumerate_merge(CoalitionStructure::singletons(n), merge(q)).size() ==
            merge_complexity(static_cast<unsigned>(n), static_cast<unsigned>(q)));
      CHECK(enumerate_split(CoalitionStructure::grand(n), split(q)).size() ==
            split_complexity(static_cast<unsigned>(n), static_cast<unsigned>(q)));
    }
  }
}

TEST_CASE("targets are valid, distinct from the source and move block counts the right way") {
  const HistoryLedger empty;
  for (int n = 1; n <= 5; ++n) {
    for (const auto& source : enumerate_all_structures(n)) {
      for (int q = 2; q <= 4; ++q) {
        for (const auto& d : enumerate_merge(source, merge(q))) {
          CHECK(d.target != source);
          CHECK(d.target.block_count() < source.block_count());
        }
        for (const auto& d : enumerate_split(source, split(q))) {
          CHECK(d.target != source);
          CHECK(d.target.block_count() > source.block_count());
        }
      }
      for (const auto& d : enumerate_individual(source, empty)) {
        CHECK(d.target != source);
        const auto gone = oracle::minus(oracle::to_sets(source), oracle::to_sets(d.target));
        // Only C_i and S may disappear.
        CHECK(gone.size() <= 2);
        const auto own_members = source.coalition_of(d.mover).members();
        const oracle::Block own(own_members.begin(), own_members.end());
        for (const auto& b : gone) {
          const bool is_own = b == own;
          const auto joined = d.joined.members();
          const bool is_joined = b == oracle::Block(joined.begin(), joined.end());
          CHECK((is_own || is_joined));
        }
      }
    }
  }
}

TEST_CASE("enumeration matches the textual reachability definitions (n <= 5)") {
  const HistoryLedger empty;
  for (int n = 1; n <= 5; ++n) {
    const auto all = enumerate_all_structures(n);
    for (const auto& source : all) {
      const auto from = oracle::to_sets(source);
      for (int q = 2; q <= 4; ++q) {
        std::set<oracle::Partition> merges, splits, expected_merges, expected_splits;
        for (const auto& d : enumerate_merge(source, merge(q))) merges.insert(oracle::to_sets(d.target));
        for (const auto& d : enumerate_split(source, split(q))) splits.insert(oracle::to_sets(d.target));
        for (const auto& target : all) {
          const auto to = oracle::to_sets(target);
          if (oracle::merge_reachable(from, to, q)) expected_merges.insert(to);
          if (oracle::split_reachable(from, to, q)) expected_splits.insert(to);
        }
        CHECK(merges == expected_merges);
        CHECK(splits == expected_splits);
      }
      std::set<std::pair<int, oracle::Partition>> moves, expected_moves;
      for (const auto& d : enumerate_individual(source, empty)) moves.insert({d.mover, oracle::to_sets(d.target)});
      for (const auto& target : all) {
        for (const auto& m : oracle::individual_moves(from, oracle::to_sets(target), n)) {
          expected_moves.insert({m.player, oracle::to_sets(target)});
        }
      }
      CHECK(moves == expected_moves);
    }
  }
}
