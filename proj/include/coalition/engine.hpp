#pragma once

// The coalition formation loop: repeatedly move to the first reachable
// structure the deviators prefer, until no such structure exists.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coalition/deviation.hpp"
#include "coalition/partition.hpp"
#include "coalition/preference.hpp"

namespace coalition {

/// The partition function: maps a structure to every player's utility.
/// Implementations must be deterministic for a fixed instance.
class UtilityOracle {
 public:
  virtual ~UtilityOracle() = default;
  virtual int player_count() const = 0;
  virtual UtilityVector evaluate(const CoalitionStructure& cs) const = 0;
};

/// Adapts a callable; handy for abstract games in tests.
class FunctionOracle final : public UtilityOracle {
 public:
  using Function = std::function<UtilityVector(const CoalitionStructure&)>;
  FunctionOracle(int n, Function f) : n_(n), f_(std::move(f)) {}
  int player_count() const override { return n_; }
  UtilityVector evaluate(const CoalitionStructure& cs) const override { return f_(cs); }

 private:
  int n_;
  Function f_;
};

struct GameState {
  CoalitionStructure current;
  HistoryLedger ledger;
  UtilityVector utilities;
  std::uint64_t step_count = 0;
  std::uint64_t candidate_evals = 0;
};

struct TraceStep {
  std::uint64_t index = 0;
  Deviation deviation;
  UtilityVector before;
  UtilityVector after;
};

struct FormationOptions {
  /// Defaults to 10 * 2^n.
  std::optional<std::uint64_t> max_steps;
};

struct FormationResult {
  GameState state;
  std::vector<TraceStep> trace;
  /// Stable under the model with an empty history ledger. Equals the
  /// history-restricted notion for merge and split.
  bool unrestricted_stable = false;

  const CoalitionStructure& stable() const { return state.current; }
};

std::uint64_t default_max_steps(int n);

/// Whether `u_new` is preferred over `u_old` under the relation the step kind
/// uses (Pareto over the deviators, or the individual relation).
bool deviation_preferred(const Deviation& d, std::span<const double> u_new, std::span<const double> u_old);

/// Runs formation from `init` with first-improvement acceptance in the
/// deterministic candidate order of `reachable`. Throws InvariantViolation if
/// more than max_steps steps are accepted.
FormationResult run_formation(const UtilityOracle& oracle, const DeviationModel& model,
                              const CoalitionStructure& init, const FormationOptions& options = {});

/// No reachable deviation (under model and ledger) is preferred.
bool is_stable(const CoalitionStructure& cs, const UtilityOracle& oracle, const DeviationModel& model,
               const HistoryLedger& ledger);

inline constexpr int kBruteForceMaxPlayers = 7;

/// Every structure of n players stable under model and ledger (empty ledger
/// by default). Throws ResourceError above kBruteForceMaxPlayers.
std::vector<CoalitionStructure> brute_force_stable_set(const UtilityOracle& oracle, const DeviationModel& model,
                                                       int n, const HistoryLedger& ledger = {});

/// One trace line: step index, kind, formed coalitions, deviators, utility sum
/// before and after.
std::string format_trace_line(const TraceStep& step);

}  // namespace coalition
