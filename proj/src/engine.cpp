#include "coalition/engine.hpp"

#include <limits>
#include <numeric>
#include <unordered_map>

#include <fmt/format.h>

#include "coalition/errors.hpp"

namespace coalition {

namespace {

// Utilities of visited and candidate structures within one formation run.
class UtilityCache {
 public:
  explicit UtilityCache(const UtilityOracle& oracle) : oracle_(oracle) {}

  const UtilityVector& get(const CoalitionStructure& cs) {
    auto [it, inserted] = cache_.try_emplace(cs.key());
    if (inserted) {
      it->second = oracle_.evaluate(cs);
      if (it->second.size() != static_cast<std::size_t>(cs.player_count())) {
        throw InvariantViolation("oracle returned " + std::to_string(it->second.size()) + " utilities for " +
                                 std::to_string(cs.player_count()) + " players");
      }
    }
    return it->second;
  }

 private:
  const UtilityOracle& oracle_;
  std::unordered_map<std::string, UtilityVector> cache_;
};

bool stable_with(const CoalitionStructure& cs, UtilityCache& cache, const DeviationModel& model,
                 const HistoryLedger& ledger) {
  const UtilityVector current = cache.get(cs);
  for (const Deviation& d : reachable(cs, model, ledger)) {
    if (deviation_preferred(d, cache.get(d.target), current)) return false;
  }
  return true;
}

double sum(const UtilityVector& u) { return std::accumulate(u.begin(), u.end(), 0.0); }

}  // namespace

std::uint64_t default_max_steps(int n) {
  if (n >= 60) return std::numeric_limits<std::uint64_t>::max();
  return std::uint64_t{10} << n;
}

bool deviation_preferred(const Deviation& d, std::span<const double> u_new, std::span<const double> u_old) {
  if (d.kind == StepKind::individual) return individual_preferred(u_new, u_old, d.mover, d.joined);
  return pareto_preferred(u_new, u_old, d.deviators);
}

FormationResult run_formation(const UtilityOracle& oracle, const DeviationModel& model,
                              const CoalitionStructure& init, const FormationOptions& options) {
  model.validate();
  const int n = init.player_count();
  if (oracle.player_count() != n) {
    throw DomainError("oracle has " + std::to_string(oracle.player_count()) + " players, initial structure " +
                      std::to_string(n));
  }
  const std::uint64_t max_steps = options.max_steps.value_or(default_max_steps(n));

  UtilityCache cache(oracle);
  FormationResult result;
  GameState& state = result.state;
  state.current = init;
  state.ledger = HistoryLedger::seeded(init);
  state.utilities = cache.get(init);

  for (;;) {
    bool accepted = false;
    for (Deviation& d : reachable(state.current, model, state.ledger)) {
      ++state.candidate_evals;
      const UtilityVector& u_new = cache.get(d.target);
      if (!deviation_preferred(d, u_new, state.utilities)) continue;

      if (state.step_count >= max_steps) {
        throw InvariantViolation("coalition formation exceeded " + std::to_string(max_steps) + " steps");
      }
      TraceStep step;
      step.index = state.step_count;
      step.before = state.utilities;
      step.after = u_new;
      state.current = d.target;
      state.utilities = u_new;
      state.ledger.record_visit(state.current);
      ++state.step_count;
      step.deviation = std::move(d);
      result.trace.push_back(std::move(step));
      accepted = true;
      break;
    }
    if (!accepted) break;
  }

  const bool uses_history = model.kind == DeviationKind::merge_split || model.kind == DeviationKind::individual;
  result.unrestricted_stable = uses_history ? stable_with(state.current, cache, model, HistoryLedger{}) : true;
  return result;
}

bool is_stable(const CoalitionStructure& cs, const UtilityOracle& oracle, const DeviationModel& model,
               const HistoryLedger& ledger) {
  model.validate();
  UtilityCache cache(oracle);
  return stable_with(cs, cache, model, ledger);
}

std::vector<CoalitionStructure> brute_force_stable_set(const UtilityOracle& oracle, const DeviationModel& model,
                                                       int n, const HistoryLedger& ledger) {
  if (n > kBruteForceMaxPlayers) {
    throw ResourceError("brute-force stability check limited to " + std::to_string(kBruteForceMaxPlayers) +
                        " players (got " + std::to_string(n) + ")");
  }
  model.validate();
  UtilityCache cache(oracle);
  std::vector<CoalitionStructure> out;
  for (auto& cs : enumerate_all_structures(n, kBruteForceMaxPlayers)) {
    if (stable_with(cs, cache, model, ledger)) out.push_back(std::move(cs));
  }
  return out;
}

std::string format_trace_line(const TraceStep& step) {
  std::string formed;
  for (const Coalition& c : step.deviation.formed) {
    if (!formed.empty()) formed += '|';
    formed += c.to_string();
  }
  return fmt::format("{} {} formed={} deviators={} sum_before={:.9f} sum_after={:.9f}", step.index,
                     to_string(step.deviation.kind), formed, step.deviation.deviators.to_string(),
                     sum(step.before), sum(step.after));
}

}  // namespace coalition
