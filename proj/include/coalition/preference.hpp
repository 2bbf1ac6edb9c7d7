#pragma once

// Preference relations between the utility vectors of two structures.

#include <span>
#include <vector>

#include "coalition/partition.hpp"

namespace coalition {

/// Per-player utilities of one coalition structure, indexed by player.
using UtilityVector = std::vector<double>;

/// Differences at or below this are ties.
inline constexpr double kStrictTolerance = 1e-9;

inline bool strictly_better(double now, double before) { return now - before > kStrictTolerance; }
inline bool weakly_better(double now, double before) { return now - before >= -kStrictTolerance; }

/// Pareto order over `deviators`: nobody in it loses and somebody gains.
/// Throws DomainError on a length mismatch or empty deviator set.
bool pareto_preferred(std::span<const double> u_new, std::span<const double> u_old, Coalition deviators);

/// Player i strictly gains and no member of `joined` loses. `joined` may be
/// empty. Throws DomainError if i is in `joined`.
bool individual_preferred(std::span<const double> u_new, std::span<const double> u_old, Player i, Coalition joined);

}  // namespace coalition
