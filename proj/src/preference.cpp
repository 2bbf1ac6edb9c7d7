#include "coalition/preference.hpp"

#include <bit>
#include <string>

#include "coalition/errors.hpp"

namespace coalition {

namespace {

void check_lengths(std::span<const double> a, std::span<const double> b, Coalition members) {
  if (a.size() != b.size()) {
    throw DomainError("utility vectors differ in length (" + std::to_string(a.size()) + " vs " +
                      std::to_string(b.size()) + ")");
  }
  const auto highest = static_cast<std::size_t>(63 - std::countl_zero(members.mask()));
  if (!members.empty() && highest >= a.size()) {
    throw DomainError("coalition {" + members.to_string() + "} outside the utility vector");
  }
}

}  // namespace

bool pareto_preferred(std::span<const double> u_new, std::span<const double> u_old, Coalition deviators) {
  if (deviators.empty()) throw DomainError("empty deviator set");
  check_lengths(u_new, u_old, deviators);
  bool any_strict = false;
  bool all_weak = true;
  deviators.for_each([&](Player i) {
    const auto k = static_cast<std::size_t>(i);
    all_weak = all_weak && weakly_better(u_new[k], u_old[k]);
    any_strict = any_strict || strictly_better(u_new[k], u_old[k]);
  });
  return all_weak && any_strict;
}

bool individual_preferred(std::span<const double> u_new, std::span<const double> u_old, Player i, Coalition joined) {
  if (joined.contains(i)) throw DomainError("deviating player " + std::to_string(i) + " is already in the joined coalition");
  check_lengths(u_new, u_old, joined.with(i));
  const auto k = static_cast<std::size_t>(i);
  if (!strictly_better(u_new[k], u_old[k])) return false;
  bool all_weak = true;
  joined.for_each([&](Player j) {
    all_weak = all_weak && weakly_better(u_new[static_cast<std::size_t>(j)], u_old[static_cast<std::size_t>(j)]);
  });
  return all_weak;
}

}  // namespace coalition
