#pragma once

// Exact counts of reachable structures under q-merge and q-split.

#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "coalition/partition.hpp"

namespace coalition {

using BigInt = boost::multiprecision::cpp_int;

BigInt binomial(unsigned n, unsigned k);

/// Stirling number of the second kind by the recurrence
/// S(n,l) = l*S(n-1,l) + S(n-1,l-1).
BigInt stirling2(unsigned n, unsigned l);

/// Same quantity by inclusion-exclusion, (1/l!) sum_k (-1)^k C(l,k) (l-k)^n.
/// Kept as a cross-check of `stirling2`.
BigInt stirling2_inclusion_exclusion(unsigned n, unsigned l);

BigInt bell(unsigned n);

/// D(m,q): ways to merge between 2 and min(q,m) of m coalitions.
BigInt merge_complexity(unsigned m, unsigned q);

/// T(m,q): ways to split an m-set into 2..q non-empty parts.
BigInt split_complexity(unsigned m, unsigned q);

/// Sum over the blocks of cs of T(|block|, q).
BigInt structure_split_complexity(const CoalitionStructure& cs, unsigned q);

/// q-list entry meaning "q = n" on each row.
inline constexpr unsigned kQEqualsN = 0;

struct ComplexityRow {
  unsigned n = 0;
  unsigned q = 0;
  BigInt merge;  // D(n,q), worst case of n singleton blocks
  BigInt split;  // T(n,q), grand coalition
};

/// Rows for n = 1..n_max and each q in q_list, in that nesting order.
/// A kQEqualsN entry uses q = max(n, 2).
std::vector<ComplexityRow> complexity_table(unsigned n_max, std::span<const unsigned> q_list);

}  // namespace coalition
