#include "coalition/complexity.hpp"

#include <algorithm>

#include "coalition/errors.hpp"

namespace coalition {

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt out = 1;
  for (unsigned j = 1; j <= k; ++j) {
    out *= n - k + j;
    out /= j;
  }
  return out;
}

BigInt stirling2(unsigned n, unsigned l) {
  if (l > n) return 0;
  // row[k] = S(m, k) for the current m.
  std::vector<BigInt> row(l + 1, 0);
  row[0] = 1;
  for (unsigned m = 1; m <= n; ++m) {
    for (unsigned k = std::min(m, l); k >= 1; --k) row[k] = k * row[k] + row[k - 1];
    row[0] = 0;
  }
  return row[l];
}

BigInt stirling2_inclusion_exclusion(unsigned n, unsigned l) {
  BigInt total = 0;
  for (unsigned k = 0; k <= l; ++k) {
    BigInt term = binomial(l, k) * boost::multiprecision::pow(BigInt(l - k), n);
    if (k % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  BigInt factorial = 1;
  for (unsigned j = 2; j <= l; ++j) factorial *= j;
  if (total % factorial != 0) throw InvariantViolation("inclusion-exclusion sum not divisible by l!");
  return total / factorial;
}

BigInt bell(unsigned n) {
  BigInt out = 0;
  for (unsigned l = 0; l <= n; ++l) out += stirling2(n, l);
  return out;
}

BigInt merge_complexity(unsigned m, unsigned q) {
  if (q < 2) throw DomainError("merge bound q must be at least 2");
  BigInt out = 0;
  for (unsigned j = 2; j <= std::min(q, m); ++j) out += binomial(m, j);
  return out;
}

BigInt split_complexity(unsigned m, unsigned q) {
  if (q < 2) throw DomainError("split bound q must be at least 2");
  BigInt out = 0;
  for (unsigned l = 2; l <= q; ++l) out += stirling2(m, l);
  return out;
}

BigInt structure_split_complexity(const CoalitionStructure& cs, unsigned q) {
  BigInt out = 0;
  for (const Coalition& b : cs.blocks()) out += split_complexity(static_cast<unsigned>(b.size()), q);
  return out;
}

std::vector<ComplexityRow> complexity_table(unsigned n_max, std::span<const unsigned> q_list) {
  for (unsigned q : q_list) {
    if (q != kQEqualsN && q < 2) throw DomainError("q must be at least 2 (got " + std::to_string(q) + ")");
  }
  std::vector<ComplexityRow> out;
  for (unsigned n = 1; n <= n_max; ++n) {
    for (unsigned q_entry : q_list) {
      const unsigned q = q_entry == kQEqualsN ? std::max(n, 2U) : q_entry;
      out.push_back({n, q, merge_complexity(n, q), split_complexity(n, q)});
    }
  }
  return out;
}

}  // namespace coalition
