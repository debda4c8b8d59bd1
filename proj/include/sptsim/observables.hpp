#pragma once

#include <utility>
#include <vector>

#include "sptsim/state.hpp"

namespace sptsim {

// Spatially averaged string order over windows of length l on the ring:
// (1/L) sum_i prod_{k=i}^{i+l-1} (1 - 2 d[(k) mod L]). O(L) per l.
double string_order(const SublatticeState& s, int l);

// Same, sharing the prefix-parity pass across several window lengths.
std::vector<double> string_order_many(const SublatticeState& s, const std::vector<int>& ls);

// Density of defects with no flag on either adjacent physical site:
// (1/L) sum_m d[m] (1-e[m]) (1-e[m+1]).
double unheralded_density(const SublatticeState& s);

// (1/L) sum_i (1-e[i]) (1-e[(i+l) mod L]).
double erasure_correlator(const SublatticeState& s, int l);
std::vector<double> erasure_correlator_many(const SublatticeState& s, const std::vector<int>& ls);

// Minimum-total-weight perfect matching of positions on a ring of size L,
// distance = minimal ring separation. Total-weight ties are broken by
// lexicographic pair order within the non-crossing matchings (a non-crossing
// optimum always exists for the geodesic metric).
struct MatchingResult {
  long long total_weight = 0;
  std::vector<std::pair<int, int>> pairs;  // sorted by first element
  int max_separation = 0;
};
MatchingResult min_weight_matching(const std::vector<int>& positions, int ring_size);

// Largest pair separation in the minimum-weight matching of the defects;
// 0 when defect-free. Throws std::domain_error on odd defect count.
int zeta(const SublatticeState& s);

// Centered string orders for the chiral chain: entry k-1 holds
// Omega_{k,L-k} = prod_{i=k}^{L-k} (1 - 2 d[i]) for k = 1 .. floor(L/2).
std::vector<double> center_string_orders(const SublatticeState& s);

}  // namespace sptsim
