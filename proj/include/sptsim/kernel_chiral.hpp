#pragma once

#include <vector>

#include "sptsim/kernel_mc.hpp"

namespace sptsim {

// Open-boundary drift protocol. Defects live on an open chain with d[0] and
// d[L-1] sealed; events act on bonds m in [1, L-3] joining d[m] and d[m+1],
// carried by physical qubit j = 2m+3:
//   Noise     toggle d[m], d[m+1]               (pair create/annihilate/hop)
//   HopLeft   if d[m+1]: toggle d[m], d[m+1]    (defect moves m+1 -> m)
//   HopRight  if d[m]:   toggle d[m], d[m+1]    (defect moves m -> m+1)
// Hop rates are gamma*(1+mu)/2 toward the chain center and gamma*(1-mu)/2
// away from it, with the half determined by j <= L.
void chiral_event(SublatticeState& s, int bond, ChiralEvent ev);

// Same, addressed by the physical qubit index (odd j in [5, 2L-3]).
void chiral_event_at_qubit(SublatticeState& s, int qubit_j, ChiralEvent ev);

// One attempted event per active bond; advances time by 1/(eta+2*gamma).
void chiral_sweep(SublatticeState& s, const ChiralEventTable& table, RngStream& rng);

// Full chiral trajectory. Rejects periodic boundaries.
std::vector<Sample> run_chiral(const SimParams& params, RngStream& rng,
                               const Schedule& schedule, const ObservableSet& obs);

}  // namespace sptsim
