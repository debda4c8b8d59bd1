#pragma once

#include <string>

#include "sptsim/bitvec.hpp"
#include "sptsim/params.hpp"
#include "sptsim/rng.hpp"

namespace sptsim {

// One decoupled sublattice in sublattice coordinates: d[m] = 1 marks a
// stabilizer defect at physical site 2m, e[m] = 1 an erasure flag at
// physical site 2m-1, so e[m] sits between d[m-1] and d[m].
//
// Periodic dynamics conserves the global defect parity; on the chiral open
// chain d[0] and d[L-1] are never touched.
struct SublatticeState {
  int L = 0;
  BitVec d;
  BitVec e;
  double time = 0.0;

  // "L=<n>;d=<hex>;e=<hex>;t=<float>", for debugging and golden tests.
  std::string to_snapshot() const;
  static SublatticeState from_snapshot(const std::string& s);
};

SublatticeState init_state(const SimParams& params, RngStream& rng);

// Product of (1 - 2 d[k]) over the l sites starting at i. Wraps on periodic
// boundaries; on the chiral chain the window must fit, i + l <= L.
int region_parity(const SublatticeState& s, int i, int l,
                  Boundary boundary = Boundary::Periodic);

}  // namespace sptsim
