#pragma once

#include <vector>

#include "sptsim/event_table.hpp"
#include "sptsim/observables.hpp"
#include "sptsim/schedule.hpp"
#include "sptsim/state.hpp"

namespace sptsim {

// Which quantities a trajectory records at each scheduled sweep.
struct ObservableSet {
  std::vector<int> omega_ls;     // window lengths for the string order
  bool corr_e = true;            // erasure two-point function on omega_ls
  bool identity_diff = false;    // per-trajectory omega(l) - corr_e(l)
  bool zeta = false;             // max matched-pair separation (periodic only)
  bool chiral_profile = false;   // per-site defect density + centered strings

  // omega_ls defaults to {1, 2, 4, ..., L/2, L} on periodic boundaries;
  // the chiral protocol records the profile and centered strings instead.
  static ObservableSet defaults_for(const SimParams& p);
};

// One measurement record. Vectors follow the ObservableSet grids.
struct Sample {
  double time = 0.0;
  double n_e = 0.0;
  double n_d = 0.0;
  double h = 0.0;
  double zeta = 0.0;
  std::vector<double> omega;
  std::vector<double> corr_e;
  std::vector<double> diff;     // omega - corr_e per window length
  std::vector<double> profile;  // chiral: per-site defect occupation
  std::vector<double> omega_c;  // chiral: centered strings, k = 1..L/2
};

Sample measure(const SublatticeState& s, const ObservableSet& obs, Boundary boundary);

// Applies one elementary update at cell m. Conditions encode the operator
// annihilation of Eqs. (1)-(3) in sublattice coordinates (e[m] lies between
// d[m-1] and d[m]):
//   NoiseSyndrome  e[m]=0: set e[m], toggle d[m-1], d[m].
//                  e[m]=1: no-op as published; FullChannel toggles anyway.
//   NoiseSilent    e[m]=0: set e[m]; else no-op.
//   CorrLeft       e[m]=1, d[m]=1, e[m+1]=0: clear e[m], toggle d[m-1], d[m].
//   CorrRight      e[m+1]=1, d[m]=1, e[m]=0: clear e[m+1], toggle d[m], d[m+1].
//   FlagDropLeft   e[m]=1, d[m]=0, e[m+1]=0: clear e[m].
//   FlagDropRight  e[m+1]=1, d[m]=0, e[m]=0: clear e[m+1].
//   Unheralded     toggle d[m-1], d[m].
void mc_event(SublatticeState& s, int m, EventKind ev, Semantics sem);

// L random-sequential elementary events; advances time by 1/(eta+4*gamma).
void mc_sweep(SublatticeState& s, const EventTable& table, RngStream& rng);

// The LUT-driven fast path used inside mc_sweep, exposed for the
// equivalence test against mc_event.
void mc_event_micro(SublatticeState& s, int m, EventKind ev, const EventTable& table);

// Full trajectory on periodic boundaries, sampling at the scheduled sweeps.
std::vector<Sample> run_trajectory(const SimParams& params, RngStream& rng,
                                   const Schedule& schedule, const ObservableSet& obs);

}  // namespace sptsim
