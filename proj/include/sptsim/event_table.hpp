#pragma once

#include <cstdint>

#include "sptsim/params.hpp"
#include "sptsim/rng.hpp"

namespace sptsim {

// Elementary update kinds of the periodic kernel, one per jump-operator
// family. Conditional no-ops (operator annihilation) live in the event
// application, not here.
enum class EventKind : uint8_t {
  NoiseSyndrome = 0,  // flag + defect pair at the chosen cell
  NoiseSilent,        // flag only
  CorrLeft,           // defect hops left across its left flag
  CorrRight,          // defect hops right across its right flag
  FlagDropLeft,       // isolated left flag removed
  FlagDropRight,      // isolated right flag removed
  Unheralded,         // defect pair, no flag
  Idle,
};
inline constexpr int kNumEvents = 8;

// Walker alias sampler over up to 8 categories: one u64 draw, top bits pick
// the slot, the rest compares against the slot threshold. Integer-only, so
// draws are platform-deterministic.
template <int kSlots, int kSlotBits>
struct AliasSampler {
  uint8_t alias[kSlots] = {};
  uint64_t thresh[kSlots] = {};  // scaled to 2^(64-kSlotBits)

  void build(const double* prob);

  int draw(RngStream& rng) const {
    uint64_t u = rng.next_u64();
    int slot = int(u >> (64 - kSlotBits));
    uint64_t frac = u & ((uint64_t{1} << (64 - kSlotBits)) - 1);
    return frac < thresh[slot] ? slot : alias[slot];
  }
};

// Per-event probabilities with c0 = 1/(eta + 4*gamma):
//   noise-with-syndrome    c0*eta*f_e/2
//   noise-without-syndrome c0*eta*f_e/2
//   each of 4 corrections  c0*gamma
//   unheralded             c0*eta*(1-f_e)
// which sum to 1; idle absorbs rounding only. rate[] holds the un-normalized
// continuous-time rate per cell (prob = c0 * rate), shared with the exact
// generator so both code paths use identical numbers.
// Branchless encoding of one event kind: conditions are 8-entry bit LUTs
// over (e[m], e[m+1], d[m]); lut_d gates the defect-pair toggle (at
// (m-1, m) for d_sel = 0, (m, m+1) for d_sel = 1), lut_e gates forcing the
// flag at m (e_sel = 0) or m+1 (e_sel = 1) to e_val.
struct MicroOp {
  uint8_t lut_d = 0;
  uint8_t lut_e = 0;
  uint8_t d_sel = 0;
  uint8_t e_sel = 0;
  uint8_t e_val = 0;
};

struct EventTable {
  double prob[kNumEvents] = {};
  double rate[kNumEvents] = {};
  AliasSampler<8, 3> sampler;
  MicroOp ops[kNumEvents] = {};
  double c0 = 0.0;
  double dt_sweep = 0.0;
  Semantics semantics = Semantics::AsPublished;

  static EventTable make(const SimParams& p);

  EventKind draw(RngStream& rng) const { return static_cast<EventKind>(sampler.draw(rng)); }
};

enum class ChiralEvent : uint8_t { Noise = 0, HopLeft, HopRight, Idle };

// Chiral kernel: events act on bonds m (between d[m] and d[m+1]), carried by
// the physical qubit j = 2m+3. Bonds touching the sealed boundary sites are
// inactive, leaving m in [1, L-3]. Hop rates depend on which half of the
// chain j falls in (j <= L is the left half). Per-sweep time 1/(eta+2*gamma),
// one attempted event per active bond per sweep.
struct ChiralEventTable {
  int L = 0;
  int n_bonds = 0;           // active bonds, m = 1 .. L-3
  double rate_noise = 0.0;   // eta
  double rate_toward = 0.0;  // gamma*(1+mu)/2
  double rate_away = 0.0;    // gamma*(1-mu)/2
  AliasSampler<4, 2> left;   // bonds in the left half
  AliasSampler<4, 2> right;
  double c0 = 0.0;
  double dt_sweep = 0.0;

  static ChiralEventTable make(const SimParams& p);

  static int qubit_of_bond(int m) { return 2 * m + 3; }
  bool left_half(int bond) const { return qubit_of_bond(bond) <= L; }

  // HopLeft rate at a bond: away-from-center in the left half, toward-center
  // in the right half; HopRight mirrored.
  double hop_left_rate(int bond) const { return left_half(bond) ? rate_away : rate_toward; }
  double hop_right_rate(int bond) const { return left_half(bond) ? rate_toward : rate_away; }

  ChiralEvent draw(RngStream& rng, int bond) const {
    return static_cast<ChiralEvent>((left_half(bond) ? left : right).draw(rng));
  }
};

}  // namespace sptsim
