#include "sptsim/event_table.hpp"

#include <cmath>

namespace sptsim {

template <int kSlots, int kSlotBits>
void AliasSampler<kSlots, kSlotBits>::build(const double* prob) {
  static_assert((1 << kSlotBits) == kSlots);
  const double unit = std::ldexp(1.0, 64 - kSlotBits);  // 2^(64-kSlotBits)
  double q[kSlots];
  int small[kSlots], large[kSlots];
  int ns = 0, nl = 0;
  for (int i = 0; i < kSlots; ++i) {
    q[i] = prob[i] * kSlots;
    (q[i] < 1.0 ? small[ns++] : large[nl++]) = i;
  }
  for (int i = 0; i < kSlots; ++i) {
    alias[i] = uint8_t(i);
    thresh[i] = ~uint64_t{0} >> kSlotBits;
  }
  while (ns > 0 && nl > 0) {
    int s = small[--ns], l = large[--nl];
    double t = q[s];
    alias[s] = uint8_t(l);
    thresh[s] = t >= 1.0 ? (~uint64_t{0} >> kSlotBits) : uint64_t(t * unit);
    q[l] = (q[l] + t) - 1.0;
    (q[l] < 1.0 ? small[ns++] : large[nl++]) = l;
  }
}

template struct AliasSampler<8, 3>;
template struct AliasSampler<4, 2>;

EventTable EventTable::make(const SimParams& p) {
  p.validate();
  if (p.boundary != Boundary::Periodic)
    throw ConfigError("EventTable is for the periodic kernel; use ChiralEventTable");
  EventTable t;
  double denom = p.eta + 4.0 * p.gamma;
  if (denom <= 0) throw ConfigError("eta + 4*gamma must be > 0");
  t.c0 = 1.0 / denom;
  t.dt_sweep = t.c0;
  t.semantics = p.semantics;

  t.rate[int(EventKind::NoiseSyndrome)] = p.eta * p.f_e / 2.0;
  t.rate[int(EventKind::NoiseSilent)] = p.eta * p.f_e / 2.0;
  t.rate[int(EventKind::CorrLeft)] = p.gamma;
  t.rate[int(EventKind::CorrRight)] = p.gamma;
  t.rate[int(EventKind::FlagDropLeft)] = p.gamma;
  t.rate[int(EventKind::FlagDropRight)] = p.gamma;
  t.rate[int(EventKind::Unheralded)] = p.eta * (1.0 - p.f_e);
  t.rate[int(EventKind::Idle)] = 0.0;

  double sum = 0.0;
  for (int k = 0; k < kNumEvents; ++k) {
    t.prob[k] = t.c0 * t.rate[k];
    if (t.prob[k] < 0.0 || t.prob[k] > 1.0) throw NumericalError("event probability out of [0,1]");
    sum += t.prob[k];
  }
  if (std::abs(sum - 1.0) > 1e-12) throw NumericalError("event probabilities do not sum to 1");
  t.prob[int(EventKind::Idle)] = sum < 1.0 ? 1.0 - sum : 0.0;

  t.sampler.build(t.prob);

  // Condition LUT index: em | em1 << 1 | dm << 2.
  auto lut = [](auto pred) {
    uint8_t m = 0;
    for (int i = 0; i < 8; ++i)
      if (pred(i & 1, (i >> 1) & 1, (i >> 2) & 1)) m |= uint8_t(1 << i);
    return m;
  };
  const uint8_t always = 0xff;
  MicroOp* o = t.ops;
  o[int(EventKind::NoiseSyndrome)] = {
      p.semantics == Semantics::FullChannel ? always
                                            : lut([](int em, int, int) { return !em; }),
      lut([](int em, int, int) { return !em; }), 0, 0, 1};
  o[int(EventKind::NoiseSilent)] = {0, lut([](int em, int, int) { return !em; }), 0, 0, 1};
  o[int(EventKind::CorrLeft)] = {lut([](int em, int em1, int dm) { return em && dm && !em1; }),
                                 lut([](int em, int em1, int dm) { return em && dm && !em1; }),
                                 0, 0, 0};
  o[int(EventKind::CorrRight)] = {lut([](int em, int em1, int dm) { return em1 && dm && !em; }),
                                  lut([](int em, int em1, int dm) { return em1 && dm && !em; }),
                                  1, 1, 0};
  o[int(EventKind::FlagDropLeft)] = {
      0, lut([](int em, int em1, int dm) { return em && !dm && !em1; }), 0, 0, 0};
  o[int(EventKind::FlagDropRight)] = {
      0, lut([](int em, int em1, int dm) { return em1 && !dm && !em; }), 0, 1, 0};
  o[int(EventKind::Unheralded)] = {always, 0, 0, 0, 0};
  o[int(EventKind::Idle)] = {0, 0, 0, 0, 0};
  return t;
}

ChiralEventTable ChiralEventTable::make(const SimParams& p) {
  p.validate();
  if (p.boundary != Boundary::ChiralOpen)
    throw ConfigError("ChiralEventTable requires boundary=chiral-open");
  ChiralEventTable t;
  t.L = p.L;
  t.n_bonds = p.L - 3;
  double denom = p.eta + 2.0 * p.gamma;
  if (denom <= 0) throw ConfigError("eta + 2*gamma must be > 0");
  t.c0 = 1.0 / denom;
  t.dt_sweep = t.c0;
  t.rate_noise = p.eta;
  t.rate_toward = p.gamma * (1.0 + p.mu) / 2.0;
  t.rate_away = p.gamma * (1.0 - p.mu) / 2.0;

  double pl[4] = {t.c0 * t.rate_noise, t.c0 * t.rate_away, t.c0 * t.rate_toward, 0.0};
  double pr[4] = {t.c0 * t.rate_noise, t.c0 * t.rate_toward, t.c0 * t.rate_away, 0.0};
  pl[3] = 1.0 - (pl[0] + pl[1] + pl[2]);
  pr[3] = 1.0 - (pr[0] + pr[1] + pr[2]);
  if (pl[3] < -1e-12 || pr[3] < -1e-12)
    throw NumericalError("chiral event probabilities exceed 1");
  pl[3] = pl[3] < 0 ? 0 : pl[3];
  pr[3] = pr[3] < 0 ? 0 : pr[3];
  t.left.build(pl);
  t.right.build(pr);
  return t;
}

}  // namespace sptsim
