#include "sptsim/kernel_mc.hpp"

namespace sptsim {

ObservableSet ObservableSet::defaults_for(const SimParams& p) {
  ObservableSet o;
  if (p.boundary == Boundary::Periodic) {
    for (int l = 1; l <= p.L / 2; l *= 2) o.omega_ls.push_back(l);
    if (o.omega_ls.empty() || o.omega_ls.back() != p.L / 2) o.omega_ls.push_back(p.L / 2);
    o.omega_ls.push_back(p.L);
  } else {
    o.corr_e = false;
    o.chiral_profile = true;
  }
  return o;
}

Sample measure(const SublatticeState& s, const ObservableSet& obs, Boundary boundary) {
  Sample out;
  out.time = s.time;
  out.n_e = double(s.e.popcount()) / s.L;
  out.n_d = double(s.d.popcount()) / s.L;
  if (boundary == Boundary::Periodic) {
    out.h = unheralded_density(s);
    if (!obs.omega_ls.empty()) out.omega = string_order_many(s, obs.omega_ls);
    if (obs.corr_e) out.corr_e = erasure_correlator_many(s, obs.omega_ls);
    if (obs.identity_diff) {
      out.diff.resize(out.omega.size());
      for (size_t i = 0; i < out.omega.size(); ++i) out.diff[i] = out.omega[i] - out.corr_e[i];
    }
    if (obs.zeta) out.zeta = zeta(s);
  } else if (obs.chiral_profile) {
    out.profile.resize(s.L);
    for (int i = 0; i < s.L; ++i) out.profile[i] = s.d.get(i) ? 1.0 : 0.0;
    out.omega_c = center_string_orders(s);
  }
  return out;
}

void mc_event(SublatticeState& s, int m, EventKind ev, Semantics sem) {
  const int L = s.L;
  const int mp1 = m + 1 == L ? 0 : m + 1;
  const int mm1 = m == 0 ? L - 1 : m - 1;
  switch (ev) {
    case EventKind::NoiseSyndrome:
      if (!s.e.get(m)) {
        s.e.set(m);
        s.d.flip(mm1);
        s.d.flip(m);
      } else if (sem == Semantics::FullChannel) {
        s.d.flip(mm1);
        s.d.flip(m);
      }
      break;
    case EventKind::NoiseSilent:
      if (!s.e.get(m)) s.e.set(m);
      break;
    case EventKind::CorrLeft:
      if (s.e.get(m) && s.d.get(m) && !s.e.get(mp1)) {
        s.e.clear(m);
        s.d.flip(mm1);
        s.d.flip(m);
      }
      break;
    case EventKind::CorrRight:
      if (s.e.get(mp1) && s.d.get(m) && !s.e.get(m)) {
        s.e.clear(mp1);
        s.d.flip(m);
        s.d.flip(mp1);
      }
      break;
    case EventKind::FlagDropLeft:
      if (s.e.get(m) && !s.d.get(m) && !s.e.get(mp1)) s.e.clear(m);
      break;
    case EventKind::FlagDropRight:
      if (s.e.get(mp1) && !s.d.get(m) && !s.e.get(m)) s.e.clear(mp1);
      break;
    case EventKind::Unheralded:
      s.d.flip(mm1);
      s.d.flip(m);
      break;
    case EventKind::Idle:
      break;
  }
}

namespace {

// Branchless twin of mc_event, driven by the MicroOp LUTs; mc_sweep spends
// nearly all its time here. Equivalence with mc_event is enforced by an
// exhaustive test over configurations, events and semantics.
inline void apply_micro(uint64_t* dw, uint64_t* ew, int L, int m, const MicroOp& op) {
  const int mp1 = m + 1 == L ? 0 : m + 1;
  const int mm1 = m == 0 ? L - 1 : m - 1;
  const uint64_t em = (ew[m >> 6] >> (m & 63)) & 1;
  const uint64_t em1 = (ew[mp1 >> 6] >> (mp1 & 63)) & 1;
  const uint64_t dm = (dw[m >> 6] >> (m & 63)) & 1;
  const unsigned idx = unsigned(em | (em1 << 1) | (dm << 2));
  const uint64_t cd = (op.lut_d >> idx) & 1;
  const uint64_t ce = (op.lut_e >> idx) & 1;
  const int b1 = op.d_sel ? m : mm1;
  const int b2 = op.d_sel ? mp1 : m;
  dw[b1 >> 6] ^= cd << (b1 & 63);
  dw[b2 >> 6] ^= cd << (b2 & 63);
  const int be = op.e_sel ? mp1 : m;
  const uint64_t cur = op.e_sel ? em1 : em;
  ew[be >> 6] ^= (ce & (cur ^ uint64_t(op.e_val))) << (be & 63);
}

}  // namespace

void mc_event_micro(SublatticeState& s, int m, EventKind ev, const EventTable& table) {
  apply_micro(s.d.word_data(), s.e.word_data(), s.L, m, table.ops[int(ev)]);
}

void mc_sweep(SublatticeState& s, const EventTable& table, RngStream& rng) {
  const int L = s.L;
  uint64_t* dw = s.d.word_data();
  uint64_t* ew = s.e.word_data();
  for (int step = 0; step < L; ++step) {
    int m = int(rng.next_index(uint32_t(L)));
    int k = table.sampler.draw(rng);
    apply_micro(dw, ew, L, m, table.ops[k]);
  }
  s.time += table.dt_sweep;
}

std::vector<Sample> run_trajectory(const SimParams& params, RngStream& rng,
                                   const Schedule& schedule, const ObservableSet& obs) {
  if (params.boundary != Boundary::Periodic)
    throw ConfigError("run_trajectory is the periodic kernel; use run_chiral");
  EventTable table = EventTable::make(params);
  SublatticeState st = init_state(params, rng);

  std::vector<Sample> out;
  out.reserve(schedule.size());
  size_t next = 0;
  if (next < schedule.sweeps.size() && schedule.sweeps[next] == 0) {
    out.push_back(measure(st, obs, params.boundary));
    ++next;
  }
  for (int64_t sweep = 1; sweep <= params.t_max_sweeps && next < schedule.sweeps.size();
       ++sweep) {
    mc_sweep(st, table, rng);
    if (sweep == schedule.sweeps[next]) {
      out.push_back(measure(st, obs, params.boundary));
      ++next;
    }
  }
  return out;
}

}  // namespace sptsim
