#include "sptsim/kernel_chiral.hpp"

#include <stdexcept>

namespace sptsim {

void chiral_event(SublatticeState& s, int bond, ChiralEvent ev) {
  switch (ev) {
    case ChiralEvent::Noise:
      s.d.flip(bond);
      s.d.flip(bond + 1);
      break;
    case ChiralEvent::HopLeft:
      if (s.d.get(bond + 1)) {
        s.d.flip(bond);
        s.d.flip(bond + 1);
      }
      break;
    case ChiralEvent::HopRight:
      if (s.d.get(bond)) {
        s.d.flip(bond);
        s.d.flip(bond + 1);
      }
      break;
    case ChiralEvent::Idle:
      break;
  }
}

void chiral_event_at_qubit(SublatticeState& s, int qubit_j, ChiralEvent ev) {
  if (qubit_j < 5 || qubit_j > 2 * s.L - 3 || qubit_j % 2 == 0)
    throw std::invalid_argument("chiral event qubit must be odd and in [5, 2L-3]");
  chiral_event(s, (qubit_j - 3) / 2, ev);
}

void chiral_sweep(SublatticeState& s, const ChiralEventTable& table, RngStream& rng) {
  for (int step = 0; step < table.n_bonds; ++step) {
    int bond = 1 + int(rng.next_index(uint32_t(table.n_bonds)));
    ChiralEvent ev = table.draw(rng, bond);
    chiral_event(s, bond, ev);
  }
  s.time += table.dt_sweep;
}

std::vector<Sample> run_chiral(const SimParams& params, RngStream& rng,
                               const Schedule& schedule, const ObservableSet& obs) {
  if (params.boundary != Boundary::ChiralOpen)
    throw ConfigError("run_chiral requires boundary=chiral-open");
  ChiralEventTable table = ChiralEventTable::make(params);
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
    chiral_sweep(st, table, rng);
    if (sweep == schedule.sweeps[next]) {
      out.push_back(measure(st, obs, params.boundary));
      ++next;
    }
  }
  return out;
}

}  // namespace sptsim
