#pragma once

#include <string>
#include <vector>

#include "sptsim/kernel_mc.hpp"

namespace sptsim {

// Flat slot naming for the per-sample observable vector; fixed scalar slots
// first, then the configured grids.
struct SlotLayout {
  std::vector<std::string> names;
  int idx_n_e = -1, idx_n_d = -1, idx_h = -1, idx_zeta = -1;
  int omega_off = -1, corr_off = -1, diff_off = -1, prof_off = -1, omc_off = -1;
  std::vector<int> omega_ls;
  int n_omega = 0, n_prof = 0, n_omc = 0;

  static SlotLayout make(const SimParams& p, const ObservableSet& obs);
  int n_slots() const { return int(names.size()); }
  void flatten(const Sample& s, double* row) const;
  int find(const std::string& name) const;  // -1 if absent
};

// Trajectory-averaged means with standard errors, one row per sampled sweep.
struct EnsembleStats {
  SimParams params;
  SlotLayout layout;
  std::vector<double> time;
  std::vector<double> mean;  // [sample * n_slots + slot]
  std::vector<double> sem;
  int n_traj = 0;
  double wall_seconds = 0.0;

  double at(size_t sample, int slot) const { return mean[sample * layout.n_slots() + slot]; }
  double err(size_t sample, int slot) const { return sem[sample * layout.n_slots() + slot]; }
  size_t n_samples() const { return time.size(); }
};

// Runs params.n_traj independent trajectories (streams seeded by trajectory
// index) across n_threads workers. Trajectories are processed in fixed
// chunks and partial sums reduced in chunk order, so the result is
// bit-identical for any worker count.
EnsembleStats run_ensemble(const SimParams& params, const Schedule& schedule,
                           const ObservableSet& obs, int n_threads);

}  // namespace sptsim
