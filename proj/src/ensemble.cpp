#include "sptsim/ensemble.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "sptsim/kernel_chiral.hpp"

namespace sptsim {

SlotLayout SlotLayout::make(const SimParams& p, const ObservableSet& obs) {
  SlotLayout lay;
  lay.omega_ls = obs.omega_ls;
  auto add = [&](const std::string& n) {
    lay.names.push_back(n);
    return int(lay.names.size()) - 1;
  };
  lay.idx_n_e = add("n_e");
  lay.idx_n_d = add("n_d");
  if (p.boundary == Boundary::Periodic) {
    lay.idx_h = add("h");
    if (obs.zeta) lay.idx_zeta = add("zeta");
    lay.n_omega = int(obs.omega_ls.size());
    if (lay.n_omega > 0) {
      lay.omega_off = int(lay.names.size());
      for (int l : obs.omega_ls) add("omega[" + std::to_string(l) + "]");
      if (obs.corr_e) {
        lay.corr_off = int(lay.names.size());
        for (int l : obs.omega_ls) add("corr_e[" + std::to_string(l) + "]");
      }
      if (obs.identity_diff) {
        lay.diff_off = int(lay.names.size());
        for (int l : obs.omega_ls) add("omega_minus_corr[" + std::to_string(l) + "]");
      }
    }
  } else if (obs.chiral_profile) {
    lay.n_prof = p.L;
    lay.prof_off = int(lay.names.size());
    for (int i = 0; i < p.L; ++i) add("profile[" + std::to_string(i) + "]");
    lay.n_omc = p.L / 2;
    lay.omc_off = int(lay.names.size());
    for (int k = 1; k <= p.L / 2; ++k) add("omega_c[" + std::to_string(k) + "]");
  }
  return lay;
}

void SlotLayout::flatten(const Sample& s, double* row) const {
  row[idx_n_e] = s.n_e;
  row[idx_n_d] = s.n_d;
  if (idx_h >= 0) row[idx_h] = s.h;
  if (idx_zeta >= 0) row[idx_zeta] = s.zeta;
  if (omega_off >= 0)
    for (int i = 0; i < n_omega; ++i) row[omega_off + i] = s.omega[i];
  if (corr_off >= 0)
    for (int i = 0; i < n_omega; ++i) row[corr_off + i] = s.corr_e[i];
  if (diff_off >= 0)
    for (int i = 0; i < n_omega; ++i) row[diff_off + i] = s.diff[i];
  if (prof_off >= 0)
    for (int i = 0; i < n_prof; ++i) row[prof_off + i] = s.profile[i];
  if (omc_off >= 0)
    for (int i = 0; i < n_omc; ++i) row[omc_off + i] = s.omega_c[i];
}

int SlotLayout::find(const std::string& name) const {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return int(i);
  return -1;
}

EnsembleStats run_ensemble(const SimParams& params, const Schedule& schedule,
                           const ObservableSet& obs, int n_threads) {
  params.validate();
  auto t0 = std::chrono::steady_clock::now();

  EnsembleStats st;
  st.params = params;
  st.layout = SlotLayout::make(params, obs);
  st.n_traj = params.n_traj;

  const int n_slots = st.layout.n_slots();
  const size_t n_samples = schedule.size();
  const size_t cells = n_samples * size_t(n_slots);

  constexpr int kChunk = 32;
  const int n_chunks = (params.n_traj + kChunk - 1) / kChunk;
  std::vector<std::vector<double>> chunk_sum(n_chunks), chunk_sq(n_chunks);

  if (n_threads < 1) n_threads = 1;
  std::atomic<int> next_chunk{0};
  std::vector<double> sample_times(n_samples, 0.0);

  auto worker = [&]() {
    std::vector<double> row(n_slots);
    for (;;) {
      int c = next_chunk.fetch_add(1);
      if (c >= n_chunks) break;
      auto& sum = chunk_sum[c];
      auto& sq = chunk_sq[c];
      sum.assign(cells, 0.0);
      sq.assign(cells, 0.0);
      int lo = c * kChunk, hi = std::min(params.n_traj, lo + kChunk);
      for (int traj = lo; traj < hi; ++traj) {
        RngStream rng(params.master_seed, uint64_t(traj));
        std::vector<Sample> samples = params.boundary == Boundary::Periodic
                                          ? run_trajectory(params, rng, schedule, obs)
                                          : run_chiral(params, rng, schedule, obs);
        for (size_t sidx = 0; sidx < samples.size(); ++sidx) {
          st.layout.flatten(samples[sidx], row.data());
          double* s = sum.data() + sidx * n_slots;
          double* q = sq.data() + sidx * n_slots;
          for (int k = 0; k < n_slots; ++k) {
            s[k] += row[k];
            q[k] += row[k] * row[k];
          }
        }
        if (traj == 0) {
          for (size_t sidx = 0; sidx < samples.size(); ++sidx)
            sample_times[sidx] = samples[sidx].time;
        }
      }
    }
  };

  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Deterministic reduction in chunk order.
  std::vector<double> sum(cells, 0.0), sq(cells, 0.0);
  for (int c = 0; c < n_chunks; ++c)
    for (size_t i = 0; i < cells; ++i) {
      sum[i] += chunk_sum[c][i];
      sq[i] += chunk_sq[c][i];
    }

  const double n = double(params.n_traj);
  st.time = sample_times;
  st.mean.resize(cells);
  st.sem.resize(cells);
  for (size_t i = 0; i < cells; ++i) {
    double m = sum[i] / n;
    st.mean[i] = m;
    double var = n > 1 ? std::max(0.0, (sq[i] - n * m * m) / (n - 1)) : 0.0;
    st.sem[i] = std::sqrt(var / n);
  }
  st.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return st;
}

}  // namespace sptsim
