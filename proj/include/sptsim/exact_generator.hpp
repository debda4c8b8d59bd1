#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

#include "sptsim/params.hpp"
#include "sptsim/state.hpp"

namespace sptsim {

enum class Sector { EvenParity, Full };

// Classical Markov generator over the configuration space of one sublattice.
// Columns are source configurations; every column sums to zero, off-diagonal
// entries are the continuous-time transition rates, identical by code path
// to the Monte Carlo event tables.
//
// Configuration encoding: defect bits low, erasure bits high
// (cfg = d | e << L); the chiral chain has no erasure bits (cfg = d).
// EvenParity enumerates configurations with even defect popcount; the low
// L-1 defect bits index the sector, bit L-1 is the parity completion.
struct RateMatrix {
  int L = 0;
  Boundary boundary = Boundary::Periodic;
  Semantics semantics = Semantics::AsPublished;
  Sector sector = Sector::EvenParity;
  int dim = 0;
  int steps_per_sweep = 0;  // MC elementary events per sweep
  double dt_sweep = 0.0;    // MC time increment per sweep
  Eigen::SparseMatrix<double> M;

  uint32_t config_of_index(int idx) const;
  int index_of_config(uint32_t cfg) const;
  bool in_sector(uint32_t cfg) const;

  SublatticeState state_of_index(int idx) const;
};

// L <= 8 on periodic boundaries (dimension 2^(2L-1) in the even sector).
RateMatrix build_generator(const SimParams& p, Sector sector);

struct SpectrumResult {
  Eigen::VectorXcd values;  // sorted by descending real part
  Eigen::MatrixXcd right;   // columns follow values (empty if not requested)
  Eigen::MatrixXcd left;    // from the transposed solve, same ordering rule
};

// Dense eigendecomposition (LAPACK dgeev); dim <= 4096.
SpectrumResult spectrum(const RateMatrix& rm, int k, bool eigenvectors = true,
                        bool left = false);

// Integrates dp/dt = M p with fixed-step RK4 (dt = 0.05 / max exit rate).
// Verifies the result is a probability vector (entries >= -1e-12, sum within
// 1e-10 of 1).
Eigen::VectorXd evolve_exact(const RateMatrix& rm, const Eigen::VectorXd& p0, double t);

// Exact distribution of the discrete-time Monte Carlo chain after n sweeps:
// one sweep is (I + dt/steps * M)^steps. Useful for separating sampling
// noise from the O(dt) time-discretization offset of the sweep scheme.
Eigen::VectorXd evolve_discrete(const RateMatrix& rm, const Eigen::VectorXd& p0,
                                int64_t n_sweeps);

// Basis of the numerical kernel (|lambda| < tol), each vector normalized to
// a probability distribution where its sign structure permits.
std::vector<Eigen::VectorXd> steady_states(const RateMatrix& rm, double tol = 1e-9);

// Delta distribution concentrated on one configuration.
Eigen::VectorXd delta_distribution(const RateMatrix& rm, uint32_t cfg);

}  // namespace sptsim
