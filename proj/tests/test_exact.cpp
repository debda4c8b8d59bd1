#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sptsim/ensemble.hpp"
#include "sptsim/exact_generator.hpp"

using namespace sptsim;

namespace {

SimParams params(int L, double eta, double gamma = 1.0, double fe = 1.0,
                 Semantics sem = Semantics::AsPublished) {
  SimParams p;
  p.L = L;
  p.eta = eta;
  p.gamma = gamma;
  p.f_e = fe;
  p.semantics = sem;
  p.n_traj = 1;
  return p;
}

}  // namespace

TEST_CASE("generator columns sum to zero with non-negative off-diagonals") {
  for (auto sem : {Semantics::AsPublished, Semantics::FullChannel}) {
    RateMatrix rm = build_generator(params(4, 0.8, 1.0, 0.6, sem), Sector::EvenParity);
    CHECK(rm.dim == 1 << 7);
    Eigen::MatrixXd M(rm.M);
    for (int c = 0; c < rm.dim; ++c) {
      double sum = 0;
      for (int r = 0; r < rm.dim; ++r) {
        if (r != c) CHECK(M(r, c) >= 0.0);
        sum += M(r, c);
      }
      CHECK(std::abs(sum) < 1e-12);
    }
  }
}

TEST_CASE("index maps are inverse bijections on the even sector") {
  RateMatrix rm = build_generator(params(4, 0.5), Sector::EvenParity);
  for (int i = 0; i < rm.dim; ++i) {
    uint32_t cfg = rm.config_of_index(i);
    CHECK(rm.in_sector(cfg));
    CHECK(rm.index_of_config(cfg) == i);
  }
}

TEST_CASE("eta=0: the flag-free defect-free column is identically zero") {
  RateMatrix rm = build_generator(params(4, 0.0, 1.0), Sector::EvenParity);
  int idx = rm.index_of_config(0);
  Eigen::VectorXd col = Eigen::MatrixXd(rm.M).col(idx);
  CHECK(col.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("as-published, gamma=0, f_e=1: fully erased columns are zero") {
  auto p = params(3, 1.0, 0.0, 1.0);
  RateMatrix rm = build_generator(p, Sector::EvenParity);
  Eigen::MatrixXd M(rm.M);
  for (uint32_t d : {0u, 3u, 5u, 6u}) {
    uint32_t cfg = d | (7u << 3);  // e = 111
    int idx = rm.index_of_config(cfg);
    CHECK(M.col(idx).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("one Euler step equals hand-enumerated single-event probabilities") {
  // From the cluster state, a step of length dt moves probability
  // rate * dt onto each configuration reachable by one event.
  auto p = params(4, 0.9, 1.0, 0.7);
  RateMatrix rm = build_generator(p, Sector::EvenParity);
  EventTable tbl = EventTable::make(p);
  Eigen::VectorXd p0 = delta_distribution(rm, 0);
  double dt = 1e-3;
  Eigen::VectorXd p1 = p0 + dt * (rm.M * p0);

  std::map<int, double> expect;
  double stay = 1.0;
  for (int m = 0; m < p.L; ++m)
    for (int k = 0; k < kNumEvents - 1; ++k) {
      if (tbl.rate[k] == 0) continue;
      auto st = rm.state_of_index(rm.index_of_config(0));
      mc_event(st, m, EventKind(k), p.semantics);
      uint32_t cfg = st.d.to_u32() | (st.e.to_u32() << p.L);
      if (cfg == 0) continue;
      expect[rm.index_of_config(cfg)] += tbl.rate[k] * dt;
      stay -= tbl.rate[k] * dt;
    }
  for (int i = 0; i < rm.dim; ++i) {
    double want = i == rm.index_of_config(0) ? stay : (expect.count(i) ? expect[i] : 0.0);
    CHECK(p1[i] == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("parity blocks never mix in the full-space generator") {
  RateMatrix rm = build_generator(params(3, 0.8, 1.0, 0.6), Sector::Full);
  Eigen::MatrixXd M(rm.M);
  for (int c = 0; c < rm.dim; ++c) {
    int pc = __builtin_popcount(rm.config_of_index(c) & 0x7) & 1;
    for (int r = 0; r < rm.dim; ++r) {
      if (M(r, c) == 0.0 || r == c) continue;
      int pr = __builtin_popcount(rm.config_of_index(r) & 0x7) & 1;
      CHECK(pr == pc);
    }
  }
}

TEST_CASE("spectrum: lambda_0 = 0, all real parts non-positive") {
  for (auto sem : {Semantics::AsPublished, Semantics::FullChannel}) {
    RateMatrix rm = build_generator(params(4, 0.7, 1.0, 0.9, sem), Sector::EvenParity);
    SpectrumResult sp = spectrum(rm, rm.dim, false);
    CHECK(std::abs(sp.values[0].real()) < 1e-10);
    for (int i = 0; i < sp.values.size(); ++i) CHECK(sp.values[i].real() <= 1e-10);
  }
}

TEST_CASE("full-channel generator has a unique zero mode (the all-erased mixture)") {
  auto p = params(4, 2.0, 0.5, 1.0, Semantics::FullChannel);
  RateMatrix rm = build_generator(p, Sector::EvenParity);
  auto kernel = steady_states(rm, 1e-9);
  REQUIRE(kernel.size() == 1);
  SpectrumResult sp = spectrum(rm, 2, false);
  CHECK(sp.values[1].real() < -1e-3);  // gap bounded away from zero

  // The steady state is uniform over even-parity defects with e = 1111.
  const double w = 1.0 / 8.0;
  for (int i = 0; i < rm.dim; ++i) {
    uint32_t cfg = rm.config_of_index(i);
    double want = (cfg >> 4) == 0xf ? w : 0.0;
    CHECK(kernel[0][i] == doctest::Approx(want).epsilon(1e-8));
  }
}

TEST_CASE("evolve_exact: t=0 identity, conservation, convergence to the absorbing mixture") {
  auto p = params(4, 2.5, 1.0, 1.0, Semantics::FullChannel);
  RateMatrix rm = build_generator(p, Sector::EvenParity);
  Eigen::VectorXd p0 = delta_distribution(rm, 0);
  CHECK((evolve_exact(rm, p0, 0.0) - p0).cwiseAbs().maxCoeff() == 0.0);

  Eigen::VectorXd pt = evolve_exact(rm, p0, 60.0);
  CHECK(std::abs(pt.sum() - 1.0) < 1e-10);
  for (int i = 0; i < rm.dim; ++i) {
    uint32_t cfg = rm.config_of_index(i);
    double want = (cfg >> 4) == 0xf ? 1.0 / 8.0 : 0.0;
    CHECK(pt[i] == doctest::Approx(want).epsilon(5e-6));
  }
}

TEST_CASE("eta=0 kernel contains the flag-free cluster configuration") {
  auto p = params(4, 0.0, 1.0);
  RateMatrix rm = build_generator(p, Sector::EvenParity);
  auto kernel = steady_states(rm, 1e-9);
  bool found = false;
  for (const auto& v : kernel)
    if (v[rm.index_of_config(0)] > 0.99) found = true;
  CHECK(found);
}

TEST_CASE("initial-state independence of projected observables (active phase)") {
  // Cluster vs the even-parity defect mixture with no flags: at late times
  // the observable marginals coincide (total variation < 1e-6 is checked on
  // the full distribution).
  auto p = params(4, 0.3, 1.0, 1.0, Semantics::AsPublished);
  RateMatrix rm = build_generator(p, Sector::EvenParity);
  Eigen::VectorXd pa = delta_distribution(rm, 0);
  Eigen::VectorXd pb = Eigen::VectorXd::Zero(rm.dim);
  for (uint32_t d : {0u, 3u, 5u, 6u, 9u, 10u, 12u, 15u}) pb[rm.index_of_config(d)] = 1.0 / 8.0;

  // Quasi-stationarity: compare after conditioning away the absorbed weight.
  double t = 250.0;
  Eigen::VectorXd qa = evolve_exact(rm, pa, t);
  Eigen::VectorXd qb = evolve_exact(rm, pb, t);
  auto strip_absorbed = [&](Eigen::VectorXd v) {
    for (int i = 0; i < rm.dim; ++i)
      if ((rm.config_of_index(i) >> 4) == 0xfu) v[i] = 0.0;
    return Eigen::VectorXd(v / v.sum());
  };
  qa = strip_absorbed(qa);
  qb = strip_absorbed(qb);
  CHECK(0.5 * (qa - qb).cwiseAbs().sum() < 1e-6);
}

TEST_CASE("kernel/MC equivalence: sweep distributions agree within 3 sigma") {
  // Random parameter draws, both semantics, single- and multi-sweep.
  RngStream pick(404, 0);
  for (int rep = 0; rep < 3; ++rep) {
    double eta = 0.2 + 1.2 * pick.next_double();
    double fe = 0.4 + 0.6 * pick.next_double();
    auto sem = rep % 2 == 0 ? Semantics::AsPublished : Semantics::FullChannel;
    auto p = params(3, eta, 1.0, fe, sem);
    RateMatrix rm = build_generator(p, Sector::EvenParity);
    Eigen::VectorXd p0 = delta_distribution(rm, 0);

    for (int n_sweeps : {1, 8}) {
      Eigen::VectorXd expect = evolve_discrete(rm, p0, n_sweeps);
      const int n_traj = 20000;
      EventTable tbl = EventTable::make(p);
      Eigen::VectorXd counts = Eigen::VectorXd::Zero(rm.dim);
      for (int traj = 0; traj < n_traj; ++traj) {
        RngStream rng(500 + rep, uint64_t(traj));
        SublatticeState st = init_state(p, rng);
        for (int s = 0; s < n_sweeps; ++s) mc_sweep(st, tbl, rng);
        counts[rm.index_of_config(st.d.to_u32() | (st.e.to_u32() << p.L))] += 1.0;
      }
      int outliers = 0;
      for (int i = 0; i < rm.dim; ++i) {
        double mean = n_traj * expect[i];
        double sd = std::sqrt(std::max(1.0, n_traj * expect[i] * (1.0 - expect[i])));
        if (std::abs(counts[i] - mean) > 3.0 * sd) ++outliers;
      }
      CHECK(outliers <= 1);  // 32 cells at 3 sigma
    }
  }
}

TEST_CASE("discrete sweep operator converges to the continuous evolution") {
  auto p = params(4, 0.8, 1.0, 0.9);
  RateMatrix rm = build_generator(p, Sector::EvenParity);
  Eigen::VectorXd p0 = delta_distribution(rm, 0);
  int n_sweeps = 12;
  Eigen::VectorXd pd = evolve_discrete(rm, p0, n_sweeps);
  Eigen::VectorXd pc = evolve_exact(rm, p0, n_sweeps * rm.dt_sweep);
  // O(dt) scheme offset; must sit well below typical sampling noise.
  CHECK((pd - pc).cwiseAbs().maxCoeff() < 2e-3);
}
