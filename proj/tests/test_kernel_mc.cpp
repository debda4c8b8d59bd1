#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sptsim/ensemble.hpp"
#include "sptsim/kernel_mc.hpp"

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

SublatticeState state_from_bits(int L, uint32_t d, uint32_t e) {
  SublatticeState st;
  st.L = L;
  st.d = BitVec::from_u32(d, L);
  st.e = BitVec::from_u32(e, L);
  return st;
}

}  // namespace

TEST_CASE("event table probabilities sum to one and match the listing") {
  auto p = params(8, 0.6065, 1.0, 0.7);
  EventTable t = EventTable::make(p);
  double c0 = 1.0 / (p.eta + 4.0 * p.gamma);
  CHECK(t.prob[int(EventKind::NoiseSyndrome)] == doctest::Approx(c0 * p.eta * p.f_e / 2));
  CHECK(t.prob[int(EventKind::NoiseSilent)] == doctest::Approx(c0 * p.eta * p.f_e / 2));
  for (auto k : {EventKind::CorrLeft, EventKind::CorrRight, EventKind::FlagDropLeft,
                 EventKind::FlagDropRight})
    CHECK(t.prob[int(k)] == doctest::Approx(c0 * p.gamma));
  CHECK(t.prob[int(EventKind::Unheralded)] == doctest::Approx(c0 * p.eta * (1 - p.f_e)));
  double sum = 0;
  for (int k = 0; k < kNumEvents; ++k) sum += t.prob[k];
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(t.dt_sweep == doctest::Approx(c0));
}

// Every event on every L=3 configuration, against the literal transcription
// of the jump operators in physical coordinates.
TEST_CASE("mc_event matches the hand-applied jump operators (enumeration oracle)") {
  const int L = 3;
  for (auto sem : {Semantics::AsPublished, Semantics::FullChannel}) {
    for (uint32_t d = 0; d < 8; ++d)
      for (uint32_t e = 0; e < 8; ++e)
        for (int m = 0; m < L; ++m)
          for (int k = 0; k < kNumEvents; ++k) {
            auto st = state_from_bits(L, d, e);
            mc_event(st, m, EventKind(k), sem);
            auto expect = oracle::hand_event(state_from_bits(L, d, e), m, EventKind(k), sem);
            CAPTURE(d);
            CAPTURE(e);
            CAPTURE(m);
            CAPTURE(k);
            CHECK(st.d == expect.d);
            CHECK(st.e == expect.e);
          }
  }
}

TEST_CASE("micro-op fast path is identical to mc_event") {
  for (int L : {3, 4, 5}) {
    for (auto sem : {Semantics::AsPublished, Semantics::FullChannel}) {
      auto p = params(L, 0.8, 1.0, 0.6, sem);
      EventTable t = EventTable::make(p);
      for (uint32_t d = 0; d < (1u << L); ++d)
        for (uint32_t e = 0; e < (1u << L); ++e)
          for (int m = 0; m < L; ++m)
            for (int k = 0; k < kNumEvents; ++k) {
              auto a = state_from_bits(L, d, e);
              auto b = state_from_bits(L, d, e);
              mc_event(a, m, EventKind(k), sem);
              mc_event_micro(b, m, EventKind(k), t);
              CHECK(a.d == b.d);
              CHECK(a.e == b.e);
            }
    }
  }
}

TEST_CASE("spec examples: pair creation, corr-left, flag drop") {
  // NoiseSyndrome at m=1 from vacuum: d 000 -> 110, e 000 -> 010.
  auto st = state_from_bits(3, 0b000, 0b000);
  mc_event(st, 1, EventKind::NoiseSyndrome, Semantics::AsPublished);
  CHECK(st.d.get(0));
  CHECK(st.d.get(1));
  CHECK(!st.d.get(2));
  CHECK(st.e.get(1));
  CHECK(st.e.popcount() == 1);

  // CorrLeft at m=1: d=010, e=010 -> d=100, e=000.
  st = state_from_bits(3, 0b010, 0b010);
  mc_event(st, 1, EventKind::CorrLeft, Semantics::AsPublished);
  CHECK(st.d.get(0));
  CHECK(st.d.popcount() == 1);
  CHECK(st.e.popcount() == 0);

  // FlagDropLeft at m=1: d=000, e=010 -> e=000.
  st = state_from_bits(3, 0b000, 0b010);
  mc_event(st, 1, EventKind::FlagDropLeft, Semantics::AsPublished);
  CHECK(st.d.popcount() == 0);
  CHECK(st.e.popcount() == 0);
}

TEST_CASE("eta=0 with no flags is frozen") {
  auto p = params(16, 0.0);
  EventTable t = EventTable::make(p);
  RngStream rng(3, 0);
  auto st = init_state(p, rng);
  for (int i = 0; i < 200; ++i) mc_sweep(st, t, rng);
  CHECK(st.d.popcount() == 0);
  CHECK(st.e.popcount() == 0);
  CHECK(st.time == doctest::Approx(200.0 / 4.0));
}

TEST_CASE("as-published, f_e=1: fully erased configurations are fixed points") {
  auto p = params(6, 1.2);
  EventTable t = EventTable::make(p);
  RngStream rng(7, 0);
  auto st = state_from_bits(6, 0b010101, 0b111111);
  auto d0 = st.d, e0 = st.e;
  for (int i = 0; i < 500; ++i) mc_sweep(st, t, rng);
  CHECK(st.d == d0);
  CHECK(st.e == e0);
}

TEST_CASE("full-channel, f_e=1: erasures never recede from the full set, defects mix") {
  auto p = params(6, 1.2, 1.0, 1.0, Semantics::FullChannel);
  EventTable t = EventTable::make(p);
  RngStream rng(7, 0);
  auto st = state_from_bits(6, 0b010101, 0b111111);
  auto d0 = st.d;
  bool moved = false;
  for (int i = 0; i < 500; ++i) {
    mc_sweep(st, t, rng);
    CHECK(st.e.popcount() == 6);
    if (st.d != d0) moved = true;
  }
  CHECK(moved);
}

TEST_CASE("global defect parity is conserved trajectory-wise") {
  for (auto sem : {Semantics::AsPublished, Semantics::FullChannel}) {
    for (auto init : {InitialState::Cluster, InitialState::RandomEvenParity}) {
      auto p = params(32, 0.9, 1.0, 0.55, sem);
      p.initial = init;
      EventTable t = EventTable::make(p);
      RngStream rng(11, 2);
      auto st = init_state(p, rng);
      int par = st.d.parity();
      for (int i = 0; i < 300; ++i) {
        mc_sweep(st, t, rng);
        REQUIRE(st.d.parity() == par);
      }
    }
  }
}

TEST_CASE("run_trajectory: eta=0 cluster start keeps all observables trivial") {
  auto p = params(16, 0.0);
  p.t_max_sweeps = 100;
  Schedule sched = Schedule::geometric(100, 10);
  ObservableSet obs = ObservableSet::defaults_for(p);
  RngStream rng(5, 0);
  auto samples = run_trajectory(p, rng, sched, obs);
  REQUIRE(samples.size() == sched.size());
  for (const auto& s : samples) {
    CHECK(s.n_e == 0.0);
    CHECK(s.n_d == 0.0);
    for (double w : s.omega) CHECK(w == 1.0);
  }
}

TEST_CASE("run_trajectory: all-erased start is absorbing for as-published f_e=1") {
  auto p = params(8, 0.7);
  p.initial = InitialState::AllErased;
  p.t_max_sweeps = 200;
  Schedule sched = Schedule::linear(200, 50);
  ObservableSet obs = ObservableSet::defaults_for(p);
  RngStream rng(5, 1);
  auto samples = run_trajectory(p, rng, sched, obs);
  for (const auto& s : samples) CHECK(s.n_e == 1.0);
}

TEST_CASE("trajectories are deterministic given (master_seed, stream)") {
  auto p = params(24, 0.8, 1.0, 0.7);
  p.t_max_sweeps = 150;
  Schedule sched = Schedule::geometric(150, 8);
  ObservableSet obs = ObservableSet::defaults_for(p);
  RngStream a(99, 3), b(99, 3);
  auto sa = run_trajectory(p, a, sched, obs);
  auto sb = run_trajectory(p, b, sched, obs);
  REQUIRE(sa.size() == sb.size());
  for (size_t i = 0; i < sa.size(); ++i) {
    CHECK(sa[i].n_e == sb[i].n_e);
    CHECK(sa[i].n_d == sb[i].n_d);
  }
}

TEST_CASE("steady-state n_e is monotone in eta (coupling sanity, 5-point grid)") {
  const double etas[5] = {0.1, 0.25, 0.4, 0.55, 0.7};
  double ne[5], err[5];
  for (int i = 0; i < 5; ++i) {
    auto p = params(64, etas[i]);
    p.t_max_sweeps = 600;
    p.n_traj = 96;
    p.master_seed = 1234;
    Schedule sched = Schedule::linear(600, 600);  // final sample only
    ObservableSet obs;
    obs.corr_e = false;
    EnsembleStats st = run_ensemble(p, sched, obs, 2);
    size_t last = st.n_samples() - 1;
    ne[i] = st.at(last, st.layout.idx_n_e);
    err[i] = st.err(last, st.layout.idx_n_e);
  }
  for (int i = 0; i + 1 < 5; ++i) {
    CAPTURE(i);
    CHECK(ne[i + 1] >= ne[i] - 3.0 * std::sqrt(err[i] * err[i] + err[i + 1] * err[i + 1]));
  }
}

TEST_CASE("time advances by 1/(eta+4*gamma) per sweep") {
  auto p = params(8, 0.6);
  EventTable t = EventTable::make(p);
  RngStream rng(1, 0);
  auto st = init_state(p, rng);
  mc_sweep(st, t, rng);
  CHECK(st.time == doctest::Approx(1.0 / 4.6));
}
