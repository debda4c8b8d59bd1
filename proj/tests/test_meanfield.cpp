#include <doctest.h>

#include <cmath>

#include "sptsim/meanfield.hpp"

using namespace sptsim;

namespace {

SimParams params(double eta, double gamma = 1.0, double fe = 1.0) {
  SimParams p;
  p.L = 8;
  p.eta = eta;
  p.gamma = gamma;
  p.f_e = fe;
  p.n_traj = 1;
  return p;
}

}  // namespace

TEST_CASE("mf_rhs vanishes at the erasure fixed point") {
  auto p = params(0.8, 1.0, 0.9);
  MeanFieldState s;
  s.n_e = p.eta * p.f_e / (2 * p.gamma);
  auto d = mf_rhs(s, p);
  CHECK(d.n_e == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("mf_rhs at the origin reproduces the f_e=1 equations") {
  auto p = params(1.0, 1.0, 1.0);
  MeanFieldState s;  // all zero
  auto d = mf_rhs(s, p);
  CHECK(d.n_e == doctest::Approx(1.0));
  CHECK(d.n_d == doctest::Approx(1.0));
}

TEST_CASE("unheralded fixed point at small eta matches the closed form") {
  for (double fe : {0.5, 0.8, 0.95, 0.99}) {
    auto p = params(1e-6, 1.0, fe);
    MeanFieldState s = mf_steady(p);
    double expect = (fe - 1.0 + std::sqrt(1.0 - fe)) / fe;
    CHECK(s.h == doctest::Approx(expect).epsilon(1e-4));
    auto d = mf_rhs(s, p);
    CHECK(std::abs(d.h) < 1e-12);
  }
}

TEST_CASE("mf_steady reproduces the published steady states") {
  auto s = mf_steady(params(1.0, 1.0, 1.0));
  CHECK(s.n_e == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(s.n_d == doctest::Approx(0.25).epsilon(1e-14));

  s = mf_steady(params(3.0, 1.0, 1.0));  // absorbing branch
  CHECK(s.n_e == 1.0);
  CHECK(s.n_d == 0.5);
  CHECK(s.h == 0.0);

  s = mf_steady(params(1.0, 1.0, 0.5));
  CHECK(s.n_e == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(s.n_d == doctest::Approx(0.3125).epsilon(1e-14));
}

TEST_CASE("active fixed points satisfy mf_rhs = 0 to 1e-12") {
  for (double eta : {0.2, 0.7, 1.4, 1.9})
    for (double fe : {0.3, 0.6, 0.9, 1.0}) {
      auto p = params(eta, 1.0, fe);
      if (eta * fe >= 2.0) continue;
      MeanFieldState s = mf_steady(p);
      auto d = mf_rhs(s, p);
      CHECK(std::abs(d.n_e) < 1e-12);
      CHECK(std::abs(d.n_d) < 1e-12);
      CHECK(std::abs(d.h) < 1e-12);
    }
}

TEST_CASE("mean-field critical line is eta*f_e = 2*gamma and steady state is continuous") {
  for (double fe : {0.4, 1.0}) {
    double eta_c = 2.0 / fe;
    auto below = mf_steady(params(eta_c * (1 - 1e-9), 1.0, fe));
    auto above = mf_steady(params(eta_c * (1 + 1e-9), 1.0, fe));
    CHECK(std::abs(below.n_e - above.n_e) < 1e-6);
    CHECK(std::abs(below.n_d - above.n_d) < 1e-6);
  }
}

TEST_CASE("integration converges to mf_steady on an (eta, f_e) grid") {
  for (double eta : {0.3, 0.9, 1.5, 2.5, 3.5})
    for (double fe : {0.25, 0.5, 0.75, 1.0}) {
      auto p = params(eta, 1.0, fe);
      MeanFieldState init;
      if (eta * fe >= 2.0) init.n_e = 1.0;  // absorbing branch is its own attractor
      auto tr = mf_integrate(p, 400.0, 0.0, init, BLedger::Adiabatic, 1 << 30);
      MeanFieldState s = mf_steady(p);
      const MeanFieldState& f = tr.back().s;
      CAPTURE(eta);
      CAPTURE(fe);
      CHECK(std::abs(f.n_e - s.n_e) < 1e-6);
      CHECK(std::abs(f.n_d - s.n_d) < 1e-6);
      CHECK(std::abs(f.h - s.h) < 1e-6);
    }
}

TEST_CASE("absorbing start stays absorbed below threshold") {
  auto p = params(1.0, 1.0, 1.0);
  MeanFieldState init;
  init.n_e = 1.0;
  init.n_d = 0.5;
  auto tr = mf_integrate(p, 50.0, 0.0, init, BLedger::Adiabatic, 1 << 30);
  CHECK(tr.back().s.n_e == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("dynamical b ledger relaxes to the adiabatic fixed point") {
  auto p = params(0.05, 1.0, 0.9);
  auto tr = mf_integrate(p, 2000.0, 0.0, {}, BLedger::Dynamical, 1 << 30);
  MeanFieldState s = mf_steady(p);
  // The adiabatic elimination drops O(eta/gamma) corrections, so agreement
  // is to that order, not machine precision.
  CHECK(tr.back().s.h == doctest::Approx(s.h).epsilon(0.05));
  CHECK(tr.back().s.b == doctest::Approx(s.b).epsilon(0.15));
}

TEST_CASE("mf_chiral closed forms") {
  SimParams p;
  p.L = 8;
  p.eta = 0.1;
  p.gamma = 1.0;
  p.boundary = Boundary::ChiralOpen;

  p.mu = 0.0;
  auto c = mf_chiral(p);
  CHECK(c.n_d_bulk == doctest::Approx(-0.1 + std::sqrt(0.1 * 1.1)).epsilon(1e-14));
  CHECK(c.xi == doctest::Approx(1.0 / (2.0 * std::sqrt(0.4))).epsilon(1e-14));
  // mu = 0: no drift, edge density equals the bulk value.
  CHECK(c.n_d_edge == doctest::Approx(c.n_d_bulk).epsilon(1e-12));

  p.mu = 1.0;
  c = mf_chiral(p);
  CHECK(c.n_d_edge == doctest::Approx(0.1 / 1.2).epsilon(1e-12));
  // Continuity of the mu -> 1 limit.
  p.mu = 1.0 - 1e-8;
  auto c2 = mf_chiral(p);
  CHECK(c2.n_d_edge == doctest::Approx(c.n_d_edge).epsilon(1e-5));

  // Noiseless limit: defect-free bulk, diverging length scale for mu > 0.
  p.eta = 0.0;
  p.mu = 0.5;
  c = mf_chiral(p);
  CHECK(c.n_d_bulk == 0.0);
  CHECK(std::isinf(c.xi));
}
