#pragma once

#include <vector>

#include "sptsim/params.hpp"

namespace sptsim {

struct MeanFieldState {
  double n_e = 0.0;
  double n_d = 0.0;
  double h = 0.0;
  double b = 0.0;
};

// The five-site ledger b is either slaved to its quasi-steady value given
// (h, n_e) or integrated as a fourth dynamical variable.
enum class BLedger { Adiabatic, Dynamical };

// Rate equations:
//   dn_e/dt = (eta f_e - 2 gamma n_e)(1 - n_e)
//   dn_d/dt = eta (1 - 2 n_d) - 2 gamma n_e (1 - n_e)
//   dh/dt   = 2 eta (1-f_e)(1+n_e)(1-n_e)^2 - 4 eta (1-f_e) h - 2 eta f_e h^2
// with, in Dynamical mode, the raw pair
//   dh/dt = 2 eta (1-f_e)(1-n_e)^2 - 2 eta (2-f_e) h + 4 gamma b
//   db/dt = eta f_e (h(1-h) - 2b) + eta (1-f_e)(n_e (1-n_e)^2 - 2b) - 2 gamma b
// whose adiabatic elimination of b reproduces the closed h equation.
MeanFieldState mf_rhs(const MeanFieldState& s, const SimParams& p,
                      BLedger ledger = BLedger::Adiabatic);

double mf_b_quasisteady(double h, double n_e, const SimParams& p);

// Piecewise steady state. Active branch (eta f_e < 2 gamma):
//   n_e = eta f_e / 2 gamma,  n_d = (1-f_e)/2 + eta f_e^2 / 4 gamma,
//   h   = the non-negative root of
//         f_e h^2 + 2(1-f_e) h - (1-f_e)(1+n_e)(1-n_e)^2 = 0,
// which reduces to (f_e - 1 + sqrt(1-f_e))/f_e as n_e -> 0.
// Absorbing branch: (1, 1/2, 0, 0).
MeanFieldState mf_steady(const SimParams& p);

struct MfPoint {
  double t = 0.0;
  MeanFieldState s;
};

// Fixed-step RK4. dt <= 0 selects the default 0.01 / max(eta, gamma).
// Throws NumericalError if any density leaves [0,1] beyond tolerance.
std::vector<MfPoint> mf_integrate(const SimParams& p, double t_max, double dt = 0.0,
                                  MeanFieldState initial = {}, BLedger ledger = BLedger::Adiabatic,
                                  int record_every = 1);

// Chiral-protocol closed forms. The edge density at mu = 1 is the continuous
// limit eta / (gamma + 2 eta) of the general expression.
struct MfChiral {
  double n_d_bulk = 0.0;
  double n_d_edge = 0.0;
  double xi = 0.0;
};
MfChiral mf_chiral(const SimParams& p);

}  // namespace sptsim
