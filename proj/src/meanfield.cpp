#include "sptsim/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sptsim {

MeanFieldState mf_rhs(const MeanFieldState& s, const SimParams& p, BLedger ledger) {
  const double eta = p.eta, gamma = p.gamma, fe = p.f_e;
  const double ne = s.n_e, nd = s.n_d, h = s.h, b = s.b;
  MeanFieldState d;
  d.n_e = (eta * fe - 2.0 * gamma * ne) * (1.0 - ne);
  d.n_d = eta * (1.0 - 2.0 * nd) - 2.0 * gamma * ne * (1.0 - ne);
  if (ledger == BLedger::Adiabatic) {
    d.h = 2.0 * eta * (1.0 - fe) * (1.0 + ne) * (1.0 - ne) * (1.0 - ne) -
          4.0 * eta * (1.0 - fe) * h - 2.0 * eta * fe * h * h;
    d.b = 0.0;
  } else {
    d.h = 2.0 * eta * (1.0 - fe) * (1.0 - ne) * (1.0 - ne) - 2.0 * eta * (2.0 - fe) * h +
          4.0 * gamma * b;
    d.b = eta * fe * (h * (1.0 - h) - 2.0 * b) +
          eta * (1.0 - fe) * (ne * (1.0 - ne) * (1.0 - ne) - 2.0 * b) - 2.0 * gamma * b;
  }
  return d;
}

double mf_b_quasisteady(double h, double n_e, const SimParams& p) {
  if (p.gamma <= 0) return 0.0;
  return p.eta * p.f_e / (2.0 * p.gamma) * h * (1.0 - h) +
         p.eta * (1.0 - p.f_e) / (2.0 * p.gamma) * n_e * (1.0 - n_e) * (1.0 - n_e);
}

MeanFieldState mf_steady(const SimParams& p) {
  const double eta = p.eta, gamma = p.gamma, fe = p.f_e;
  MeanFieldState s;
  if (eta * fe < 2.0 * gamma) {
    s.n_e = eta * fe / (2.0 * gamma);
    s.n_d = (1.0 - fe) / 2.0 + eta * fe * fe / (4.0 * gamma);
    const double src = (1.0 - fe) * (1.0 + s.n_e) * (1.0 - s.n_e) * (1.0 - s.n_e);
    if (fe == 0.0) {
      s.h = src / 2.0;
    } else {
      s.h = (-(1.0 - fe) + std::sqrt((1.0 - fe) * (1.0 - fe) + fe * src)) / fe;
    }
    s.b = mf_b_quasisteady(s.h, s.n_e, p);
  } else {
    s.n_e = 1.0;
    s.n_d = 0.5;
    s.h = 0.0;
    s.b = 0.0;
  }
  return s;
}

namespace {

void check_bounds(const MeanFieldState& s) {
  constexpr double tol = 1e-9;
  const double vals[4] = {s.n_e, s.n_d, s.h, s.b};
  for (double v : vals)
    if (!(v >= -tol && v <= 1.0 + tol))
      throw NumericalError("mean-field density left [0,1]; reduce dt");
}

MeanFieldState axpy(const MeanFieldState& s, const MeanFieldState& k, double a) {
  return {s.n_e + a * k.n_e, s.n_d + a * k.n_d, s.h + a * k.h, s.b + a * k.b};
}

}  // namespace

std::vector<MfPoint> mf_integrate(const SimParams& p, double t_max, double dt,
                                  MeanFieldState initial, BLedger ledger, int record_every) {
  if (dt <= 0.0) dt = 0.01 / std::max(p.eta, p.gamma);
  MeanFieldState s = initial;
  if (ledger == BLedger::Adiabatic) s.b = mf_b_quasisteady(s.h, s.n_e, p);

  std::vector<MfPoint> out;
  out.push_back({0.0, s});
  const long long n_steps = static_cast<long long>(std::ceil(t_max / dt));
  for (long long i = 1; i <= n_steps; ++i) {
    MeanFieldState k1 = mf_rhs(s, p, ledger);
    MeanFieldState k2 = mf_rhs(axpy(s, k1, dt / 2), p, ledger);
    MeanFieldState k3 = mf_rhs(axpy(s, k2, dt / 2), p, ledger);
    MeanFieldState k4 = mf_rhs(axpy(s, k3, dt), p, ledger);
    s.n_e += dt / 6.0 * (k1.n_e + 2 * k2.n_e + 2 * k3.n_e + k4.n_e);
    s.n_d += dt / 6.0 * (k1.n_d + 2 * k2.n_d + 2 * k3.n_d + k4.n_d);
    s.h += dt / 6.0 * (k1.h + 2 * k2.h + 2 * k3.h + k4.h);
    s.b += dt / 6.0 * (k1.b + 2 * k2.b + 2 * k3.b + k4.b);
    if (ledger == BLedger::Adiabatic) s.b = mf_b_quasisteady(s.h, s.n_e, p);
    check_bounds(s);
    if (i % record_every == 0 || i == n_steps) out.push_back({i * dt, s});
  }
  return out;
}

MfChiral mf_chiral(const SimParams& p) {
  if (p.gamma <= 0) throw ConfigError("mf_chiral requires gamma > 0");
  const double r = p.eta / p.gamma;
  const double mu = p.mu;
  MfChiral c;
  c.n_d_bulk = -r + std::sqrt(r * (1.0 + r));
  if (std::abs(mu - 1.0) < 1e-12) {
    c.n_d_edge = p.eta / (p.gamma + 2.0 * p.eta);
  } else {
    c.n_d_edge = (2.0 * p.eta + p.gamma * mu -
                  std::sqrt(4.0 * p.gamma * p.eta + 4.0 * p.eta * p.eta +
                            p.gamma * p.gamma * mu * mu)) /
                 (2.0 * p.gamma * (mu - 1.0));
  }
  const double root = std::sqrt(4.0 * r + mu * mu);
  c.xi = root - mu > 0 ? 1.0 / (2.0 * (root - mu)) : std::numeric_limits<double>::infinity();
  return c;
}

}  // namespace sptsim
