#pragma once

#include <string>
#include <vector>

#include "sptsim/fit.hpp"

namespace sptsim {

// One trajectory-averaged observable curve at fixed (eta, f_e, L).
struct SeriesCurve {
  double eta = 0.0;
  double f_e = 1.0;
  int L = 0;
  std::vector<double> t;
  std::vector<double> y;
  std::vector<double> yerr;
  std::string label;
};

using SeriesFamily = std::vector<SeriesCurve>;

// Running decay exponent delta(t) = log(O(t)/O(bt)) / log(b), with O(bt)
// obtained by interpolation linear in (log t, log O). Non-positive values
// are skipped. Returns (1/t, delta) pairs, in decreasing 1/t.
std::vector<std::pair<double, double>> running_exponent(const std::vector<double>& t,
                                                        const std::vector<double>& y,
                                                        double b = 10.0);

struct CriticalFit {
  double eta_c = 0.0;
  double eta_c_err = 0.0;
  double delta = 0.0;
  double delta_err = 0.0;
  size_t curve_index = 0;
  std::vector<double> slopes;  // late-time slope of delta vs 1/t per curve
};

// Picks the curve whose delta(t) is flattest against 1/t over the last
// temporal decade; the plateau (its extrapolation to 1/t -> 0) is the decay
// exponent. Requires slopes of both signs across the family (bracketing).
CriticalFit find_critical(const SeriesFamily& family, double b = 10.0);

// Collapse cost: curves are rescaled to y = log(O t^delta) against
// x = log t + nu_t log|eta - eta_c|; the cost is the mean squared difference
// between same-side curve pairs interpolated onto their overlap.
double collapse_cost(const SeriesFamily& family, double delta, double nu_t, double eta_c);

struct CollapseResult {
  double exponent = 0.0;  // nu_t or z
  double cost = 0.0;
};

// Golden-section search over nu_t in [lo, hi] (deterministic).
CollapseResult optimize_collapse(const SeriesFamily& family, double delta, double eta_c,
                                 double lo = 1.0, double hi = 2.5);

// Finite-size variant: critical curves over L, x = log t - z log L.
double fss_cost(const SeriesFamily& critical_curves, double delta, double z);
CollapseResult optimize_fss(const SeriesFamily& critical_curves, double delta,
                            double lo = 1.0, double hi = 2.5);

// Parametric bootstrap (Gaussian resampling of each point from its stderr)
// around either optimizer; returns the standard deviation over resamples.
double bootstrap_collapse_err(const SeriesFamily& family, double delta, double eta_c,
                              bool fss, int resamples = 200, uint64_t seed = 7777);

struct ScalingFit {
  double eta_c = 0.0, eta_c_err = 0.0;
  double delta = 0.0, delta_err = 0.0;
  double nu_t = 0.0, nu_t_err = 0.0;
  double z = 0.0, z_err = 0.0;
  double tau = 0.0, tau_err = 0.0;
  double xi = 0.0, xi_err = 0.0;
  double residual = 0.0;
  std::string window;
};

}  // namespace sptsim
