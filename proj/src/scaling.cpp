#include "sptsim/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sptsim/rng.hpp"

namespace sptsim {

namespace {

// Linear interpolation of (xs, ys) at x; xs strictly increasing.
double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  if (it == xs.begin()) return ys.front();
  if (it == xs.end()) return ys.back();
  size_t hi = it - xs.begin(), lo = hi - 1;
  double f = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + f * (ys[hi] - ys[lo]);
}

}  // namespace

std::vector<std::pair<double, double>> running_exponent(const std::vector<double>& t,
                                                        const std::vector<double>& y,
                                                        double b) {
  if (t.size() != y.size()) throw std::invalid_argument("running_exponent: size mismatch");
  if (b <= 1.0) throw std::invalid_argument("running_exponent: b must exceed 1");
  std::vector<double> lt, ly;
  for (size_t i = 0; i < t.size(); ++i)
    if (t[i] > 0 && y[i] > 0) {
      lt.push_back(std::log(t[i]));
      ly.push_back(std::log(y[i]));
    }
  std::vector<std::pair<double, double>> out;
  if (lt.size() < 2) return out;
  const double lb = std::log(b);
  for (size_t i = 0; i < lt.size(); ++i) {
    double ltb = lt[i] + lb;
    if (ltb > lt.back()) break;
    double delta = (ly[i] - interp(lt, ly, ltb)) / lb;
    out.emplace_back(std::exp(-lt[i]), delta);
  }
  return out;
}

CriticalFit find_critical(const SeriesFamily& family, double b) {
  if (family.size() < 2) throw std::invalid_argument("find_critical: need several eta values");
  CriticalFit out;
  out.slopes.resize(family.size());
  std::vector<double> plateaus(family.size()), plateau_errs(family.size());
  std::vector<bool> usable(family.size(), false);

  for (size_t c = 0; c < family.size(); ++c) {
    auto re = running_exponent(family[c].t, family[c].y, b);
    if (re.size() < 4) continue;
    // Last temporal decade: 1/t within 10x of the smallest available.
    double inv_min = re.back().first;
    std::vector<double> xs, ys;
    for (auto [inv_t, d] : re)
      if (inv_t <= 10.0 * inv_min) {
        xs.push_back(inv_t);
        ys.push_back(d);
      }
    if (xs.size() < 3) continue;
    LinearFit lf = linear_fit(xs, ys);
    out.slopes[c] = lf.slope;
    plateaus[c] = lf.intercept;  // extrapolation to 1/t -> 0
    plateau_errs[c] = lf.intercept_err;
    usable[c] = true;
  }

  bool has_pos = false, has_neg = false;
  for (size_t c = 0; c < family.size(); ++c) {
    if (!usable[c]) continue;
    (out.slopes[c] >= 0 ? has_pos : has_neg) = true;
  }
  if (!has_pos || !has_neg)
    throw std::runtime_error(
        "find_critical: eta grid does not bracket the transition (all late-time slopes share a "
        "sign)");

  double best = 0;
  bool first = true;
  for (size_t c = 0; c < family.size(); ++c) {
    if (!usable[c]) continue;
    if (first || std::abs(out.slopes[c]) < best) {
      best = std::abs(out.slopes[c]);
      out.curve_index = c;
      first = false;
    }
  }
  out.eta_c = family[out.curve_index].eta;
  out.delta = plateaus[out.curve_index];

  // Uncertainties: grid spacing for eta_c; fit error plus half the plateau
  // shift of the neighboring curves for delta.
  double spacing = 0;
  for (size_t c = 0; c < family.size(); ++c) {
    if (c == out.curve_index || !usable[c]) continue;
    double gap = std::abs(family[c].eta - out.eta_c);
    if (spacing == 0 || gap < spacing) spacing = gap;
  }
  out.eta_c_err = spacing > 0 ? 0.5 * spacing : 0.0;
  double nb = 0;
  for (size_t c = 0; c < family.size(); ++c) {
    if (c == out.curve_index || !usable[c]) continue;
    if (std::abs(family[c].eta - out.eta_c) <= 1.5 * spacing)
      nb = std::max(nb, 0.5 * std::abs(plateaus[c] - out.delta));
  }
  out.delta_err = std::max(plateau_errs[out.curve_index], nb);
  return out;
}

namespace {

struct ScaledCurve {
  std::vector<double> x, y;
  int side = 0;  // +1 active, -1 absorbing (or 0 for the fss variant)
};

// Mean squared difference between same-side pairs on their x-overlap.
double pair_cost(const std::vector<ScaledCurve>& curves) {
  double cost = 0;
  int n_pairs = 0;
  for (size_t a = 0; a < curves.size(); ++a) {
    for (size_t b = a + 1; b < curves.size(); ++b) {
      if (curves[a].side != curves[b].side) continue;
      double lo = std::max(curves[a].x.front(), curves[b].x.front());
      double hi = std::min(curves[a].x.back(), curves[b].x.back());
      if (hi <= lo) continue;
      constexpr int kGrid = 64;
      double acc = 0;
      for (int g = 0; g < kGrid; ++g) {
        double x = lo + (hi - lo) * (g + 0.5) / kGrid;
        double da = interp(curves[a].x, curves[a].y, x);
        double db = interp(curves[b].x, curves[b].y, x);
        acc += (da - db) * (da - db);
      }
      cost += acc / kGrid;
      ++n_pairs;
    }
  }
  if (n_pairs == 0)
    throw std::runtime_error("collapse: insufficient overlap between rescaled curves");
  return cost / n_pairs;
}

std::vector<ScaledCurve> rescale(const SeriesFamily& family, double delta, bool fss,
                                 double nu_or_z, double eta_c) {
  std::vector<ScaledCurve> out;
  for (const auto& c : family) {
    double shift;
    int side;
    if (fss) {
      shift = -nu_or_z * std::log(double(c.L));
      side = 0;
    } else {
      double d = c.eta - eta_c;
      if (std::abs(d) < 1e-12) continue;  // the critical curve itself is excluded
      shift = nu_or_z * std::log(std::abs(d));
      side = d < 0 ? +1 : -1;
    }
    ScaledCurve sc;
    sc.side = side;
    for (size_t i = 0; i < c.t.size(); ++i) {
      if (c.t[i] <= 0 || c.y[i] <= 0) continue;
      sc.x.push_back(std::log(c.t[i]) + shift);
      sc.y.push_back(std::log(c.y[i]) + delta * std::log(c.t[i]));
    }
    if (sc.x.size() >= 2) out.push_back(std::move(sc));
  }
  if (out.size() < 2) throw std::runtime_error("collapse: need at least two usable curves");
  return out;
}

double golden_minimize(const std::function<double(double)>& f, double lo, double hi,
                       double& fmin) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < 80; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  double x = (a + b) / 2;
  fmin = f(x);
  return x;
}

}  // namespace

double collapse_cost(const SeriesFamily& family, double delta, double nu_t, double eta_c) {
  return pair_cost(rescale(family, delta, false, nu_t, eta_c));
}

CollapseResult optimize_collapse(const SeriesFamily& family, double delta, double eta_c,
                                 double lo, double hi) {
  CollapseResult r;
  r.exponent = golden_minimize(
      [&](double nu) { return collapse_cost(family, delta, nu, eta_c); }, lo, hi, r.cost);
  return r;
}

double fss_cost(const SeriesFamily& critical_curves, double delta, double z) {
  return pair_cost(rescale(critical_curves, delta, true, z, 0));
}

CollapseResult optimize_fss(const SeriesFamily& critical_curves, double delta, double lo,
                            double hi) {
  CollapseResult r;
  r.exponent = golden_minimize(
      [&](double z) { return fss_cost(critical_curves, delta, z); }, lo, hi, r.cost);
  return r;
}

double bootstrap_collapse_err(const SeriesFamily& family, double delta, double eta_c, bool fss,
                              int resamples, uint64_t seed) {
  std::vector<double> values;
  values.reserve(resamples);
  for (int rs = 0; rs < resamples; ++rs) {
    RngStream rng(seed, uint64_t(rs));
    SeriesFamily fam = family;
    for (auto& c : fam)
      for (size_t i = 0; i < c.y.size(); ++i) {
        if (i >= c.yerr.size() || c.yerr[i] <= 0) continue;
        // Box-Muller from two uniform draws.
        double u1 = std::max(rng.next_double(), 1e-300);
        double u2 = rng.next_double();
        double g = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
        c.y[i] += g * c.yerr[i];
      }
    try {
      CollapseResult r = fss ? optimize_fss(fam, delta) : optimize_collapse(fam, delta, eta_c);
      values.push_back(r.exponent);
    } catch (const std::runtime_error&) {
      // resample degenerate (curve lost all positive points); skip
    }
  }
  if (values.size() < 2) return 0.0;
  double mean = 0, var = 0;
  for (double v : values) mean += v;
  mean /= values.size();
  for (double v : values) var += (v - mean) * (v - mean);
  return std::sqrt(var / (values.size() - 1));
}

}  // namespace sptsim
