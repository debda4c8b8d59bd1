#include "sptsim/exact_generator.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sptsim/event_table.hpp"
#include "sptsim/kernel_chiral.hpp"
#include "sptsim/kernel_mc.hpp"

namespace sptsim {

namespace {

int popcount32(uint32_t x) { return __builtin_popcount(x); }

}  // namespace

bool RateMatrix::in_sector(uint32_t cfg) const {
  if (sector == Sector::Full) return true;
  uint32_t d = cfg & ((uint32_t{1} << L) - 1);
  return (popcount32(d) & 1) == 0;
}

uint32_t RateMatrix::config_of_index(int idx) const {
  const int n_dbits = L;
  if (sector == Sector::Full) return static_cast<uint32_t>(idx);
  uint32_t low = uint32_t(idx) & ((uint32_t{1} << (n_dbits - 1)) - 1);
  uint32_t rest = uint32_t(idx) >> (n_dbits - 1);
  uint32_t parity = uint32_t(popcount32(low) & 1);
  uint32_t d = low | (parity << (n_dbits - 1));
  return d | (rest << n_dbits);
}

int RateMatrix::index_of_config(uint32_t cfg) const {
  const int n_dbits = L;
  if (sector == Sector::Full) return static_cast<int>(cfg);
  uint32_t d = cfg & ((uint32_t{1} << n_dbits) - 1);
  uint32_t rest = cfg >> n_dbits;
  uint32_t low = d & ((uint32_t{1} << (n_dbits - 1)) - 1);
  return static_cast<int>(low | (rest << (n_dbits - 1)));
}

SublatticeState RateMatrix::state_of_index(int idx) const {
  uint32_t cfg = config_of_index(idx);
  SublatticeState st;
  st.L = L;
  st.d = BitVec::from_u32(cfg & ((uint32_t{1} << L) - 1), L);
  st.e = boundary == Boundary::Periodic ? BitVec::from_u32(cfg >> L, L) : BitVec(L);
  return st;
}

RateMatrix build_generator(const SimParams& p, Sector sector) {
  p.validate();
  if (p.L > 8 && p.boundary == Boundary::Periodic)
    throw ConfigError("build_generator: periodic generator limited to L <= 8");
  if (p.L > 20) throw ConfigError("build_generator: L too large");

  RateMatrix rm;
  rm.L = p.L;
  rm.boundary = p.boundary;
  rm.semantics = p.semantics;
  rm.sector = sector;

  const int n_bits = p.boundary == Boundary::Periodic ? 2 * p.L : p.L;
  rm.dim = 1 << (sector == Sector::Full ? n_bits : n_bits - 1);

  std::vector<Eigen::Triplet<double>> trip;
  std::vector<double> diag(rm.dim, 0.0);

  auto pack = [&](const SublatticeState& st) -> uint32_t {
    uint32_t d = st.d.to_u32();
    if (p.boundary == Boundary::Periodic) return d | (st.e.to_u32() << p.L);
    return d;
  };

  if (p.boundary == Boundary::Periodic) {
    EventTable tbl = EventTable::make(p);
    rm.steps_per_sweep = p.L;
    rm.dt_sweep = tbl.dt_sweep;
    for (int col = 0; col < rm.dim; ++col) {
      SublatticeState base = rm.state_of_index(col);
      for (int m = 0; m < p.L; ++m) {
        for (int k = 0; k < kNumEvents - 1; ++k) {
          double r = tbl.rate[k];
          if (r == 0.0) continue;
          SublatticeState st = base;
          mc_event(st, m, static_cast<EventKind>(k), p.semantics);
          uint32_t cfg2 = pack(st);
          if (cfg2 == uint32_t(pack(base))) continue;
          trip.emplace_back(rm.index_of_config(cfg2), col, r);
          diag[col] -= r;
        }
      }
    }
  } else {
    ChiralEventTable tbl = ChiralEventTable::make(p);
    rm.steps_per_sweep = tbl.n_bonds;
    rm.dt_sweep = tbl.dt_sweep;
    for (int col = 0; col < rm.dim; ++col) {
      SublatticeState base = rm.state_of_index(col);
      for (int bond = 1; bond <= p.L - 3; ++bond) {
        const double rates[3] = {tbl.rate_noise, tbl.hop_left_rate(bond),
                                 tbl.hop_right_rate(bond)};
        for (int k = 0; k < 3; ++k) {
          if (rates[k] == 0.0) continue;
          SublatticeState st = base;
          chiral_event(st, bond, static_cast<ChiralEvent>(k));
          uint32_t cfg2 = pack(st);
          if (cfg2 == pack(base)) continue;
          trip.emplace_back(rm.index_of_config(cfg2), col, rates[k]);
          diag[col] -= rates[k];
        }
      }
    }
  }
  for (int i = 0; i < rm.dim; ++i)
    if (diag[i] != 0.0) trip.emplace_back(i, i, diag[i]);

  rm.M.resize(rm.dim, rm.dim);
  rm.M.setFromTriplets(trip.begin(), trip.end());

  // Column sums must vanish (probability conservation).
  Eigen::RowVectorXd colsum = Eigen::RowVectorXd::Ones(rm.dim) * rm.M;
  double worst = colsum.cwiseAbs().maxCoeff();
  double scale = std::max(1.0, p.eta + 4.0 * p.gamma);
  if (worst > 1e-12 * scale * p.L)
    throw NumericalError("generator column sums deviate from zero");
  return rm;
}

SpectrumResult spectrum(const RateMatrix& rm, int k, bool eigenvectors, bool left) {
  if (rm.dim > 4096)
    throw std::invalid_argument("spectrum: dense solve limited to dim <= 4096");
  const int n = rm.dim;
  k = std::min(k, n);

  auto dgeev_sorted = [&](bool transpose, bool want_vecs, Eigen::VectorXcd& vals,
                          Eigen::MatrixXcd& vecs) {
    Eigen::MatrixXd A = Eigen::MatrixXd(rm.M);
    if (transpose) A.transposeInPlace();
    std::vector<double> wr(n), wi(n);
    Eigen::MatrixXd vr(want_vecs ? n : 1, want_vecs ? n : 1);
    int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', want_vecs ? 'V' : 'N', n, A.data(), n,
                             wr.data(), wi.data(), nullptr, 1, vr.data(),
                             want_vecs ? n : 1);
    if (info != 0) throw NumericalError("dgeev failed to converge, info=" + std::to_string(info));

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      if (wr[a] != wr[b]) return wr[a] > wr[b];
      return wi[a] > wi[b];
    });

    vals.resize(n);
    for (int i = 0; i < n; ++i) vals[i] = {wr[order[i]], wi[order[i]]};
    if (want_vecs) {
      vecs.resize(n, n);
      for (int i = 0; i < n; ++i) {
        int j = order[i];
        if (wi[j] == 0.0) {
          vecs.col(i) = vr.col(j).cast<std::complex<double>>();
        } else {
          // dgeev stores conjugate pairs in adjacent columns (re, im).
          bool first = j + 1 < n && wi[j] > 0.0;
          int re_col = first ? j : j - 1;
          double sign = first ? 1.0 : -1.0;
          for (int r = 0; r < n; ++r)
            vecs(r, i) = {vr(r, re_col), sign * vr(r, re_col + 1)};
        }
      }
    }
  };

  SpectrumResult out;
  Eigen::MatrixXcd vecs;
  dgeev_sorted(false, eigenvectors, out.values, vecs);
  if (eigenvectors) out.right = vecs.leftCols(k);
  if (left) {
    Eigen::VectorXcd lvals;
    Eigen::MatrixXcd lvecs;
    dgeev_sorted(true, true, lvals, lvecs);
    out.left = lvecs.leftCols(k);
  }
  out.values.conservativeResize(std::min<int>(k, out.values.size()));
  return out;
}

namespace {

double max_exit_rate(const RateMatrix& rm) {
  double r = 0.0;
  for (int i = 0; i < rm.dim; ++i) r = std::max(r, -rm.M.coeff(i, i));
  return r;
}

void verify_probability(const Eigen::VectorXd& p) {
  if (p.minCoeff() < -1e-12) throw NumericalError("evolved distribution has negative entries");
  if (std::abs(p.sum() - 1.0) > 1e-10)
    throw NumericalError("evolved distribution does not sum to 1");
}

}  // namespace

Eigen::VectorXd evolve_exact(const RateMatrix& rm, const Eigen::VectorXd& p0, double t) {
  if (p0.size() != rm.dim) throw std::invalid_argument("evolve_exact: dimension mismatch");
  if (t < 0) throw std::invalid_argument("evolve_exact: t must be >= 0");
  Eigen::VectorXd p = p0;
  if (t == 0.0) return p;

  double rmax = max_exit_rate(rm);
  double dt = rmax > 0 ? 0.05 / rmax : t;
  auto n_steps = static_cast<long long>(std::ceil(t / dt));
  dt = t / double(n_steps);
  Eigen::VectorXd k1(rm.dim), k2(rm.dim), k3(rm.dim), k4(rm.dim);
  for (long long i = 0; i < n_steps; ++i) {
    k1 = rm.M * p;
    k2 = rm.M * (p + 0.5 * dt * k1);
    k3 = rm.M * (p + 0.5 * dt * k2);
    k4 = rm.M * (p + dt * k3);
    p += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  verify_probability(p);
  return p;
}

Eigen::VectorXd evolve_discrete(const RateMatrix& rm, const Eigen::VectorXd& p0,
                                int64_t n_sweeps) {
  if (p0.size() != rm.dim) throw std::invalid_argument("evolve_discrete: dimension mismatch");
  Eigen::VectorXd p = p0;
  const double step = rm.dt_sweep / rm.steps_per_sweep;
  for (int64_t i = 0; i < n_sweeps * rm.steps_per_sweep; ++i) p += step * (rm.M * p);
  verify_probability(p);
  return p;
}

std::vector<Eigen::VectorXd> steady_states(const RateMatrix& rm, double tol) {
  SpectrumResult sp = spectrum(rm, rm.dim, true, false);
  std::vector<Eigen::VectorXd> out;
  for (int i = 0; i < sp.values.size(); ++i) {
    if (std::abs(sp.values[i].real()) < tol && std::abs(sp.values[i].imag()) < tol) {
      Eigen::VectorXd v = sp.right.col(i).real();
      double pos = v.cwiseMax(0.0).sum(), neg = -v.cwiseMin(0.0).sum();
      if (neg > pos) v = -v;
      // Normalize to a probability distribution when sign-definite.
      if (v.minCoeff() > -1e-8 * v.cwiseAbs().maxCoeff() && v.sum() > 0) {
        v = v.cwiseMax(0.0);
        v /= v.sum();
      } else if (v.cwiseAbs().sum() > 0) {
        v /= v.cwiseAbs().sum();
      }
      out.push_back(v);
    }
  }
  return out;
}

Eigen::VectorXd delta_distribution(const RateMatrix& rm, uint32_t cfg) {
  if (!rm.in_sector(cfg)) throw std::invalid_argument("configuration outside sector");
  Eigen::VectorXd p = Eigen::VectorXd::Zero(rm.dim);
  p[rm.index_of_config(cfg)] = 1.0;
  return p;
}

}  // namespace sptsim
