#include "sptsim/params.hpp"

#include <cstdio>

namespace sptsim {

std::string to_string(Boundary b) {
  return b == Boundary::Periodic ? "periodic" : "chiral-open";
}
std::string to_string(Semantics s) {
  return s == Semantics::AsPublished ? "as-published" : "full-channel";
}
std::string to_string(InitialState i) {
  switch (i) {
    case InitialState::Cluster: return "cluster";
    case InitialState::RandomEvenParity: return "random-even-parity";
    case InitialState::AllErased: return "all-erased";
  }
  return "?";
}
std::string to_string(ScheduleKind k) {
  return k == ScheduleKind::Geometric ? "geometric" : "linear";
}

Boundary boundary_from_string(const std::string& s) {
  if (s == "periodic") return Boundary::Periodic;
  if (s == "chiral-open") return Boundary::ChiralOpen;
  throw ConfigError("unknown boundary '" + s + "' (periodic|chiral-open)");
}
Semantics semantics_from_string(const std::string& s) {
  if (s == "as-published") return Semantics::AsPublished;
  if (s == "full-channel") return Semantics::FullChannel;
  throw ConfigError("unknown semantics '" + s + "' (as-published|full-channel)");
}
InitialState initial_from_string(const std::string& s) {
  if (s == "cluster") return InitialState::Cluster;
  if (s == "random-even-parity") return InitialState::RandomEvenParity;
  if (s == "all-erased") return InitialState::AllErased;
  throw ConfigError("unknown initial '" + s + "' (cluster|random-even-parity|all-erased)");
}
ScheduleKind schedule_from_string(const std::string& s) {
  if (s == "geometric") return ScheduleKind::Geometric;
  if (s == "linear") return ScheduleKind::Linear;
  throw ConfigError("unknown schedule '" + s + "' (geometric|linear)");
}

void SimParams::validate() const {
  if (L < 3) throw ConfigError("L must be >= 3");
  if (eta < 0) throw ConfigError("eta must be >= 0");
  if (gamma < 0) throw ConfigError("gamma must be >= 0");
  if (eta + gamma <= 0) throw ConfigError("eta + gamma must be > 0 (no active processes)");
  if (f_e < 0 || f_e > 1) throw ConfigError("f_e must lie in [0,1]");
  if (mu < 0 || mu > 1) throw ConfigError("mu must lie in [0,1]");
  if (boundary == Boundary::Periodic && mu != 0)
    throw ConfigError("mu != 0 requires boundary=chiral-open");
  if (boundary == Boundary::ChiralOpen) {
    if (L < 4) throw ConfigError("chiral-open requires L >= 4 (no bulk sites otherwise)");
    if (initial == InitialState::AllErased)
      throw ConfigError("all-erased initial state is undefined for the chiral protocol");
  }
  if (t_max_sweeps < 0) throw ConfigError("t_max_sweeps must be >= 0");
  if (n_traj < 1) throw ConfigError("n_traj must be >= 1");
  if (points_per_decade < 1) throw ConfigError("points_per_decade must be >= 1");
  if (measure_stride < 1) throw ConfigError("measure_stride must be >= 1");
}

static std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::pair<std::string, std::string>> SimParams::to_kv() const {
  return {
      {"L", std::to_string(L)},
      {"eta", fmt(eta)},
      {"gamma", fmt(gamma)},
      {"f_e", fmt(f_e)},
      {"boundary", to_string(boundary)},
      {"mu", fmt(mu)},
      {"semantics", to_string(semantics)},
      {"initial", to_string(initial)},
      {"t_max_sweeps", std::to_string(t_max_sweeps)},
      {"schedule", to_string(schedule)},
      {"points_per_decade", std::to_string(points_per_decade)},
      {"measure_stride", std::to_string(measure_stride)},
      {"master_seed", std::to_string(master_seed)},
      {"n_traj", std::to_string(n_traj)},
  };
}

}  // namespace sptsim
