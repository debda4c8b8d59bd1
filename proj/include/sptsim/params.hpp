#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sptsim {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Boundary { Periodic, ChiralOpen };
enum class Semantics { AsPublished, FullChannel };
enum class InitialState { Cluster, RandomEvenParity, AllErased };
enum class ScheduleKind { Geometric, Linear };

std::string to_string(Boundary b);
std::string to_string(Semantics s);
std::string to_string(InitialState i);
std::string to_string(ScheduleKind k);
Boundary boundary_from_string(const std::string& s);
Semantics semantics_from_string(const std::string& s);
InitialState initial_from_string(const std::string& s);
ScheduleKind schedule_from_string(const std::string& s);

// Full experiment configuration for one sublattice of L unit cells.
// gamma = 1 is the time unit; one MC sweep advances time by 1/(eta+4*gamma)
// on periodic boundaries and by 1/(eta+2*gamma) on the chiral open chain.
struct SimParams {
  int L = 0;
  double eta = 0.0;
  double gamma = 1.0;
  double f_e = 1.0;
  Boundary boundary = Boundary::Periodic;
  double mu = 0.0;  // drift bias, ChiralOpen only
  Semantics semantics = Semantics::AsPublished;
  InitialState initial = InitialState::Cluster;
  int64_t t_max_sweeps = 0;
  ScheduleKind schedule = ScheduleKind::Geometric;
  int points_per_decade = 20;
  int64_t measure_stride = 1;
  uint64_t master_seed = 1;
  int n_traj = 1;

  // Throws ConfigError on any violated invariant.
  void validate() const;

  // Canonical "key=value" listing, used in CSV headers and manifests.
  std::vector<std::pair<std::string, std::string>> to_kv() const;
};

}  // namespace sptsim
