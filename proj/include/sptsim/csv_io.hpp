#pragma once

#include <map>
#include <string>
#include <vector>

#include "sptsim/ensemble.hpp"
#include "sptsim/scaling.hpp"

namespace sptsim {

// FNV-1a over the byte string; used as the integrity digest for outputs.
uint64_t fnv1a64(const std::string& s);
std::string digest_hex(uint64_t d);

// Ensemble CSV: '#'-prefixed header (format tag, digest of the data section,
// all parameters, column schema), then long-format rows
//   time,observable,mean,stderr,n_traj
// Floats print as %.17g, so equal results are byte-identical files.
std::string write_ensemble_csv(const EnsembleStats& st);

struct LoadedEnsemble {
  std::map<std::string, std::string> params;
  std::vector<std::string> observables;          // distinct, in file order
  std::vector<double> time;                      // distinct sample times
  std::map<std::string, std::vector<double>> mean;
  std::map<std::string, std::vector<double>> sem;
  int n_traj = 0;
  uint64_t digest = 0;       // declared in header
  uint64_t body_digest = 0;  // recomputed from the data section

  double param(const std::string& key) const;
  // Curve of one observable against time (for the scaling module).
  SeriesCurve curve(const std::string& observable) const;
  // Curve of an indexed family, e.g. base "omega" -> (l, value) at one time.
  SeriesCurve curve_over_index(const std::string& base, size_t sample) const;
};

LoadedEnsemble read_ensemble_csv(const std::string& text);

}  // namespace sptsim
