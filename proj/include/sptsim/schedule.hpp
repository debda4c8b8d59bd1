#pragma once

#include <cstdint>
#include <vector>

#include "sptsim/params.hpp"

namespace sptsim {

// Sorted, de-duplicated sweep indices at which observables are sampled.
// Sweep 0 (the initial state) is always included.
struct Schedule {
  std::vector<int64_t> sweeps;

  static Schedule geometric(int64_t t_max_sweeps, int points_per_decade);
  static Schedule linear(int64_t t_max_sweeps, int64_t stride);
  static Schedule from_params(const SimParams& p);

  size_t size() const { return sweeps.size(); }
};

}  // namespace sptsim
