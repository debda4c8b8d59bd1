#include "sptsim/schedule.hpp"

#include <algorithm>
#include <cmath>

namespace sptsim {

static Schedule finalize(std::vector<int64_t> v, int64_t t_max) {
  v.push_back(0);
  if (t_max > 0) v.push_back(t_max);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  Schedule s;
  s.sweeps = std::move(v);
  return s;
}

Schedule Schedule::geometric(int64_t t_max_sweeps, int points_per_decade) {
  std::vector<int64_t> v;
  for (int k = 0;; ++k) {
    auto t = static_cast<int64_t>(std::llround(std::pow(10.0, double(k) / points_per_decade)));
    if (t > t_max_sweeps) break;
    v.push_back(t);
  }
  return finalize(std::move(v), t_max_sweeps);
}

Schedule Schedule::linear(int64_t t_max_sweeps, int64_t stride) {
  std::vector<int64_t> v;
  for (int64_t t = stride; t <= t_max_sweeps; t += stride) v.push_back(t);
  return finalize(std::move(v), t_max_sweeps);
}

Schedule Schedule::from_params(const SimParams& p) {
  return p.schedule == ScheduleKind::Geometric
             ? geometric(p.t_max_sweeps, p.points_per_decade)
             : linear(p.t_max_sweeps, p.measure_stride);
}

}  // namespace sptsim
