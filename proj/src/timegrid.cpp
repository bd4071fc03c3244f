#include "easched/timegrid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace easched {

namespace {
constexpr double kRelTol = 1e-12;
}

TimeGrid make_grid(double kappa, double epsilon, int horizon_index) {
  if (!(kappa > 0) || !(epsilon > 0) || horizon_index < 1)
    throw std::invalid_argument("time grid needs kappa > 0, epsilon > 0 and T >= 1");
  TimeGrid grid;
  grid.kappa = kappa;
  grid.epsilon = epsilon;
  grid.tau.resize(horizon_index + 1);
  grid.tau(0) = kappa;
  for (int t = 1; t <= horizon_index; ++t) grid.tau(t) = kappa * std::pow(1 + epsilon, t - 1);
  return grid;
}

TimeGrid build_grid(const Instance& instance) {
  if (instance.jobs.empty() || instance.speeds.size() == 0)
    throw std::invalid_argument("time grid needs at least one job and one speed");
  std::int64_t rho_min = instance.jobs.front().rho;
  double release_max = 0;
  double work = 0;
  for (const Job& job : instance.jobs) {
    rho_min = std::min(rho_min, job.rho);
    release_max = std::max(release_max, job.release);
    work += static_cast<double>(job.rho) / instance.speeds.slowest();
  }
  const double kappa = static_cast<double>(rho_min) / instance.speeds.fastest();
  const double horizon = release_max + work;
  const double growth = 1 + instance.epsilon;

  int T = 1;
  while (kappa * std::pow(growth, T - 1) < horizon * (1 - kRelTol)) ++T;
  return make_grid(kappa, instance.epsilon, T);
}

int interval_of(const TimeGrid& grid, double time) {
  const int T = grid.horizon_index();
  if (time < grid.kappa * (1 - kRelTol) || time > grid.horizon() * (1 + kRelTol))
    throw std::out_of_range("time " + std::to_string(time) + " outside grid [" + std::to_string(grid.kappa) +
                            ", " + std::to_string(grid.horizon()) + "]");
  if (time <= grid.kappa) return 1;
  const double* first = grid.tau.data() + 1;
  const double* last = grid.tau.data() + T + 1;
  const double* it = std::lower_bound(first, last, time);
  if (it == last) return T;  // within tolerance above tau(T)
  return static_cast<int>(it - first) + 1;
}

}  // namespace easched
