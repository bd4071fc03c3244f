#pragma once

#include <Eigen/Core>

#include "easched/instance.hpp"

namespace easched {

/// Geometric interval grid. tau(0) = kappa and tau(t) = kappa (1 + eps)^(t-1)
/// for t >= 1, so interval 1 is the singleton {kappa} and interval t >= 2 is
/// (tau(t-1), tau(t)].
struct TimeGrid {
  double kappa = 1.0;
  double epsilon = 1.0;
  Eigen::VectorXd tau;  // tau(0) .. tau(T)

  int horizon_index() const { return static_cast<int>(tau.size()) - 1; }
  double boundary(int t) const { return tau(t); }
  double horizon() const { return tau(tau.size() - 1); }
};

/// Grid with kappa = rho_min / sigma_max and the smallest T such that
/// tau(T) >= max_i r_i + sum_i rho_i / sigma_1.
TimeGrid build_grid(const Instance& instance);

/// Grid with explicit kappa, epsilon and horizon index.
TimeGrid make_grid(double kappa, double epsilon, int horizon_index);

/// Interval index t with time in (tau(t-1), tau(t)]; time == kappa maps to 1.
/// Throws std::out_of_range outside [kappa, tau(T)].
int interval_of(const TimeGrid& grid, double time);

}  // namespace easched
