#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "easched/instance.hpp"

namespace easched {

struct CostBreakdown {
  double energy_total = 0.0;
  double scheduling_total = 0.0;  // sum w_i C_i, or sum w_i T_i for tardiness
  double total = 0.0;
};

/// A non-preemptive single-machine schedule. `order` lists job positions (into
/// Instance::jobs); every per-job vector is indexed by job position.
struct Schedule {
  std::vector<int> order;
  std::vector<int> speed_index;
  Eigen::VectorXd speed;
  Eigen::VectorXd start;
  Eigen::VectorXd completion;
  CostBreakdown cost;
};

/// n x m table of E_i(sigma_j).
Eigen::MatrixXd energy_table(const Instance& instance);

/// Runs jobs in `order` at the given speed indices, each starting at
/// max(release, previous completion), and prices the result.
Schedule assemble_schedule(const Instance& instance, std::span<const int> order,
                           std::span<const int> speed_index);

struct FeasibilityReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

FeasibilityReport check_feasible(const Instance& instance, const Schedule& schedule);

/// Energy plus weighted completion time (or weighted tardiness, according to
/// the instance objective). Throws ValidationError if the schedule is infeasible.
CostBreakdown cost(const Instance& instance, const Schedule& schedule);

/// max(0, C_i - d_i) for each job.
Eigen::VectorXd tardiness(const Instance& instance, const Schedule& schedule);

}  // namespace easched
