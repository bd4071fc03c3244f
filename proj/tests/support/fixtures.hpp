#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "easched/instance.hpp"

namespace easched::testing {

inline Job poly_job(int id, std::int64_t rho, double weight, double v = 1.0, double beta = 2.0,
                    double release = 0.0, double deadline = 0.0) {
  Job job;
  job.id = id;
  job.rho = rho;
  job.weight = weight;
  job.release = release;
  job.deadline = deadline;
  job.energy = PolynomialEnergy{v, beta};
  return job;
}

inline Job table_job(int id, std::int64_t rho, double weight, std::vector<double> costs) {
  Job job;
  job.id = id;
  job.rho = rho;
  job.weight = weight;
  job.energy = TableEnergy{std::move(costs)};
  return job;
}

inline Instance make_instance(std::vector<Job> jobs, std::vector<double> speeds, double delta = 1.0,
                              std::vector<std::pair<int, int>> edges = {},
                              Objective objective = Objective::CompletionTime, double epsilon = 1.0,
                              double beta = 2.0) {
  Instance inst;
  inst.jobs = std::move(jobs);
  inst.speeds = SpeedSet{std::move(speeds), delta};
  inst.precedence.edges = std::move(edges);
  inst.objective = objective;
  inst.epsilon = epsilon;
  inst.beta = beta;
  return inst;
}

}  // namespace easched::testing
