#pragma once

#include <span>
#include <vector>

#include "easched/evaluate.hpp"
#include "easched/instance.hpp"

namespace easched {

enum class ExactMethod { BruteForce, SpecialCaseOrder };

struct ExactResult {
  double cost = 0.0;
  std::vector<int> order;        // job positions
  std::vector<int> speed_index;  // per job position
  ExactMethod method = ExactMethod::BruteForce;
  Schedule schedule;
};

struct BruteForceLimits {
  int max_jobs = 7;
  int max_speeds = 4;
};

/// Exact optimum of the instance objective over all precedence-feasible orders
/// and all speed assignments from the speed set. Throws std::invalid_argument
/// above the size limits.
ExactResult brute_force(const Instance& instance, BruteForceLimits limits = {});

/// Constants of the continuous-speed closed form:
/// q = (beta - 1) / beta, K = beta / (beta - 1)^q, xi_i = rho_i v_i^(1/beta).
struct DualCostParams {
  double q = 0.5;
  double k = 2.0;
  double beta = 2.0;

  static DualCostParams for_beta(double beta);
  double xi(const Job& job) const;
};

/// sum_i K xi_{pi(i)} (sum_{j >= i} w_{pi(j)})^q for an order of job positions.
/// Requires polynomial energy on every job.
double dual_cost(std::span<const int> order, const std::vector<Job>& jobs, double beta);

/// Order by non-increasing w_i / xi_i (ties by id), valid when all weights or
/// all xi_i are equal. Throws std::invalid_argument otherwise.
std::vector<int> special_case_order(const std::vector<Job>& jobs, double beta);

/// True when all weights or all xi_i agree within 1e-12 relative.
bool special_case_applies(const std::vector<Job>& jobs, double beta);

}  // namespace easched
