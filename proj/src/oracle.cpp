#include "easched/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace easched {

namespace {

constexpr double kRelTol = 1e-12;

bool all_equal(const std::vector<double>& values) {
  for (double v : values)
    if (std::abs(v - values.front()) > kRelTol * std::max(std::abs(v), std::abs(values.front())))
      return false;
  return true;
}

class Search {
 public:
  explicit Search(const Instance& inst)
      : inst_(inst),
        n_(static_cast<int>(inst.num_jobs())),
        m_(static_cast<int>(inst.num_speeds())),
        energy_(energy_table(inst)),
        predecessors_(n_, 0),
        order_(n_),
        speed_(n_) {
    for (const auto& [a, b] : inst.edges_by_index()) predecessors_[b] |= 1u << a;
    min_energy_.resize(n_);
    for (int i = 0; i < n_; ++i) min_energy_[i] = energy_.row(i).minCoeff();
  }

  void run() { descend(0, 0u, 0.0, 0.0); }

  double best() const { return best_; }
  const std::vector<int>& best_order() const { return best_order_; }
  const std::vector<int>& best_speed() const { return best_speed_; }

 private:
  double lateness(int i, double completion) const {
    const Job& job = inst_.jobs[i];
    const double g =
        inst_.objective == Objective::CompletionTime ? completion : std::max(completion - job.deadline, 0.0);
    return job.weight * g;
  }

  double remaining_bound(unsigned done, double clock) const {
    double lb = 0;
    for (int i = 0; i < n_; ++i) {
      if (done >> i & 1u) continue;
      const Job& job = inst_.jobs[i];
      const double earliest =
          std::max(job.release, clock) + static_cast<double>(job.rho) / inst_.speeds.fastest();
      lb += min_energy_[i] + lateness(i, earliest);
    }
    return lb;
  }

  void descend(int depth, unsigned done, double clock, double so_far) {
    if (depth == n_) {
      if (so_far < best_) {
        best_ = so_far;
        best_order_ = order_;
        best_speed_ = speed_;
      }
      return;
    }
    if (so_far + remaining_bound(done, clock) >= best_) return;
    for (int i = 0; i < n_; ++i) {
      if (done >> i & 1u || (predecessors_[i] & ~done) != 0) continue;
      const Job& job = inst_.jobs[i];
      const double start = std::max(job.release, clock);
      order_[depth] = i;
      for (int j = 0; j < m_; ++j) {
        const double completion = start + static_cast<double>(job.rho) / inst_.speeds[j];
        speed_[i] = j;
        descend(depth + 1, done | 1u << i, completion, so_far + energy_(i, j) + lateness(i, completion));
      }
    }
  }

  const Instance& inst_;
  int n_;
  int m_;
  Eigen::MatrixXd energy_;
  std::vector<double> min_energy_;
  std::vector<unsigned> predecessors_;
  std::vector<int> order_;
  std::vector<int> speed_;
  double best_ = std::numeric_limits<double>::infinity();
  std::vector<int> best_order_;
  std::vector<int> best_speed_;
};

}  // namespace

ExactResult brute_force(const Instance& instance, BruteForceLimits limits) {
  const int n = static_cast<int>(instance.num_jobs());
  const int m = static_cast<int>(instance.num_speeds());
  if (n > limits.max_jobs || m > limits.max_speeds)
    throw std::invalid_argument("brute force limited to " + std::to_string(limits.max_jobs) + " jobs and " +
                                std::to_string(limits.max_speeds) + " speeds (got " + std::to_string(n) +
                                " and " + std::to_string(m) + ")");
  if (n == 0) throw std::invalid_argument("brute force needs at least one job");
  if (n > 31) throw std::invalid_argument("brute force supports at most 31 jobs");

  Search search(instance);
  search.run();

  ExactResult result;
  result.method = ExactMethod::BruteForce;
  result.order = search.best_order();
  result.speed_index = search.best_speed();
  result.schedule = assemble_schedule(instance, result.order, result.speed_index);
  result.cost = result.schedule.cost.total;
  return result;
}

DualCostParams DualCostParams::for_beta(double beta) {
  if (!(beta > 1)) throw std::invalid_argument("beta must exceed 1");
  DualCostParams p;
  p.beta = beta;
  p.q = (beta - 1) / beta;
  p.k = beta / std::pow(beta - 1, p.q);
  return p;
}

double DualCostParams::xi(const Job& job) const {
  const auto* poly = std::get_if<PolynomialEnergy>(&job.energy);
  if (!poly)
    throw std::invalid_argument("job " + std::to_string(job.id) + ": closed form needs polynomial energy");
  return static_cast<double>(job.rho) * std::pow(poly->v, 1 / beta);
}

double dual_cost(std::span<const int> order, const std::vector<Job>& jobs, double beta) {
  const DualCostParams p = DualCostParams::for_beta(beta);
  double suffix = 0;
  double total = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Job& job = jobs.at(*it);
    suffix += job.weight;
    total += p.k * p.xi(job) * std::pow(suffix, p.q);
  }
  return total;
}

bool special_case_applies(const std::vector<Job>& jobs, double beta) {
  if (jobs.empty()) return true;
  const DualCostParams p = DualCostParams::for_beta(beta);
  std::vector<double> weights, xis;
  for (const Job& job : jobs) {
    weights.push_back(job.weight);
    xis.push_back(p.xi(job));
  }
  return all_equal(weights) || all_equal(xis);
}

std::vector<int> special_case_order(const std::vector<Job>& jobs, double beta) {
  if (!special_case_applies(jobs, beta))
    throw std::invalid_argument("ratio order is only optimal with equal weights or equal xi");
  const DualCostParams p = DualCostParams::for_beta(beta);
  std::vector<double> ratio;
  for (const Job& job : jobs) ratio.push_back(job.weight / p.xi(job));
  std::vector<int> order(jobs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (ratio[a] != ratio[b]) return ratio[a] > ratio[b];
    return jobs[a].id < jobs[b].id;
  });
  return order;
}

}  // namespace easched
