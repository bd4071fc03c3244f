#include "easched/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "easched/errors.hpp"

namespace easched {

namespace {

constexpr double kTimeTol = 1e-9;

bool close(double a, double b) { return std::abs(a - b) <= kTimeTol * (1 + std::abs(b)); }

// Energy and scheduling sums accumulated in processing order.
CostBreakdown price(const Instance& inst, const Schedule& s) {
  CostBreakdown c;
  for (int i : s.order) {
    const Job& job = inst.jobs[i];
    c.energy_total += cost_at(job.energy, static_cast<double>(job.rho), s.speed(i), inst.speeds);
    const double late = inst.objective == Objective::CompletionTime
                            ? s.completion(i)
                            : std::max(s.completion(i) - job.deadline, 0.0);
    c.scheduling_total += job.weight * late;
  }
  c.total = c.energy_total + c.scheduling_total;
  return c;
}

bool is_permutation(std::span<const int> order, std::size_t n) {
  if (order.size() != n) return false;
  std::vector<char> seen(n, 0);
  for (int i : order) {
    if (i < 0 || static_cast<std::size_t>(i) >= n || seen[i]) return false;
    seen[i] = 1;
  }
  return true;
}

}  // namespace

Eigen::MatrixXd energy_table(const Instance& instance) {
  const auto n = static_cast<Eigen::Index>(instance.num_jobs());
  const auto m = static_cast<Eigen::Index>(instance.num_speeds());
  Eigen::MatrixXd table(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Job& job = instance.jobs[i];
    if (const auto* t = std::get_if<TableEnergy>(&job.energy)) {
      table.row(i) = convexify(t->costs, instance.speeds).values.transpose();
      continue;
    }
    for (Eigen::Index j = 0; j < m; ++j)
      table(i, j) = cost_at(job.energy, static_cast<double>(job.rho), instance.speeds[j], instance.speeds);
  }
  return table;
}

Schedule assemble_schedule(const Instance& instance, std::span<const int> order,
                           std::span<const int> speed_index) {
  const std::size_t n = instance.num_jobs();
  if (!is_permutation(order, n))
    throw std::invalid_argument("schedule order is not a permutation of the jobs");
  if (speed_index.size() != n) throw std::invalid_argument("one speed index per job expected");

  Schedule s;
  s.order.assign(order.begin(), order.end());
  s.speed_index.assign(speed_index.begin(), speed_index.end());
  s.speed.resize(n);
  s.start.resize(n);
  s.completion.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int j = speed_index[i];
    if (j < 0 || static_cast<std::size_t>(j) >= instance.num_speeds())
      throw std::invalid_argument("speed index out of range");
    s.speed(i) = instance.speeds[j];
  }
  double clock = 0.0;
  for (int i : order) {
    const Job& job = instance.jobs[i];
    s.start(i) = std::max(job.release, clock);
    s.completion(i) = s.start(i) + static_cast<double>(job.rho) / s.speed(i);
    clock = s.completion(i);
  }
  s.cost = price(instance, s);
  return s;
}

FeasibilityReport check_feasible(const Instance& instance, const Schedule& s) {
  FeasibilityReport report;
  auto& v = report.violations;
  const std::size_t n = instance.num_jobs();
  if (!is_permutation(s.order, n)) {
    v.push_back("order is not a permutation of the jobs");
    return report;
  }
  if (s.speed.size() != static_cast<Eigen::Index>(n) || s.start.size() != static_cast<Eigen::Index>(n) ||
      s.completion.size() != static_cast<Eigen::Index>(n)) {
    v.push_back("per-job vectors have the wrong size");
    return report;
  }

  std::vector<int> position(n);
  for (std::size_t k = 0; k < n; ++k) position[s.order[k]] = static_cast<int>(k);

  double prev = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const int i = s.order[k];
    const Job& job = instance.jobs[i];
    const std::string who = "job " + std::to_string(job.id);
    if (instance.speeds.index_of(s.speed(i)) < 0) v.push_back(who + ": speed is not in the speed set");
    if (s.start(i) < job.release - kTimeTol * (1 + job.release))
      v.push_back(who + ": starts before its release");
    if (k > 0 && s.start(i) < prev - kTimeTol * (1 + prev)) v.push_back(who + ": overlaps the previous job");
    if (!close(s.start(i), std::max(job.release, prev)))
      v.push_back(who + ": start differs from max(release, previous completion)");
    if (s.speed(i) > 0 && !close(s.completion(i), s.start(i) + static_cast<double>(job.rho) / s.speed(i)))
      v.push_back(who + ": completion differs from start + rho / speed");
    prev = s.completion(i);
  }
  for (const auto& [a, b] : instance.edges_by_index())
    if (position[a] > position[b])
      v.push_back("precedence " + std::to_string(instance.jobs[a].id) + " -> " +
                  std::to_string(instance.jobs[b].id) + " violated");
  return report;
}

CostBreakdown cost(const Instance& instance, const Schedule& schedule) {
  const FeasibilityReport report = check_feasible(instance, schedule);
  if (!report.ok()) throw ValidationError("infeasible schedule: " + report.violations.front());
  return price(instance, schedule);
}

Eigen::VectorXd tardiness(const Instance& instance, const Schedule& schedule) {
  Eigen::VectorXd out(schedule.completion.size());
  for (Eigen::Index i = 0; i < out.size(); ++i)
    out(i) = std::max(schedule.completion(i) - instance.jobs[i].deadline, 0.0);
  return out;
}

}  // namespace easched
