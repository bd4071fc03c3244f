#include "easched/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>

#include "easched/errors.hpp"

namespace easched {

namespace {

constexpr double kRelTol = 1e-12;

void require_alpha(double alpha) {
  if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("alpha must lie in (0, 1)");
}

std::vector<int> job_ids(const Instance& instance) {
  std::vector<int> ids;
  for (const Job& job : instance.jobs) ids.push_back(job.id);
  return ids;
}

}  // namespace

std::vector<int> alpha_intervals(const LpSolution& solution, double alpha) {
  require_alpha(alpha);
  std::vector<int> out;
  for (int i = 0; i < solution.index.jobs; ++i) {
    const Eigen::VectorXd per_interval = solution.job_block(i).colwise().sum().transpose();
    double cumulative = 0;
    int found = -1;
    for (Eigen::Index t = 0; t < per_interval.size(); ++t) {
      cumulative += per_interval(t);
      if (cumulative >= alpha - kAlphaMassTolerance) {
        found = static_cast<int>(t) + 1;
        break;
      }
    }
    if (found < 0) throw InternalError("job position " + std::to_string(i) + " never accumulates alpha mass");
    out.push_back(found);
  }
  return out;
}

std::vector<Eigen::MatrixXd> truncate(const LpSolution& solution, double alpha,
                                      std::span<const int> intervals) {
  std::vector<Eigen::MatrixXd> out;
  for (int i = 0; i < solution.index.jobs; ++i) {
    const auto block = solution.job_block(i);
    const int tau = intervals[i];
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(block.rows(), block.cols());
    x.leftCols(tau - 1) = block.leftCols(tau - 1);
    const double before = block.leftCols(tau - 1).sum();
    double prefix = 0;
    for (Eigen::Index j = 0; j < block.rows(); ++j) {
      const double v = block(j, tau - 1);
      x(j, tau - 1) = std::max(std::min(v, alpha - prefix - before), 0.0);
      prefix += v;
    }
    out.push_back(std::move(x));
  }
  return out;
}

AlphaSpeed alpha_speed(const Eigen::MatrixXd& truncated, const SpeedSet& speeds, double alpha) {
  require_alpha(alpha);
  const Eigen::VectorXd per_speed = truncated.rowwise().sum();
  const double mass = per_speed.sum();
  if (!(mass > 0)) throw InternalError("truncated solution carries no mass");
  AlphaSpeed out;
  out.mu = per_speed / mass;
  const Eigen::Map<const Eigen::VectorXd> sigma(speeds.speeds.data(),
                                                static_cast<Eigen::Index>(speeds.size()));
  const double inverse = out.mu.cwiseQuotient(sigma).sum();
  out.speed = std::clamp(1.0 / inverse, speeds.slowest(), speeds.fastest());
  return out;
}

std::vector<int> order_jobs(std::span<const int> intervals, std::span<const int> ids,
                            const std::vector<std::pair<int, int>>& edges) {
  const std::size_t n = intervals.size();
  for (const auto& [a, b] : edges)
    if (intervals[a] > intervals[b])
      throw InternalError("precedence " + std::to_string(ids[a]) + " -> " + std::to_string(ids[b]) +
                          " inverted by alpha-intervals (" + std::to_string(intervals[a]) + " > " +
                          std::to_string(intervals[b]) + ")");

  std::map<int, std::vector<int>> buckets;
  for (std::size_t i = 0; i < n; ++i) buckets[intervals[i]].push_back(static_cast<int>(i));

  std::vector<int> order;
  order.reserve(n);
  std::vector<int> indegree(n, 0);
  std::vector<std::vector<int>> successors(n);
  for (const auto& [a, b] : edges) {
    if (intervals[a] != intervals[b]) continue;
    successors[a].push_back(b);
    ++indegree[b];
  }
  const auto by_id = [&](int x, int y) { return ids[x] > ids[y]; };
  for (const auto& [tau, members] : buckets) {
    std::priority_queue<int, std::vector<int>, decltype(by_id)> ready(by_id);
    for (int i : members)
      if (indegree[i] == 0) ready.push(i);
    std::size_t placed = 0;
    while (!ready.empty()) {
      const int i = ready.top();
      ready.pop();
      order.push_back(i);
      ++placed;
      for (int b : successors[i])
        if (--indegree[b] == 0) ready.push(b);
    }
    if (placed != members.size()) throw InternalError("precedence cycle inside an alpha-interval");
  }
  return order;
}

int round_speed_down(double speed, const SpeedSet& speeds) {
  int chosen = 0;
  for (std::size_t j = 0; j < speeds.size(); ++j)
    if (speeds[j] <= speed * (1 + kRelTol)) chosen = static_cast<int>(j);
  return chosen;
}

int round_speed_up(double speed, const SpeedSet& speeds) {
  for (std::size_t j = 0; j < speeds.size(); ++j)
    if (speeds[j] >= speed * (1 - kRelTol)) return static_cast<int>(j);
  return -1;
}

int round_speed_energy_aware(double speed, const SpeedSet& speeds, const ConvexEnvelope& energy) {
  const int down = round_speed_down(speed, speeds);
  int up = round_speed_up(speed, speeds);
  if (up < 0 || up == down) return down;
  return energy.values(up) <= energy.values(down) ? up : down;
}

double default_alpha(const Instance& instance) {
  if (instance.objective == Objective::CompletionTime && instance.has_releases()) return std::sqrt(2.0) - 1.0;
  return 0.5;
}

double tardiness_gamma(double alpha, double epsilon) {
  require_alpha(alpha);
  return (1 + epsilon) / (alpha * (1 - alpha));
}

AlphaData compute_alpha_data(const Instance& instance, const LpSolution& solution, double alpha) {
  require_alpha(alpha);
  if (solution.index.jobs != static_cast<int>(instance.num_jobs()) ||
      solution.index.speeds != static_cast<int>(instance.num_speeds()))
    throw std::invalid_argument("LP solution does not match the instance");
  AlphaData data;
  data.alpha = alpha;
  const std::vector<int> taus = alpha_intervals(solution, alpha);
  std::vector<Eigen::MatrixXd> truncated = truncate(solution, alpha, taus);
  for (int i = 0; i < solution.index.jobs; ++i) {
    JobAlpha job;
    job.interval = taus[i];
    job.mass_before = solution.job_block(i).leftCols(taus[i] - 1).sum();
    const AlphaSpeed as = alpha_speed(truncated[i], instance.speeds, alpha);
    job.mu = as.mu;
    job.alpha_speed = as.speed;
    job.truncated = std::move(truncated[i]);
    data.jobs.push_back(std::move(job));
  }
  return data;
}

RoundingResult saias(const Instance& instance, const LpSolution& solution, double alpha) {
  if (instance.objective != Objective::CompletionTime)
    throw std::invalid_argument("saias needs the completion-time objective");
  RoundingResult result;
  result.alpha = compute_alpha_data(instance, solution, alpha);

  std::vector<int> taus;
  for (const JobAlpha& j : result.alpha.jobs) taus.push_back(j.interval);
  const std::vector<int> order = order_jobs(taus, job_ids(instance), instance.edges_by_index());

  std::vector<int> speed_index;
  for (std::size_t i = 0; i < instance.num_jobs(); ++i) {
    const double s = result.alpha.jobs[i].alpha_speed;
    const auto* table = std::get_if<TableEnergy>(&instance.jobs[i].energy);
    speed_index.push_back(
        table ? round_speed_energy_aware(s, instance.speeds, convexify(table->costs, instance.speeds))
              : round_speed_down(s, instance.speeds));
  }
  result.schedule = assemble_schedule(instance, order, speed_index);
  return result;
}

RoundingResult saias(const Instance& instance, const LpSolution& solution) {
  return saias(instance, solution, instance.alpha.value_or(default_alpha(instance)));
}

RoundingResult saias_t(const Instance& instance, const LpSolution& solution, double alpha) {
  if (instance.objective != Objective::Tardiness)
    throw std::invalid_argument("saias_t needs the tardiness objective");
  for (const Job& job : instance.jobs) {
    if (job.release != 0)
      throw ValidationError("job " + std::to_string(job.id) +
                            ": tardiness rounding requires zero release dates");
    if (!check_growth_condition(job.energy, instance.beta, instance.speeds))
      throw GrowthConditionError(
          "job " + std::to_string(job.id) +
          ": energy cost grows faster than gamma^(beta-1) for beta = " + std::to_string(instance.beta));
  }

  RoundingResult result;
  result.alpha = compute_alpha_data(instance, solution, alpha);
  result.gamma = tardiness_gamma(alpha, instance.epsilon);

  std::vector<int> taus;
  for (const JobAlpha& j : result.alpha.jobs) taus.push_back(j.interval);
  const std::vector<int> order = order_jobs(taus, job_ids(instance), instance.edges_by_index());

  std::vector<int> speed_index;
  for (std::size_t i = 0; i < instance.num_jobs(); ++i) {
    const double scaled = result.gamma * result.alpha.jobs[i].alpha_speed;
    const int j = round_speed_up(scaled, instance.speeds);
    if (j < 0)
      throw SpeedOverflowError("job " + std::to_string(instance.jobs[i].id) + ": scaled speed " +
                               std::to_string(scaled) + " exceeds the fastest speed " +
                               std::to_string(instance.speeds.fastest()) +
                               "; speed set cannot realize the gamma-scaled speed, extend it");
    speed_index.push_back(j);
  }
  result.schedule = assemble_schedule(instance, order, speed_index);
  return result;
}

RoundingResult saias_t(const Instance& instance, const LpSolution& solution) {
  return saias_t(instance, solution, instance.alpha.value_or(default_alpha(instance)));
}

}  // namespace easched
