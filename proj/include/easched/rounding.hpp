#pragma once

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "easched/energy.hpp"
#include "easched/evaluate.hpp"
#include "easched/instance.hpp"
#include "easched/lp.hpp"

namespace easched {

/// Per-job quantities derived from the LP solution for a given alpha.
struct JobAlpha {
  int interval = 1;           // alpha-interval
  double mass_before = 0.0;   // LP mass in intervals before `interval`
  Eigen::MatrixXd truncated;  // m x T truncated solution, zero after `interval`
  Eigen::VectorXd mu;         // speed distribution
  double alpha_speed = 0.0;
};

struct AlphaData {
  double alpha = 0.5;
  std::vector<JobAlpha> jobs;
};

/// Alpha-speed together with the distribution it was built from.
struct AlphaSpeed {
  Eigen::VectorXd mu;
  double speed = 0.0;
};

// Cumulative-mass slack when locating alpha-intervals.
inline constexpr double kAlphaMassTolerance = 1e-10;

/// Smallest interval by which each job has accumulated alpha of its LP mass.
/// Throws InternalError if a job never reaches alpha.
std::vector<int> alpha_intervals(const LpSolution& solution, double alpha);

/// Truncated solution per job: intervals before the alpha-interval are kept,
/// the alpha-interval is filled in increasing speed order up to total alpha,
/// later intervals are dropped.
std::vector<Eigen::MatrixXd> truncate(const LpSolution& solution, double alpha,
                                      std::span<const int> intervals);

/// mu_j = (1/alpha) sum_u truncated(j, u) and 1/s = sum_j mu_j / sigma_j. The
/// distribution is normalised by the actual truncated mass, which equals alpha
/// up to the cumulative-mass tolerance.
AlphaSpeed alpha_speed(const Eigen::MatrixXd& truncated, const SpeedSet& speeds, double alpha);

/// Jobs sorted by alpha-interval; within an interval, a topological order of
/// the induced precedence graph taking the smallest job id first. Edges are by
/// job position. Throws InternalError if an edge points backwards across
/// intervals.
std::vector<int> order_jobs(std::span<const int> intervals, std::span<const int> ids,
                            const std::vector<std::pair<int, int>>& edges);

/// Largest grid speed not above `speed`.
int round_speed_down(double speed, const SpeedSet& speeds);

/// Smallest grid speed not below `speed`, or -1 if `speed` exceeds sigma_m.
int round_speed_up(double speed, const SpeedSet& speeds);

/// The neighbouring grid speed (floor or ceiling) of `speed` with the lower
/// envelope cost; the ceiling wins ties.
int round_speed_energy_aware(double speed, const SpeedSet& speeds, const ConvexEnvelope& energy);

struct RoundingResult {
  AlphaData alpha;
  Schedule schedule;
  double gamma = 1.0;  // speed scale factor (1 for completion time)
};

/// Default alpha: 1/2 without release dates or for tardiness, sqrt(2) - 1
/// with release dates.
double default_alpha(const Instance& instance);

/// gamma = (1 + eps) / (alpha (1 - alpha)).
double tardiness_gamma(double alpha, double epsilon);

/// Computes alpha-intervals, truncation and alpha-speeds without rounding.
AlphaData compute_alpha_data(const Instance& instance, const LpSolution& solution, double alpha);

/// Weighted completion time: order by alpha-intervals, round alpha-speeds down
/// (polynomial costs) or to the cheaper neighbour (tabulated costs).
RoundingResult saias(const Instance& instance, const LpSolution& solution, double alpha);
RoundingResult saias(const Instance& instance, const LpSolution& solution);

/// Weighted tardiness: as above, but alpha-speeds are scaled by gamma and
/// rounded up. Throws SpeedOverflowError when a scaled speed exceeds sigma_m,
/// GrowthConditionError when a tabulated cost fails the growth check, and
/// ValidationError when release dates are present.
RoundingResult saias_t(const Instance& instance, const LpSolution& solution, double alpha);
RoundingResult saias_t(const Instance& instance, const LpSolution& solution);

}  // namespace easched
