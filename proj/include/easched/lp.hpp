#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "easched/instance.hpp"
#include "easched/timegrid.hpp"

namespace easched {

enum class RowSense { Equal, LessEqual, GreaterEqual };

/// A minimisation LP: min c'x subject to row constraints and lower <= x <= upper.
/// Lower bounds must be finite; upper bounds may be +inf.
struct LpModel {
  Eigen::VectorXd cost;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  Eigen::SparseMatrix<double, Eigen::RowMajor> rows;
  std::vector<RowSense> sense;
  Eigen::VectorXd rhs;
  std::vector<std::string> column_names;
  std::vector<std::string> row_names;

  int num_columns() const { return static_cast<int>(cost.size()); }
  int num_rows() const { return static_cast<int>(rhs.size()); }

  /// Largest violation of any row or bound by `x`.
  double max_residual(const Eigen::VectorXd& x) const;
};

/// Dense (job, speed, interval) -> column map. Jobs and speeds are 0-based,
/// intervals 1-based; the interval index varies fastest.
struct VarIndex {
  int jobs = 0;
  int speeds = 0;
  int intervals = 0;

  int size() const { return jobs * speeds * intervals; }
  int column(int i, int j, int t) const { return (i * speeds + j) * intervals + (t - 1); }
};

/// The interval-and-speed-indexed relaxation together with the data needed to
/// interpret its columns.
struct IntervalLp {
  LpModel model;
  VarIndex index;
  TimeGrid grid;
  Objective objective = Objective::CompletionTime;
  int precedence_rows = 0;
};

/// Builds the relaxation for the instance's objective.
IntervalLp build_interval_lp(const Instance& instance, const TimeGrid& grid);

/// Objective coefficient E_i(sigma_j) + w_i tau(t-1).
IntervalLp build_completion_lp(const Instance& instance, const TimeGrid& grid);

/// Objective coefficient E_i(sigma_j) + w_i (tau(t-1) - d_i)^+. Requires zero
/// release dates.
IntervalLp build_tardiness_lp(const Instance& instance, const TimeGrid& grid);

/// Fractional solution of an IntervalLp.
struct LpSolution {
  VarIndex index;
  Eigen::VectorXd x;
  double objective_value = 0.0;

  double value(int i, int j, int t) const { return x(index.column(i, j, t)); }

  /// The m x T block of job i (row = speed, column = interval - 1).
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> job_block(
      int i) const {
    return {x.data() + static_cast<Eigen::Index>(i) * index.speeds * index.intervals, index.speeds,
            index.intervals};
  }
};

/// Wraps a primal vector as an LpSolution after checking row residuals and the
/// per-job unit mass (1e-7). Values below zero by round-off are clamped.
LpSolution make_lp_solution(const IntervalLp& lp, const Eigen::VectorXd& x);

/// The relaxation optimum; never exceeds the optimal schedule cost.
double objective_lower_bound(const LpSolution& solution);

/// Fractional completion sum_{j,t} tau(t-1) x_ijt.
double fractional_completion(const LpSolution& solution, const TimeGrid& grid, int job);

/// CPLEX-style LP text (columns x_<id>_<speed>_<t>, 1-based speed and interval)
/// preceded by the grid as comments.
void write_lp_text(std::ostream& out, const IntervalLp& lp, const Instance& instance);

}  // namespace easched
