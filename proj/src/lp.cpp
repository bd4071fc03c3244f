#include "easched/lp.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>

#include "easched/errors.hpp"
#include "easched/evaluate.hpp"

namespace easched {

namespace {

constexpr double kRelTol = 1e-12;
constexpr double kSolutionTol = 1e-7;

using CoefficientFn = std::function<double(int job, double tau_prev)>;

IntervalLp build(const Instance& inst, const TimeGrid& grid, Objective objective,
                 const CoefficientFn& time_cost) {
  const int n = static_cast<int>(inst.num_jobs());
  const int m = static_cast<int>(inst.num_speeds());
  const int T = grid.horizon_index();
  if (n == 0 || m == 0 || T < 1) throw std::invalid_argument("empty instance or grid");

  std::int64_t rho_min = inst.jobs.front().rho;
  for (const Job& job : inst.jobs) rho_min = std::min(rho_min, job.rho);
  const double kappa = static_cast<double>(rho_min) / inst.speeds.fastest();
  if (std::abs(kappa - grid.kappa) > kRelTol * kappa ||
      std::abs(inst.epsilon - grid.epsilon) > kRelTol * inst.epsilon)
    throw std::invalid_argument("grid/instance mismatch: grid kappa or epsilon differs from instance");

  IntervalLp lp;
  lp.index = VarIndex{n, m, T};
  lp.grid = grid;
  lp.objective = objective;
  LpModel& model = lp.model;
  const int cols = lp.index.size();
  model.cost.resize(cols);
  model.lower = Eigen::VectorXd::Zero(cols);
  model.upper = Eigen::VectorXd::Ones(cols);
  model.column_names.resize(cols);

  const Eigen::MatrixXd energy = energy_table(inst);
  for (int i = 0; i < n; ++i) {
    const Job& job = inst.jobs[i];
    bool any_open = false;
    for (int j = 0; j < m; ++j) {
      const double earliest = job.release + static_cast<double>(job.rho) / inst.speeds[j];
      for (int t = 1; t <= T; ++t) {
        const int c = lp.index.column(i, j, t);
        model.cost(c) = energy(i, j) + time_cost(i, grid.tau(t - 1));
        model.column_names[c] =
            "x_" + std::to_string(job.id) + "_" + std::to_string(j + 1) + "_" + std::to_string(t);
        if (grid.tau(t) < earliest * (1 - kRelTol))
          model.upper(c) = 0.0;
        else
          any_open = true;
      }
    }
    if (!any_open)
      throw HorizonError("job " + std::to_string(job.id) +
                         " cannot complete within the time grid (horizon too short)");
  }

  const auto edges = inst.edges_by_index();
  const int rows = n + T + static_cast<int>(edges.size()) * T;
  std::vector<Eigen::Triplet<double>> triplets;
  model.sense.reserve(rows);
  model.rhs.resize(rows);
  model.row_names.reserve(rows);

  int r = 0;
  for (int i = 0; i < n; ++i, ++r) {
    for (int j = 0; j < m; ++j)
      for (int t = 1; t <= T; ++t) triplets.emplace_back(r, lp.index.column(i, j, t), 1.0);
    model.sense.push_back(RowSense::Equal);
    model.rhs(r) = 1.0;
    model.row_names.push_back("job_" + std::to_string(inst.jobs[i].id));
  }
  for (int t = 1; t <= T; ++t, ++r) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) {
        const double duration = static_cast<double>(inst.jobs[i].rho) / inst.speeds[j];
        for (int u = 1; u <= t; ++u) triplets.emplace_back(r, lp.index.column(i, j, u), duration);
      }
    model.sense.push_back(RowSense::LessEqual);
    model.rhs(r) = grid.tau(t);
    model.row_names.push_back("cap_" + std::to_string(t));
  }
  for (const auto& [a, b] : edges) {
    for (int t = 1; t <= T; ++t, ++r) {
      for (int j = 0; j < m; ++j)
        for (int u = 1; u <= t; ++u) {
          triplets.emplace_back(r, lp.index.column(a, j, u), 1.0);
          triplets.emplace_back(r, lp.index.column(b, j, u), -1.0);
        }
      model.sense.push_back(RowSense::GreaterEqual);
      model.rhs(r) = 0.0;
      model.row_names.push_back("prec_" + std::to_string(inst.jobs[a].id) + "_" +
                                std::to_string(inst.jobs[b].id) + "_" + std::to_string(t));
    }
  }
  lp.precedence_rows = static_cast<int>(edges.size()) * T;
  model.rows.resize(rows, cols);
  model.rows.setFromTriplets(triplets.begin(), triplets.end());
  return lp;
}

std::string num(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

}  // namespace

double LpModel::max_residual(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd ax = rows * x;
  double worst = 0;
  for (int r = 0; r < num_rows(); ++r) {
    const double gap = ax(r) - rhs(r);
    switch (sense[r]) {
      case RowSense::Equal:
        worst = std::max(worst, std::abs(gap));
        break;
      case RowSense::LessEqual:
        worst = std::max(worst, gap);
        break;
      case RowSense::GreaterEqual:
        worst = std::max(worst, -gap);
        break;
    }
  }
  worst = std::max(worst, (lower - x).maxCoeff());
  worst = std::max(worst, (x - upper).maxCoeff());
  return worst;
}

IntervalLp build_completion_lp(const Instance& instance, const TimeGrid& grid) {
  if (instance.objective != Objective::CompletionTime)
    throw std::invalid_argument("build_completion_lp needs the completion-time objective");
  return build(instance, grid, Objective::CompletionTime,
               [&](int i, double tau_prev) { return instance.jobs[i].weight * tau_prev; });
}

IntervalLp build_tardiness_lp(const Instance& instance, const TimeGrid& grid) {
  if (instance.objective != Objective::Tardiness)
    throw std::invalid_argument("build_tardiness_lp needs the tardiness objective");
  for (const Job& job : instance.jobs)
    if (job.release != 0)
      throw ValidationError("job " + std::to_string(job.id) +
                            ": tardiness relaxation requires zero release dates");
  return build(instance, grid, Objective::Tardiness, [&](int i, double tau_prev) {
    const Job& job = instance.jobs[i];
    return job.weight * std::max(tau_prev - job.deadline, 0.0);
  });
}

IntervalLp build_interval_lp(const Instance& instance, const TimeGrid& grid) {
  return instance.objective == Objective::CompletionTime ? build_completion_lp(instance, grid)
                                                         : build_tardiness_lp(instance, grid);
}

LpSolution make_lp_solution(const IntervalLp& lp, const Eigen::VectorXd& x) {
  if (x.size() != lp.index.size()) throw InternalError("LP solution has the wrong dimension");
  const double residual = lp.model.max_residual(x);
  if (residual > kSolutionTol) throw InternalError("LP solution violates constraints by " + num(residual));
  LpSolution sol;
  sol.index = lp.index;
  sol.x = x.cwiseMax(0.0);
  for (int i = 0; i < lp.index.jobs; ++i) {
    const double mass = sol.job_block(i).sum();
    if (std::abs(mass - 1.0) > kSolutionTol)
      throw InternalError("LP solution assigns mass " + num(mass) + " to job position " + std::to_string(i));
  }
  sol.objective_value = lp.model.cost.dot(sol.x);
  return sol;
}

double objective_lower_bound(const LpSolution& solution) { return solution.objective_value; }

double fractional_completion(const LpSolution& solution, const TimeGrid& grid, int job) {
  const auto block = solution.job_block(job);
  const Eigen::Index T = block.cols();
  return (block.colwise().sum().transpose().array() * grid.tau.head(T).array()).sum();
}

void write_lp_text(std::ostream& out, const IntervalLp& lp, const Instance& instance) {
  const LpModel& model = lp.model;
  const TimeGrid& grid = lp.grid;
  out << "\\ interval-indexed relaxation, objective: " << to_string(lp.objective) << '\n';
  out << "\\ jobs " << lp.index.jobs << ", speeds " << lp.index.speeds << ", intervals " << lp.index.intervals
      << '\n';
  out << "\\ kappa " << num(grid.kappa) << ", epsilon " << num(grid.epsilon) << '\n';
  for (Eigen::Index t = 0; t < grid.tau.size(); ++t)
    out << "\\ tau_" << t << " = " << num(grid.tau(t)) << '\n';
  for (std::size_t j = 0; j < instance.num_speeds(); ++j)
    out << "\\ speed_" << j + 1 << " = " << num(instance.speeds[j]) << '\n';

  const auto term = [&](double coef, int col) {
    return std::string(coef < 0 ? " - " : " + ") + num(std::abs(coef)) + " " + model.column_names[col];
  };
  out << "Minimize\n obj:";
  for (int c = 0; c < model.num_columns(); ++c) {
    out << term(model.cost(c), c);
    if (c % 6 == 5) out << "\n     ";
  }
  out << "\nSubject To\n";
  for (int r = 0; r < model.num_rows(); ++r) {
    out << ' ' << model.row_names[r] << ':';
    int k = 0;
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(model.rows, r); it; ++it, ++k) {
      out << term(it.value(), static_cast<int>(it.col()));
      if (k % 6 == 5) out << "\n   ";
    }
    switch (model.sense[r]) {
      case RowSense::Equal:
        out << " = ";
        break;
      case RowSense::LessEqual:
        out << " <= ";
        break;
      case RowSense::GreaterEqual:
        out << " >= ";
        break;
    }
    out << num(model.rhs(r)) << '\n';
  }
  out << "Bounds\n";
  for (int c = 0; c < model.num_columns(); ++c) {
    if (model.upper(c) == model.lower(c))
      out << ' ' << model.column_names[c] << " = " << num(model.lower(c)) << '\n';
    else
      out << ' ' << num(model.lower(c)) << " <= " << model.column_names[c] << " <= " << num(model.upper(c))
          << '\n';
  }
  out << "End\n";
}

}  // namespace easched
