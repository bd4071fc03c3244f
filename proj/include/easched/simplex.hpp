#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "easched/lp.hpp"

namespace easched {

struct SolverConfig {
  double feasibility_tolerance = 1e-9;
  double optimality_tolerance = 1e-9;
  long max_iterations = 1'000'000;
  // Consecutive degenerate pivots, as a multiple of the row count, tolerated
  // before pricing switches to Bland's rule for the rest of the solve.
  int degenerate_factor = 3;
  // Pivots between refactorisations of the basis.
  int refactor_interval = 50;

  /// Defaults overridden by EASCHED_FEAS_TOL, EASCHED_OPT_TOL and
  /// EASCHED_MAX_ITER when set.
  static SolverConfig from_environment();

  /// Throws std::invalid_argument unless tolerances and limits are positive.
  void check() const;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, IterationLimit };

const char* to_string(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::IterationLimit;
  Eigen::VectorXd x;
  double objective = 0.0;
  long iterations = 0;
  double max_residual = 0.0;        // row and bound violation of x
  double worst_reduced_cost = 0.0;  // most negative sign-adjusted reduced cost
};

/// Anything able to solve an LpModel to optimality.
class LpSolver {
 public:
  virtual ~LpSolver() = default;
  virtual SolveResult solve(const LpModel& model) const = 0;
};

/// Two-phase primal simplex on a dense tableau with bounded variables.
/// Dantzig pricing, switching to Bland's rule after a run of degenerate pivots.
/// Fixed columns (upper == lower) are removed before the solve.
template <typename Scalar>
class BoundedPrimalSimplex final : public LpSolver {
 public:
  explicit BoundedPrimalSimplex(SolverConfig config = {}) : config_(config) { config_.check(); }

  SolveResult solve(const LpModel& model) const override;

  const SolverConfig& config() const { return config_; }

 private:
  SolverConfig config_;
};

using PrimalSimplex = BoundedPrimalSimplex<double>;

namespace detail {

template <typename Scalar>
class Tableau {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

  enum class Outcome { Optimal, Unbounded, IterationLimit };

  Tableau(const LpModel& model, const SolverConfig& config);

  bool trivially_infeasible() const { return bad_bounds_; }
  bool needs_phase_one() const { return num_artificial_ > 0; }

  void start_phase_one();
  Scalar artificial_mass() const;
  void drop_artificials();
  void start_phase_two();

  Outcome run(long& iterations);

  Eigen::VectorXd primal() const;
  Scalar worst_reduced_cost() const;

 private:
  static constexpr Scalar kInf = std::numeric_limits<Scalar>::infinity();

  int rows() const { return static_cast<int>(xb_.size()); }
  int cols() const { return static_cast<int>(tab_.cols()); }
  bool is_artificial(int j) const { return j >= first_artificial_; }

  int price() const;
  void pivot(int r, int q);
  void refactor();
  void reset_reduced_costs();
  Scalar nonbasic_value(int j) const { return at_upper_[j] ? range_(j) : Scalar(0); }

  const SolverConfig& config_;
  Scalar feas_tol_;
  Scalar opt_tol_;
  Scalar pivot_tol_ = Scalar(1e-11);

  Matrix original_;  // sign-normalised constraint matrix incl. slacks/artificials
  Vector rhs_;       // shifted right-hand side
  Matrix tab_;       // B^{-1} * original_
  Vector xb_;
  Vector range_;
  Vector cost_;
  Vector phase_two_cost_;
  Vector reduced_;
  std::vector<int> basis_;
  std::vector<int> position_;
  std::vector<char> at_upper_;
  std::vector<char> enterable_;

  std::vector<int> kept_;  // structural columns that survive presolve
  Eigen::VectorXd lower_;
  Eigen::VectorXd upper_;
  int first_artificial_ = 0;
  int num_artificial_ = 0;
  bool bad_bounds_ = false;
  bool bland_ = false;
  int degenerate_run_ = 0;
  int since_refactor_ = 0;
};

template <typename Scalar>
Tableau<Scalar>::Tableau(const LpModel& model, const SolverConfig& config)
    : config_(config),
      feas_tol_(static_cast<Scalar>(config.feasibility_tolerance)),
      opt_tol_(static_cast<Scalar>(config.optimality_tolerance)),
      lower_(model.lower),
      upper_(model.upper) {
  const int m = model.num_rows();
  const int n = model.num_columns();

  for (int j = 0; j < n; ++j) {
    if (!(model.lower(j) <= model.upper(j)) || !std::isfinite(model.lower(j))) {
      bad_bounds_ = true;
    } else if (model.upper(j) > model.lower(j)) {
      kept_.push_back(j);
    }
  }

  // b' = b - A * lower, covering fixed columns as well.
  Eigen::VectorXd shifted = model.rhs - model.rows * model.lower;

  int slacks = 0;
  for (RowSense s : model.sense) slacks += s != RowSense::Equal;

  const int structural = static_cast<int>(kept_.size());
  std::vector<double> sign(m, 1.0);
  std::vector<int> slack_of_row(m, -1);
  int next_slack = structural;
  for (int r = 0; r < m; ++r) {
    if (model.sense[r] != RowSense::Equal) slack_of_row[r] = next_slack++;
    if (shifted(r) < 0) sign[r] = -1.0;
  }
  // A row can start from its slack only if the slack enters with +1 after
  // making the right-hand side non-negative.
  std::vector<int> artificial_of_row(m, -1);
  first_artificial_ = structural + slacks;
  for (int r = 0; r < m; ++r) {
    double slack_coef = 0.0;
    if (model.sense[r] == RowSense::LessEqual) slack_coef = sign[r];
    if (model.sense[r] == RowSense::GreaterEqual) slack_coef = -sign[r];
    if (slack_coef <= 0.0) artificial_of_row[r] = first_artificial_ + num_artificial_++;
  }

  const int total = first_artificial_ + num_artificial_;
  original_ = Matrix::Zero(m, total);
  std::vector<int> column_slot(n, -1);
  for (int k = 0; k < structural; ++k) column_slot[kept_[k]] = k;
  for (int r = 0; r < m; ++r) {
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(model.rows, r); it; ++it) {
      const int slot = column_slot[it.col()];
      if (slot >= 0) original_(r, slot) += static_cast<Scalar>(sign[r] * it.value());
    }
    if (slack_of_row[r] >= 0) {
      const double coef = model.sense[r] == RowSense::LessEqual ? 1.0 : -1.0;
      original_(r, slack_of_row[r]) = static_cast<Scalar>(sign[r] * coef);
    }
    if (artificial_of_row[r] >= 0) original_(r, artificial_of_row[r]) = Scalar(1);
  }
  rhs_.resize(m);
  for (int r = 0; r < m; ++r) rhs_(r) = static_cast<Scalar>(sign[r] * shifted(r));

  range_ = Vector::Constant(total, kInf);
  for (int k = 0; k < structural; ++k) {
    const double span = model.upper(kept_[k]) - model.lower(kept_[k]);
    range_(k) = std::isfinite(span) ? static_cast<Scalar>(span) : kInf;
  }

  phase_two_cost_ = Vector::Zero(total);
  for (int k = 0; k < structural; ++k) phase_two_cost_(k) = static_cast<Scalar>(model.cost(kept_[k]));

  basis_.resize(m);
  position_.assign(total, -1);
  at_upper_.assign(total, 0);
  enterable_.assign(total, 1);
  for (int r = 0; r < m; ++r) {
    basis_[r] = artificial_of_row[r] >= 0 ? artificial_of_row[r] : slack_of_row[r];
    position_[basis_[r]] = r;
  }
  tab_ = original_;  // the starting basis is an identity
  xb_ = rhs_;
  cost_ = phase_two_cost_;
}

template <typename Scalar>
void Tableau<Scalar>::reset_reduced_costs() {
  Vector basic_cost(rows());
  for (int r = 0; r < rows(); ++r) basic_cost(r) = cost_(basis_[r]);
  reduced_ = cost_ - tab_.transpose() * basic_cost;
  for (int r = 0; r < rows(); ++r) reduced_(basis_[r]) = Scalar(0);
}

template <typename Scalar>
void Tableau<Scalar>::start_phase_one() {
  cost_ = Vector::Zero(cols());
  for (int j = first_artificial_; j < cols(); ++j) cost_(j) = Scalar(1);
  reset_reduced_costs();
}

template <typename Scalar>
Scalar Tableau<Scalar>::artificial_mass() const {
  Scalar mass(0);
  for (int r = 0; r < rows(); ++r)
    if (is_artificial(basis_[r])) mass += std::abs(xb_(r));
  return mass;
}

template <typename Scalar>
void Tableau<Scalar>::drop_artificials() {
  for (int r = 0; r < rows(); ++r) {
    if (!is_artificial(basis_[r])) continue;
    int best = -1;
    Scalar best_abs(1e-9);
    for (int j = 0; j < first_artificial_; ++j) {
      if (position_[j] >= 0 || range_(j) == Scalar(0)) continue;
      const Scalar a = std::abs(tab_(r, j));
      if (a > best_abs) {
        best_abs = a;
        best = j;
      }
    }
    // No candidate: the row is redundant and its artificial stays basic at zero.
    if (best >= 0) {
      const Scalar value = nonbasic_value(best);
      const int leaving = basis_[r];
      pivot(r, best);
      xb_(r) = value;
      at_upper_[leaving] = 0;
    }
  }
  for (int j = first_artificial_; j < cols(); ++j) {
    enterable_[j] = 0;
    range_(j) = Scalar(0);
  }
}

template <typename Scalar>
void Tableau<Scalar>::start_phase_two() {
  cost_ = phase_two_cost_;
  bland_ = false;
  degenerate_run_ = 0;
  refactor();
}

template <typename Scalar>
int Tableau<Scalar>::price() const {
  int chosen = -1;
  Scalar best(0);
  for (int j = 0; j < cols(); ++j) {
    if (position_[j] >= 0 || !enterable_[j] || range_(j) == Scalar(0)) continue;
    const Scalar d = reduced_(j);
    const bool improving = at_upper_[j] ? d > opt_tol_ : d < -opt_tol_;
    if (!improving) continue;
    if (bland_) return j;
    if (std::abs(d) > best) {
      best = std::abs(d);
      chosen = j;
    }
  }
  return chosen;
}

template <typename Scalar>
void Tableau<Scalar>::pivot(int r, int q) {
  const Scalar piv = tab_(r, q);
  tab_.row(r) /= piv;
  const RowVector pivot_row = tab_.row(r);
  Vector column = tab_.col(q);
  column(r) = Scalar(0);
  tab_.noalias() -= column * pivot_row;
  tab_.col(q).setZero();
  tab_(r, q) = Scalar(1);
  reduced_ -= reduced_(q) * pivot_row.transpose();
  reduced_(q) = Scalar(0);

  const int leaving = basis_[r];
  position_[leaving] = -1;
  basis_[r] = q;
  position_[q] = r;
  at_upper_[q] = 0;
  ++since_refactor_;
}

template <typename Scalar>
void Tableau<Scalar>::refactor() {
  since_refactor_ = 0;
  Matrix basis_matrix(rows(), rows());
  for (int r = 0; r < rows(); ++r) basis_matrix.col(r) = original_.col(basis_[r]);
  const Eigen::PartialPivLU<Matrix> lu(basis_matrix);
  tab_ = lu.solve(original_);
  Vector rhs = rhs_;
  for (int j = 0; j < cols(); ++j)
    if (position_[j] < 0 && at_upper_[j]) rhs -= range_(j) * original_.col(j);
  xb_ = lu.solve(rhs);
  for (int r = 0; r < rows(); ++r) {
    tab_.col(basis_[r]).setZero();
    tab_(r, basis_[r]) = Scalar(1);
  }
  reset_reduced_costs();
}

template <typename Scalar>
typename Tableau<Scalar>::Outcome Tableau<Scalar>::run(long& iterations) {
  const Scalar tie_tol(1e-12);
  for (;;) {
    const int q = price();
    if (q < 0) {
      // Confirm optimality on a fresh factorisation before stopping.
      if (since_refactor_ == 0) return Outcome::Optimal;
      refactor();
      if (price() < 0) return Outcome::Optimal;
      continue;
    }
    if (iterations >= config_.max_iterations) return Outcome::IterationLimit;
    ++iterations;

    const Scalar dir = at_upper_[q] ? Scalar(-1) : Scalar(1);
    int leave = -1;
    bool leave_at_upper = false;
    Scalar theta = kInf;
    Scalar leave_alpha(0);
    for (int r = 0; r < rows(); ++r) {
      const Scalar alpha = dir * tab_(r, q);
      Scalar limit;
      bool to_upper;
      if (alpha > pivot_tol_) {
        limit = std::max(xb_(r), Scalar(0)) / alpha;
        to_upper = false;
      } else if (alpha < -pivot_tol_ && range_(basis_[r]) < kInf) {
        limit = std::max(range_(basis_[r]) - xb_(r), Scalar(0)) / -alpha;
        to_upper = true;
      } else {
        continue;
      }
      bool take = false;
      if (leave < 0 || limit < theta - tie_tol) {
        take = true;
      } else if (limit <= theta + tie_tol) {
        take = bland_ ? basis_[r] < basis_[leave] : std::abs(alpha) > std::abs(leave_alpha);
      }
      if (take) {
        leave = r;
        theta = limit;
        leave_at_upper = to_upper;
        leave_alpha = alpha;
      }
    }

    const bool flip = range_(q) < kInf && (leave < 0 || range_(q) <= theta);
    if (leave < 0 && !flip) return Outcome::Unbounded;
    const Scalar step = flip ? range_(q) : theta;

    xb_ -= (step * dir) * tab_.col(q);
    if (flip) {
      at_upper_[q] = !at_upper_[q];
    } else {
      const Scalar entering_value = at_upper_[q] ? range_(q) - step : step;
      const int leaving = basis_[leave];
      pivot(leave, q);
      at_upper_[leaving] = leave_at_upper;
      xb_(leave) = entering_value;
      if (since_refactor_ >= config_.refactor_interval) refactor();
    }

    if (step <= feas_tol_) {
      if (++degenerate_run_ > config_.degenerate_factor * std::max(rows(), 1)) bland_ = true;
    } else {
      degenerate_run_ = 0;
    }
  }
}

template <typename Scalar>
Eigen::VectorXd Tableau<Scalar>::primal() const {
  Eigen::VectorXd x = lower_;
  for (std::size_t k = 0; k < kept_.size(); ++k) {
    const int j = static_cast<int>(k);
    const Scalar shifted = position_[j] >= 0 ? xb_(position_[j]) : nonbasic_value(j);
    x(kept_[k]) = lower_(kept_[k]) + static_cast<double>(shifted);
    x(kept_[k]) = std::clamp(x(kept_[k]), lower_(kept_[k]), upper_(kept_[k]));
  }
  return x;
}

template <typename Scalar>
Scalar Tableau<Scalar>::worst_reduced_cost() const {
  Scalar worst(0);
  for (int j = 0; j < first_artificial_; ++j) {
    if (position_[j] >= 0 || range_(j) == Scalar(0)) continue;
    const Scalar d = at_upper_[j] ? -reduced_(j) : reduced_(j);
    worst = std::min(worst, d);
  }
  return worst;
}

}  // namespace detail

template <typename Scalar>
SolveResult BoundedPrimalSimplex<Scalar>::solve(const LpModel& model) const {
  SolveResult result;
  detail::Tableau<Scalar> tableau(model, config_);
  if (tableau.trivially_infeasible()) {
    result.status = SolveStatus::Infeasible;
    return result;
  }

  using Outcome = typename detail::Tableau<Scalar>::Outcome;
  long iterations = 0;
  if (tableau.needs_phase_one()) {
    tableau.start_phase_one();
    const Outcome outcome = tableau.run(iterations);
    result.iterations = iterations;
    if (outcome == Outcome::IterationLimit) {
      result.status = SolveStatus::IterationLimit;
      return result;
    }
    const double scale = 1.0 + model.rhs.lpNorm<Eigen::Infinity>();
    if (static_cast<double>(tableau.artificial_mass()) > config_.feasibility_tolerance * scale) {
      result.status = SolveStatus::Infeasible;
      return result;
    }
    tableau.drop_artificials();
  }
  tableau.start_phase_two();
  const Outcome outcome = tableau.run(iterations);
  result.iterations = iterations;
  if (outcome == Outcome::Unbounded) {
    result.status = SolveStatus::Unbounded;
    return result;
  }
  if (outcome == Outcome::IterationLimit) {
    result.status = SolveStatus::IterationLimit;
    return result;
  }

  result.status = SolveStatus::Optimal;
  result.x = tableau.primal();
  result.objective = model.cost.dot(result.x);
  result.max_residual = model.max_residual(result.x);
  result.worst_reduced_cost = static_cast<double>(tableau.worst_reduced_cost());
  return result;
}

extern template class BoundedPrimalSimplex<double>;
extern template class BoundedPrimalSimplex<long double>;

}  // namespace easched
