#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "easched/evaluate.hpp"
#include "easched/instance.hpp"
#include "easched/lp.hpp"
#include "easched/oracle.hpp"
#include "easched/rounding.hpp"
#include "easched/simplex.hpp"
#include "easched/timegrid.hpp"

namespace easched {

struct SolveOptions {
  std::optional<Objective> objective;
  std::optional<double> alpha;
  std::optional<double> epsilon;
  SolverConfig solver;
};

/// Everything produced by grid -> LP -> simplex -> rounding -> evaluation.
struct PipelineResult {
  Instance instance;  // after option overrides
  TimeGrid grid;
  IntervalLp lp;
  LpSolution lp_solution;
  RoundingResult rounding;
  FeasibilityReport feasibility;
  double alpha = 0.5;
  double lp_bound = 0.0;
  long lp_iterations = 0;
  double theoretical_bound = 0.0;

  const Schedule& schedule() const { return rounding.schedule; }
  double ratio_vs_lp() const;
};

/// Applies overrides from `options` to a copy of the instance and validates it.
Instance apply_options(const Instance& instance, const SolveOptions& options);

/// Runs the full pipeline. Throws on any stage failure (HorizonError,
/// SpeedOverflowError, GrowthConditionError, InternalError when the LP solve is
/// not optimal).
PipelineResult solve_instance(const Instance& instance, const SolveOptions& options = {});

/// Guaranteed ratio of the rounded schedule over the LP bound for this alpha:
///  completion time, no releases: (1 + eps)(1 + delta) / (alpha (1 - alpha))
///  completion time, releases:    (1 + eps)(1 + delta)(1 + alpha) / (alpha (1 - alpha))
///  tardiness:                    (1 + eps)^(beta-1) (1 + delta)^(beta-1) / (alpha (1 - alpha))^beta
double theoretical_bound(const Instance& instance, double alpha);

struct RatioRecord {
  std::uint64_t seed = 0;
  double lp_bound = 0.0;
  double algorithm_cost = 0.0;
  std::optional<double> oracle_cost;
  double ratio_vs_lp = 0.0;
  std::optional<double> ratio_vs_oracle;
  double theoretical_bound = 0.0;
  std::string error;  // non-empty when the pipeline failed on this instance
};

struct RatioReport {
  std::vector<RatioRecord> records;
  double max_ratio_vs_lp = 0.0;
  double mean_ratio_vs_lp = 0.0;
  double max_ratio_vs_oracle = 0.0;
  double mean_ratio_vs_oracle = 0.0;
  int bound_violations = 0;
  int failures = 0;

  void summarise();
};

struct BenchConfig {
  std::uint64_t seed = 1;
  int count = 100;
  int jobs = 5;
  int speeds = 3;
  bool with_oracle = true;
  GeneratorConfig generator;
  SolveOptions solve;
  BruteForceLimits limits{7, 8};
};

/// Seeded batch: instance k uses seed `seed + k`. Deterministic.
RatioReport run_bench(const BenchConfig& config);

nlohmann::json to_json(const PipelineResult& result);
nlohmann::json to_json(const ExactResult& result, const Instance& instance);
nlohmann::json to_json(const RatioReport& report);
nlohmann::json grid_to_json(const TimeGrid& grid);

}  // namespace easched
