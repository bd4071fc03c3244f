#include "easched/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "easched/errors.hpp"

namespace easched {

namespace {

constexpr double kRatioTol = 1e-9;

double ratio(double numerator, double denominator) {
  if (denominator > 0) return numerator / denominator;
  return numerator <= 0 ? 1.0 : std::numeric_limits<double>::infinity();
}

nlohmann::json schedule_json(const Instance& inst, const Schedule& s) {
  nlohmann::json order = nlohmann::json::array();
  for (int i : s.order) order.push_back(inst.jobs[i].id);
  nlohmann::json jobs = nlohmann::json::array();
  for (std::size_t k = 0; k < s.order.size(); ++k) {
    const int i = s.order[k];
    const Job& job = inst.jobs[i];
    nlohmann::json j = {{"id", job.id},
                        {"speed", s.speed(i)},
                        {"speed_index", s.speed_index[i] + 1},
                        {"start", s.start(i)},
                        {"completion", s.completion(i)}};
    if (inst.objective == Objective::Tardiness)
      j["tardiness"] = std::max(s.completion(i) - job.deadline, 0.0);
    jobs.push_back(std::move(j));
  }
  return {
      {"order", order},
      {"jobs", jobs},
      {"cost",
       {{"energy", s.cost.energy_total}, {"scheduling", s.cost.scheduling_total}, {"total", s.cost.total}}}};
}

}  // namespace

double PipelineResult::ratio_vs_lp() const { return ratio(schedule().cost.total, lp_bound); }

Instance apply_options(const Instance& instance, const SolveOptions& options) {
  Instance out = instance;
  if (options.objective) out.objective = *options.objective;
  if (options.alpha) out.alpha = *options.alpha;
  if (options.epsilon) out.epsilon = *options.epsilon;
  require_valid(out);
  return out;
}

double theoretical_bound(const Instance& instance, double alpha) {
  const double eps = instance.epsilon;
  const double delta = instance.speeds.delta;
  const double a = alpha * (1 - alpha);
  if (instance.objective == Objective::Tardiness) {
    const double beta = instance.beta;
    return std::pow((1 + eps) * (1 + delta), beta - 1) / std::pow(a, beta);
  }
  const double base = (1 + eps) * (1 + delta) / a;
  return instance.has_releases() ? base * (1 + alpha) : base;
}

PipelineResult solve_instance(const Instance& instance, const SolveOptions& options) {
  PipelineResult r;
  r.instance = apply_options(instance, options);
  const Instance& inst = r.instance;
  r.alpha = inst.alpha.value_or(default_alpha(inst));
  r.grid = build_grid(inst);
  r.lp = build_interval_lp(inst, r.grid);

  const PrimalSimplex solver(options.solver);
  const SolveResult solved = solver.solve(r.lp.model);
  r.lp_iterations = solved.iterations;
  if (solved.status != SolveStatus::Optimal)
    throw InternalError(std::string("LP relaxation not solved: ") + to_string(solved.status));
  r.lp_solution = make_lp_solution(r.lp, solved.x);
  r.lp_bound = objective_lower_bound(r.lp_solution);

  r.rounding = inst.objective == Objective::CompletionTime ? saias(inst, r.lp_solution, r.alpha)
                                                           : saias_t(inst, r.lp_solution, r.alpha);
  r.feasibility = check_feasible(inst, r.rounding.schedule);
  r.theoretical_bound = theoretical_bound(inst, r.alpha);
  return r;
}

void RatioReport::summarise() {
  max_ratio_vs_lp = mean_ratio_vs_lp = 0;
  max_ratio_vs_oracle = mean_ratio_vs_oracle = 0;
  bound_violations = failures = 0;
  int solved = 0;
  int with_oracle = 0;
  for (const RatioRecord& rec : records) {
    if (!rec.error.empty()) {
      ++failures;
      continue;
    }
    ++solved;
    max_ratio_vs_lp = std::max(max_ratio_vs_lp, rec.ratio_vs_lp);
    mean_ratio_vs_lp += rec.ratio_vs_lp;
    bool violated =
        rec.ratio_vs_lp < 1 - kRatioTol || rec.ratio_vs_lp > rec.theoretical_bound * (1 + kRatioTol);
    if (rec.ratio_vs_oracle) {
      ++with_oracle;
      max_ratio_vs_oracle = std::max(max_ratio_vs_oracle, *rec.ratio_vs_oracle);
      mean_ratio_vs_oracle += *rec.ratio_vs_oracle;
      violated = violated || *rec.ratio_vs_oracle < 1 - kRatioTol ||
                 *rec.ratio_vs_oracle > rec.theoretical_bound * (1 + kRatioTol);
    }
    if (violated) ++bound_violations;
  }
  if (solved > 0) mean_ratio_vs_lp /= solved;
  if (with_oracle > 0) mean_ratio_vs_oracle /= with_oracle;
}

RatioReport run_bench(const BenchConfig& config) {
  if (config.count < 0) throw std::invalid_argument("bench count must be non-negative");
  RatioReport report;
  for (int k = 0; k < config.count; ++k) {
    RatioRecord rec;
    rec.seed = config.seed + static_cast<std::uint64_t>(k);
    try {
      const Instance inst = generate(rec.seed, config.jobs, config.speeds, config.generator);
      const PipelineResult res = solve_instance(inst, config.solve);
      if (!res.feasibility.ok())
        throw InternalError("infeasible schedule: " + res.feasibility.violations.front());
      rec.lp_bound = res.lp_bound;
      rec.algorithm_cost = res.schedule().cost.total;
      rec.ratio_vs_lp = res.ratio_vs_lp();
      rec.theoretical_bound = res.theoretical_bound;
      if (config.with_oracle) {
        const ExactResult exact = brute_force(res.instance, config.limits);
        rec.oracle_cost = exact.cost;
        rec.ratio_vs_oracle = ratio(rec.algorithm_cost, exact.cost);
      }
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
    report.records.push_back(std::move(rec));
  }
  report.summarise();
  return report;
}

nlohmann::json grid_to_json(const TimeGrid& grid) {
  return {{"kappa", grid.kappa},
          {"epsilon", grid.epsilon},
          {"intervals", grid.horizon_index()},
          {"tau", std::vector<double>(grid.tau.data(), grid.tau.data() + grid.tau.size())}};
}

nlohmann::json to_json(const PipelineResult& r) {
  const Instance& inst = r.instance;
  nlohmann::json alpha_jobs = nlohmann::json::array();
  for (std::size_t i = 0; i < inst.num_jobs(); ++i) {
    const JobAlpha& ja = r.rounding.alpha.jobs[i];
    alpha_jobs.push_back(
        {{"id", inst.jobs[i].id},
         {"alpha_interval", ja.interval},
         {"alpha_speed", ja.alpha_speed},
         {"fractional_completion", fractional_completion(r.lp_solution, r.grid, static_cast<int>(i))}});
  }
  nlohmann::json out = schedule_json(inst, r.schedule());
  out["objective"] = to_string(inst.objective);
  out["alpha"] = r.alpha;
  out["epsilon"] = inst.epsilon;
  out["delta"] = inst.speeds.delta;
  if (inst.objective == Objective::Tardiness) {
    out["beta"] = inst.beta;
    out["gamma"] = r.rounding.gamma;
  }
  out["grid"] = grid_to_json(r.grid);
  out["lp"] = {{"columns", r.lp.model.num_columns()},
               {"rows", r.lp.model.num_rows()},
               {"iterations", r.lp_iterations},
               {"bound", r.lp_bound}};
  out["rounding"] = alpha_jobs;
  out["feasible"] = r.feasibility.ok();
  out["violations"] = r.feasibility.violations;
  out["report"] = {{"lp_bound", r.lp_bound},
                   {"algorithm_cost", r.schedule().cost.total},
                   {"ratio_vs_lp", r.ratio_vs_lp()},
                   {"theoretical_bound", r.theoretical_bound}};
  return out;
}

nlohmann::json to_json(const ExactResult& result, const Instance& instance) {
  nlohmann::json out = schedule_json(instance, result.schedule);
  out["method"] = result.method == ExactMethod::BruteForce ? "brute_force" : "special_case_order";
  out["objective"] = to_string(instance.objective);
  out["optimal_cost"] = result.cost;
  return out;
}

nlohmann::json to_json(const RatioReport& report) {
  nlohmann::json records = nlohmann::json::array();
  for (const RatioRecord& rec : report.records) {
    nlohmann::json j = {{"seed", rec.seed}};
    if (!rec.error.empty()) {
      j["error"] = rec.error;
    } else {
      j["lp_bound"] = rec.lp_bound;
      j["algorithm_cost"] = rec.algorithm_cost;
      j["ratio_vs_lp"] = rec.ratio_vs_lp;
      j["theoretical_bound"] = rec.theoretical_bound;
      if (rec.oracle_cost) {
        j["oracle_cost"] = *rec.oracle_cost;
        j["ratio_vs_oracle"] = *rec.ratio_vs_oracle;
      }
    }
    records.push_back(std::move(j));
  }
  return {{"instances", records},
          {"aggregate",
           {{"count", report.records.size()},
            {"failures", report.failures},
            {"bound_violations", report.bound_violations},
            {"max_ratio_vs_lp", report.max_ratio_vs_lp},
            {"mean_ratio_vs_lp", report.mean_ratio_vs_lp},
            {"max_ratio_vs_oracle", report.max_ratio_vs_oracle},
            {"mean_ratio_vs_oracle", report.mean_ratio_vs_oracle}}}};
}

}  // namespace easched
