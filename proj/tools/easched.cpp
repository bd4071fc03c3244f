#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "easched/errors.hpp"
#include "easched/lp.hpp"
#include "easched/oracle.hpp"
#include "easched/pipeline.hpp"

namespace {

struct GenFlags {
  std::uint64_t seed = 1;
  int jobs = 5;
  int speeds = 3;
  std::string objective = "completion";
  std::string energy = "poly";
  double edge_density = 0.3;
  double release_max = 0.0;
  std::int64_t rho_max = 4;
  double delta = 1.0;
  bool geometric = false;
  double epsilon = 1.0;
  double beta = 2.0;
  double deadline_scale = 1.0;
  std::optional<double> alpha;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--seed", seed, "random seed");
    cmd->add_option("--n", jobs, "number of jobs")->check(CLI::PositiveNumber);
    cmd->add_option("--m", speeds, "number of speeds")->check(CLI::PositiveNumber);
    cmd->add_option("--objective", objective, "completion or tardiness")
        ->check(CLI::IsMember({"completion", "tardiness"}));
    cmd->add_option("--energy", energy, "poly or table")->check(CLI::IsMember({"poly", "table"}));
    cmd->add_option("--edge-density", edge_density, "probability of each forward precedence edge")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--release-max", release_max, "release dates uniform in [0, value]")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--rho-max", rho_max, "processing requirement uniform in [1, value]")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--delta", delta, "speed spacing parameter")->check(CLI::PositiveNumber);
    cmd->add_flag("--geometric", geometric, "exact (1 + delta) speed ladder");
    cmd->add_option("--epsilon", epsilon, "grid growth")->check(CLI::PositiveNumber);
    cmd->add_option("--beta", beta, "energy exponent")->check(CLI::Range(2.0, 1e6));
    cmd->add_option("--deadline-scale", deadline_scale,
                    "deadline range as a multiple of the slowest makespan")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--alpha", alpha, "alpha stored in the instance")->check(CLI::Range(1e-12, 1 - 1e-12));
  }

  easched::GeneratorConfig config() const {
    easched::GeneratorConfig c;
    c.objective = easched::objective_from_string(objective);
    c.energy = energy == "table" ? easched::EnergyKind::Table : easched::EnergyKind::Polynomial;
    c.edge_density = edge_density;
    c.release_max = release_max;
    c.rho_max = rho_max;
    c.delta = delta;
    c.geometric_speeds = geometric;
    c.epsilon = epsilon;
    c.beta = beta;
    c.deadline_scale = deadline_scale;
    c.alpha = alpha;
    return c;
  }
};

struct SolveFlags {
  std::optional<std::string> objective;
  std::optional<double> alpha;
  std::optional<double> epsilon;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--objective", objective, "completion or tardiness")
        ->check(CLI::IsMember({"completion", "tardiness"}));
    cmd->add_option("--alpha", alpha, "override alpha")->check(CLI::Range(1e-12, 1 - 1e-12));
    cmd->add_option("--epsilon", epsilon, "override grid growth")->check(CLI::PositiveNumber);
  }

  easched::SolveOptions options() const {
    easched::SolveOptions o;
    if (objective) o.objective = easched::objective_from_string(*objective);
    o.alpha = alpha;
    o.epsilon = epsilon;
    o.solver = easched::SolverConfig::from_environment();
    return o;
  }
};

int emit(const nlohmann::json& j, bool pretty) {
  std::cout << j.dump(pretty ? 2 : -1) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-aware single-machine scheduling: LP relaxation and alpha-point rounding"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "indented JSON output");

  GenFlags gen_flags;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "generate a random instance");
  gen_flags.add_to(gen);
  gen->add_option("-o,--output", gen_out, "write the instance to a file instead of stdout");

  std::string solve_path;
  SolveFlags solve_flags;
  bool solve_oracle = false;
  easched::BruteForceLimits solve_limits;
  auto* solve = app.add_subcommand("solve", "solve an instance with LP rounding");
  solve->add_option("instance", solve_path, "instance JSON file")->required()->check(CLI::ExistingFile);
  solve_flags.add_to(solve);
  solve->add_flag("--oracle", solve_oracle, "also compute the exact optimum");
  solve->add_option("--max-jobs", solve_limits.max_jobs, "oracle job limit");
  solve->add_option("--max-speeds", solve_limits.max_speeds, "oracle speed limit");

  std::string oracle_path;
  SolveFlags oracle_flags;
  easched::BruteForceLimits oracle_limits;
  auto* oracle = app.add_subcommand("oracle", "exact optimum by enumeration");
  oracle->add_option("instance", oracle_path, "instance JSON file")->required()->check(CLI::ExistingFile);
  oracle->add_option("--objective", oracle_flags.objective, "completion or tardiness")
      ->check(CLI::IsMember({"completion", "tardiness"}));
  oracle->add_option("--max-jobs", oracle_limits.max_jobs, "job limit");
  oracle->add_option("--max-speeds", oracle_limits.max_speeds, "speed limit");

  GenFlags bench_flags;
  int bench_count = 100;
  bool bench_no_oracle = false;
  easched::BruteForceLimits bench_limits{7, 8};
  auto* bench = app.add_subcommand("bench", "seeded batch with ratio report");
  bench_flags.add_to(bench);
  bench->add_option("--count", bench_count, "number of instances")->check(CLI::NonNegativeNumber);
  bench->add_flag("--no-oracle", bench_no_oracle, "skip the exact optimum");
  bench->add_option("--max-jobs", bench_limits.max_jobs, "oracle job limit");
  bench->add_option("--max-speeds", bench_limits.max_speeds, "oracle speed limit");

  std::string dump_path;
  std::string dump_out;
  SolveFlags dump_flags;
  auto* dump = app.add_subcommand("lp-dump", "write the LP relaxation in LP text format");
  dump->add_option("instance", dump_path, "instance JSON file")->required()->check(CLI::ExistingFile);
  dump->add_option("--objective", dump_flags.objective, "completion or tardiness")
      ->check(CLI::IsMember({"completion", "tardiness"}));
  dump->add_option("--epsilon", dump_flags.epsilon, "override grid growth")->check(CLI::PositiveNumber);
  dump->add_option("-o,--output", dump_out, "write to a file instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const easched::Instance inst =
          easched::generate(gen_flags.seed, gen_flags.jobs, gen_flags.speeds, gen_flags.config());
      if (!gen_out.empty()) {
        easched::save_instance(inst, gen_out);
        return 0;
      }
      std::cout << easched::dump_instance(inst, pretty ? 2 : -1) << '\n';
      return 0;
    }

    if (*solve) {
      const easched::Instance inst = easched::load_instance(solve_path);
      const easched::PipelineResult res = easched::solve_instance(inst, solve_flags.options());
      nlohmann::json out = easched::to_json(res);
      if (solve_oracle) {
        const easched::ExactResult exact = easched::brute_force(res.instance, solve_limits);
        out["report"]["oracle_cost"] = exact.cost;
        out["report"]["ratio_vs_oracle"] = res.schedule().cost.total / exact.cost;
      }
      emit(out, pretty);
      if (!res.feasibility.ok()) {
        std::cerr << "error: produced schedule is infeasible: " << res.feasibility.violations.front() << '\n';
        return 1;
      }
      return 0;
    }

    if (*oracle) {
      easched::Instance inst = easched::load_instance(oracle_path);
      inst = easched::apply_options(inst, oracle_flags.options());
      const easched::ExactResult exact = easched::brute_force(inst, oracle_limits);
      return emit(easched::to_json(exact, inst), pretty);
    }

    if (*bench) {
      easched::BenchConfig config;
      config.seed = bench_flags.seed;
      config.count = bench_count;
      config.jobs = bench_flags.jobs;
      config.speeds = bench_flags.speeds;
      config.with_oracle = !bench_no_oracle;
      config.generator = bench_flags.config();
      config.solve.solver = easched::SolverConfig::from_environment();
      config.limits = bench_limits;
      const easched::RatioReport report = easched::run_bench(config);
      emit(easched::to_json(report), pretty);
      if (report.failures > 0) std::cerr << "warning: " << report.failures << " instances failed\n";
      if (report.bound_violations > 0)
        std::cerr << "warning: " << report.bound_violations << " ratio bound violations\n";
      return 0;
    }

    if (*dump) {
      const easched::Instance inst =
          easched::apply_options(easched::load_instance(dump_path), dump_flags.options());
      const easched::IntervalLp lp = easched::build_interval_lp(inst, easched::build_grid(inst));
      if (dump_out.empty()) {
        easched::write_lp_text(std::cout, lp, inst);
        return 0;
      }
      std::ofstream file(dump_out);
      if (!file) throw std::runtime_error("cannot open " + dump_out);
      easched::write_lp_text(file, lp, inst);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
