#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "easched/energy.hpp"
#include "easched/speedset.hpp"

namespace easched {

struct Job {
  int id = 0;
  std::int64_t rho = 1;  // machine cycles
  double weight = 1.0;
  double release = 0.0;
  double deadline = 0.0;  // only read by the tardiness objective
  EnergyCostDescriptor energy = PolynomialEnergy{};

  bool operator==(const Job&) const = default;
};

/// Edges (i1, i2) by job id, meaning i1 must precede i2.
struct PrecedenceDag {
  std::vector<std::pair<int, int>> edges;

  bool operator==(const PrecedenceDag&) const = default;
};

enum class Objective { CompletionTime, Tardiness };

/// A single-machine energy-aware scheduling problem. Immutable once built.
struct Instance {
  std::vector<Job> jobs;
  SpeedSet speeds;
  PrecedenceDag precedence;
  Objective objective = Objective::CompletionTime;
  std::optional<double> alpha;  // empty: algorithm default
  double epsilon = 1.0;
  double beta = 2.0;

  std::size_t num_jobs() const { return jobs.size(); }
  std::size_t num_speeds() const { return speeds.size(); }
  bool has_releases() const;

  /// Position of job `id` in `jobs`; throws std::out_of_range if absent.
  std::size_t index_of(int id) const;

  /// Precedence edges translated from ids to positions in `jobs`.
  std::vector<std::pair<int, int>> edges_by_index() const;

  bool operator==(const Instance&) const = default;
};

struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const Instance& instance);

/// Throws ValidationError listing every violation when the instance is invalid.
void require_valid(const Instance& instance);

/// Reads and validates an instance file. Throws ParseError on malformed input
/// (message names the offending field) and ValidationError on bad values.
Instance load_instance(const std::filesystem::path& path);
Instance parse_instance(const std::string& text);

void save_instance(const Instance& instance, const std::filesystem::path& path);
std::string dump_instance(const Instance& instance, int indent = 2);

enum class EnergyKind { Polynomial, Table };

struct GeneratorConfig {
  Objective objective = Objective::CompletionTime;
  EnergyKind energy = EnergyKind::Polynomial;
  double edge_density = 0.3;  // probability of each forward edge
  double release_max = 0.0;   // releases uniform in [0, release_max]
  std::int64_t rho_max = 4;   // rho uniform in [1, rho_max]
  double weight_min = 0.5;
  double weight_max = 3.0;
  double v_min = 0.5;
  double v_max = 2.0;
  double table_cost_max = 10.0;  // table entries uniform in [0, max * rho]
  double deadline_scale = 1.0;   // deadlines uniform in [0, scale * sum rho / sigma_1]
  double delta = 1.0;
  bool geometric_speeds = false;  // exact (1 + delta) ladder instead of random spacing
  double epsilon = 1.0;
  double beta = 2.0;
  std::optional<double> alpha;
};

/// Deterministic random instance with ids 1..n. Throws std::invalid_argument
/// on a bad configuration.
Instance generate(std::uint64_t seed, int n, int m, const GeneratorConfig& config = {});

const char* to_string(Objective objective);
Objective objective_from_string(const std::string& name);

}  // namespace easched
