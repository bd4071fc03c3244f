#include "easched/simplex.hpp"

#include <cerrno>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace easched {

namespace {

template <typename T>
void read_env(const char* name, T& target) {
  const char* raw = std::getenv(name);
  if (!raw || !*raw) return;
  char* end = nullptr;
  errno = 0;
  if constexpr (std::is_floating_point_v<T>) {
    const double v = std::strtod(raw, &end);
    if (errno == 0 && end && *end == '\0') {
      target = v;
      return;
    }
  } else {
    const long long v = std::strtoll(raw, &end, 10);
    if (errno == 0 && end && *end == '\0') {
      target = static_cast<T>(v);
      return;
    }
  }
  throw std::invalid_argument(std::string(name) + ": cannot parse '" + raw + "'");
}

}  // namespace

SolverConfig SolverConfig::from_environment() {
  SolverConfig config;
  read_env("EASCHED_FEAS_TOL", config.feasibility_tolerance);
  read_env("EASCHED_OPT_TOL", config.optimality_tolerance);
  read_env("EASCHED_MAX_ITER", config.max_iterations);
  config.check();
  return config;
}

void SolverConfig::check() const {
  if (!(feasibility_tolerance > 0 && feasibility_tolerance < 1))
    throw std::invalid_argument("feasibility tolerance must lie in (0, 1)");
  if (!(optimality_tolerance > 0 && optimality_tolerance < 1))
    throw std::invalid_argument("optimality tolerance must lie in (0, 1)");
  if (max_iterations <= 0) throw std::invalid_argument("iteration limit must be positive");
  if (degenerate_factor <= 0) throw std::invalid_argument("degenerate factor must be positive");
  if (refactor_interval <= 0) throw std::invalid_argument("refactor interval must be positive");
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal:
      return "optimal";
    case SolveStatus::Infeasible:
      return "infeasible";
    case SolveStatus::Unbounded:
      return "unbounded";
    case SolveStatus::IterationLimit:
      return "iteration_limit";
  }
  return "unknown";
}

template class BoundedPrimalSimplex<double>;
template class BoundedPrimalSimplex<long double>;

}  // namespace easched
