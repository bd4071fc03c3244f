#include "easched/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace easched {

namespace {

constexpr double kRelTol = 1e-12;

// Cross product sign of (b - a) x (c - a); <= 0 means b is not strictly below
// the chord from a to c.
double turn(double ax, double ay, double bx, double by, double cx, double cy) {
  return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
}

}  // namespace

int SpeedSet::index_of(double speed) const {
  for (std::size_t j = 0; j < speeds.size(); ++j)
    if (std::abs(speeds[j] - speed) <= kRelTol * speeds[j]) return static_cast<int>(j);
  return -1;
}

double ConvexEnvelope::operator()(double speed) const {
  const Eigen::Index m = speeds.size();
  if (m == 0) throw std::out_of_range("empty energy envelope");
  const double lo = speeds(0);
  const double hi = speeds(m - 1);
  if (speed < lo * (1 - kRelTol) || speed > hi * (1 + kRelTol))
    throw std::out_of_range("speed " + std::to_string(speed) + " outside tabulated range [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + "]");
  speed = std::clamp(speed, lo, hi);
  const auto* first = speeds.data();
  const auto* it = std::upper_bound(first, first + m, speed);
  Eigen::Index k = it - first;  // speeds(k - 1) <= speed < speeds(k)
  if (k >= m) return values(m - 1);
  if (k == 0) return values(0);
  const double lam = (speed - speeds(k - 1)) / (speeds(k) - speeds(k - 1));
  return (1 - lam) * values(k - 1) + lam * values(k);
}

ConvexEnvelope convexify(std::span<const double> costs, const SpeedSet& speeds) {
  const std::size_t m = speeds.size();
  if (costs.size() != m)
    throw std::invalid_argument("energy table has " + std::to_string(costs.size()) + " entries for " +
                                std::to_string(m) + " speeds");
  // Monotone chain, lower hull only; speeds are already sorted.
  std::vector<std::size_t> hull;
  for (std::size_t j = 0; j < m; ++j) {
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2];
      const std::size_t b = hull.back();
      if (turn(speeds[a], costs[a], speeds[b], costs[b], speeds[j], costs[j]) <= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(j);
  }

  ConvexEnvelope env;
  env.speeds = Eigen::Map<const Eigen::VectorXd>(speeds.speeds.data(), static_cast<Eigen::Index>(m));
  env.values.resize(static_cast<Eigen::Index>(m));
  if (hull.size() == 1) {
    env.values(0) = costs[0];
    return env;
  }
  std::size_t seg = 0;
  for (std::size_t j = 0; j < m; ++j) {
    while (hull[seg + 1] < j) ++seg;
    const std::size_t a = hull[seg];
    const std::size_t b = hull[seg + 1];
    const double lam = (speeds[j] - speeds[a]) / (speeds[b] - speeds[a]);
    env.values(j) = (1 - lam) * costs[a] + lam * costs[b];
  }
  return env;
}

double cost_at(const EnergyCostDescriptor& energy, double rho, double speed, const SpeedSet& speeds) {
  if (const auto* poly = std::get_if<PolynomialEnergy>(&energy))
    return poly->v * rho * std::pow(speed, poly->beta - 1);
  const auto& table = std::get<TableEnergy>(energy);
  return convexify(table.costs, speeds)(speed);
}

bool check_growth_condition(const EnergyCostDescriptor& energy, double beta, const SpeedSet& speeds,
                            std::span<const double> probe_gammas) {
  if (const auto* poly = std::get_if<PolynomialEnergy>(&energy)) return poly->beta <= beta + kRelTol;

  const ConvexEnvelope env = convexify(std::get<TableEnergy>(energy).costs, speeds);
  const double top = speeds.fastest();
  const auto holds = [&](double base, double gamma) {
    const double lhs = env(gamma * base);
    const double rhs = std::pow(gamma, beta - 1) * env(base);
    return lhs <= rhs + kRelTol * (1 + std::abs(rhs));
  };
  for (std::size_t j = 0; j < speeds.size(); ++j) {
    const double base = speeds[j];
    for (double g : probe_gammas) {
      if (g < 1) continue;
      const double effective = std::min(g * base, top) / base;
      if (!holds(base, effective)) return false;
    }
    for (std::size_t k = j + 1; k < speeds.size(); ++k)
      if (!holds(base, speeds[k] / base)) return false;
  }
  return true;
}

SpeedSet quantize_speed_range(double sigma_min, double sigma_max, double delta) {
  if (!(sigma_min > 0) || !(sigma_max >= sigma_min) || !std::isfinite(sigma_max))
    throw std::invalid_argument("speed range requires 0 < sigma_min <= sigma_max");
  if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
  SpeedSet set;
  set.delta = delta;
  for (int j = 0;; ++j) {
    const double s = sigma_min * std::pow(1 + delta, j);
    set.speeds.push_back(s);
    if (s >= sigma_max * (1 - kRelTol)) break;
  }
  return set;
}

}  // namespace easched
