#pragma once

#include <span>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "easched/speedset.hpp"

namespace easched {

/// E(s) = v * rho * s^(beta - 1).
struct PolynomialEnergy {
  double v = 1.0;
  double beta = 2.0;

  bool operator==(const PolynomialEnergy&) const = default;
};

/// Job-dependent cost of running the whole job at each grid speed. Values
/// between grid speeds come from the lower convex envelope of the table.
struct TableEnergy {
  std::vector<double> costs;

  bool operator==(const TableEnergy&) const = default;
};

using EnergyCostDescriptor = std::variant<PolynomialEnergy, TableEnergy>;

/// Convex, piecewise-linear cost over [sigma_1, sigma_m], stored by its values
/// at the grid speeds.
struct ConvexEnvelope {
  Eigen::VectorXd speeds;
  Eigen::VectorXd values;

  /// Linear interpolation between grid speeds. Throws std::out_of_range
  /// outside [sigma_1, sigma_m].
  double operator()(double speed) const;
};

/// Lower convex envelope of the points (sigma_j, cost_j).
ConvexEnvelope convexify(std::span<const double> costs, const SpeedSet& speeds);

/// Energy cost of running a job with requirement `rho` entirely at `speed`.
/// The table variant evaluates the convex envelope and rejects off-range
/// speeds.
double cost_at(const EnergyCostDescriptor& energy, double rho, double speed, const SpeedSet& speeds);

/// Ratios used to probe E(g * s) <= g^(beta - 1) * E(s).
inline constexpr double kDefaultProbeGammas[] = {1.0, 1.25, 1.5, 2.0, 4.0, 8.0};

/// Checks the growth condition E(g * s) <= g^(beta - 1) * E(s), g >= 1.
///
/// Polynomial costs are decided analytically (true iff their own exponent does
/// not exceed beta). Tables are probed at every grid speed s with each probe
/// ratio (clipped so that g * s stays within the speed range, with g reduced
/// accordingly) and with every ratio between two grid speeds.
bool check_growth_condition(const EnergyCostDescriptor& energy, double beta, const SpeedSet& speeds,
                            std::span<const double> probe_gammas = kDefaultProbeGammas);

/// Geometric ladder sigma_1 = sigma_min, sigma_j = (1 + delta) sigma_{j-1},
/// with the fewest speeds such that sigma_m >= sigma_max.
SpeedSet quantize_speed_range(double sigma_min, double sigma_max, double delta);

}  // namespace easched
