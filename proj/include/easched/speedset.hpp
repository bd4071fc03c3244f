#pragma once

#include <cstddef>
#include <vector>

namespace easched {

/// Discrete machine speeds sigma_1 < ... < sigma_m together with the declared
/// spacing bound delta (sigma_{j+1} <= (1 + delta) * sigma_j).
struct SpeedSet {
  std::vector<double> speeds;
  double delta = 1.0;

  std::size_t size() const { return speeds.size(); }
  double slowest() const { return speeds.front(); }
  double fastest() const { return speeds.back(); }
  double operator[](std::size_t j) const { return speeds[j]; }

  // Index of an exact member (relative tolerance 1e-12), or -1.
  int index_of(double speed) const;

  bool operator==(const SpeedSet&) const = default;
};

}  // namespace easched
