#include <cmath>
#include <random>

#include "doctest.h"

#include "easched/timegrid.hpp"
#include "support/fixtures.hpp"

using namespace easched;
using easched::testing::make_instance;
using easched::testing::poly_job;

TEST_CASE("grid for one job with two speeds") {
  const Instance inst = make_instance({poly_job(1, 2, 1.0)}, {1.0, 2.0});
  const TimeGrid g = build_grid(inst);
  CHECK(g.kappa == 1.0);
  CHECK(g.horizon_index() == 2);
  CHECK(g.tau(0) == 1.0);
  CHECK(g.tau(1) == 1.0);
  CHECK(g.tau(2) == 2.0);
}

TEST_CASE("grid for two unit jobs on one speed") {
  const Instance inst = make_instance({poly_job(1, 1, 1.0), poly_job(2, 1, 1.0)}, {1.0});
  const TimeGrid g = build_grid(inst);
  CHECK(g.kappa == 1.0);
  CHECK(g.horizon() == 2.0);
  CHECK(g.horizon_index() == 2);
}

TEST_CASE("horizon covers releases plus slowest total work") {
  Instance inst = make_instance({poly_job(1, 3, 1.0, 1.0, 2.0, 5.0), poly_job(2, 2, 1.0)}, {0.5, 1.0});
  const TimeGrid g = build_grid(inst);
  CHECK(g.kappa == 2.0);
  CHECK(g.horizon() >= 5.0 + 10.0);
  CHECK(g.tau(g.horizon_index() - 1) < 15.0);
}

TEST_CASE("larger epsilon gives a shorter grid") {
  Instance inst = make_instance({poly_job(1, 1, 1.0), poly_job(2, 7, 1.0), poly_job(3, 4, 1.0)}, {1.0, 2.0});
  inst.epsilon = 10.0;
  const int coarse = build_grid(inst).horizon_index();
  inst.epsilon = 0.1;
  const int fine = build_grid(inst).horizon_index();
  CHECK(coarse < fine);
}

TEST_CASE("consecutive boundaries grow by 1 + epsilon") {
  const TimeGrid g = make_grid(0.37, 0.3, 60);
  for (int t = 2; t <= g.horizon_index(); ++t) CHECK(std::abs(g.tau(t) / g.tau(t - 1) - 1.3) <= 1e-12 * 1.3);
}

TEST_CASE("interval lookup") {
  const TimeGrid g = make_grid(1.0, 1.0, 4);  // 1, 1, 2, 4, 8
  CHECK(interval_of(g, 1.0) == 1);
  CHECK(interval_of(g, 2.0) == 2);
  CHECK(interval_of(g, 4.0) == 3);
  CHECK(interval_of(g, 8.0) == 4);
  CHECK(interval_of(g, 2.0 + 1e-9) == 3);
  CHECK(interval_of(g, 1.5) == 2);
  CHECK_THROWS_AS(interval_of(g, 0.5), std::out_of_range);
  CHECK_THROWS_AS(interval_of(g, 9.0), std::out_of_range);
}

TEST_CASE("interval lookup is monotone") {
  const TimeGrid g = make_grid(0.25, 0.5, 12);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(g.kappa, g.horizon());
  std::vector<double> times(400);
  for (double& t : times) t = u(rng);
  std::sort(times.begin(), times.end());
  int prev = 1;
  for (double t : times) {
    const int k = interval_of(g, t);
    CHECK(k >= prev);
    CHECK(t <= g.tau(k) * (1 + 1e-12));
    if (k > 1) CHECK(t > g.tau(k - 1));
    prev = k;
  }
}

TEST_CASE("bad grid parameters") {
  CHECK_THROWS(make_grid(0.0, 1.0, 2));
  CHECK_THROWS(make_grid(1.0, 0.0, 2));
  CHECK_THROWS(make_grid(1.0, 1.0, 0));
}
