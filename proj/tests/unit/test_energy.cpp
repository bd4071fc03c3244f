#include <random>
#include <vector>

#include "doctest.h"

#include "easched/energy.hpp"

using namespace easched;
using doctest::Approx;

TEST_CASE("polynomial cost") {
  const SpeedSet s{{1.0, 2.0}, 1.0};
  CHECK(cost_at(PolynomialEnergy{2.0, 3.0}, 3.0, 2.0, s) == Approx(24.0));
  CHECK(cost_at(PolynomialEnergy{1.0, 2.0}, 5.0, 1.0, s) == Approx(5.0));
}

TEST_CASE("polynomial cost is convex in speed") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.1, 10.0), lam(0.0, 1.0), beta(2.0, 4.0);
  const SpeedSet s{{1.0}, 1.0};
  for (int k = 0; k < 500; ++k) {
    const PolynomialEnergy e{u(rng), beta(rng)};
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    const double l = lam(rng);
    const double mid = cost_at(e, 2.0, l * a + (1 - l) * b, s);
    const double chord = l * cost_at(e, 2.0, a, s) + (1 - l) * cost_at(e, 2.0, b, s);
    CHECK(mid <= chord + 1e-9 * (1 + chord));
  }
}

TEST_CASE("table cost interpolates the envelope") {
  const SpeedSet s{{1.0, 2.0}, 1.0};
  const TableEnergy t{{5.0, 9.0}};
  CHECK(cost_at(t, 1.0, 1.5, s) == Approx(7.0));
  CHECK(cost_at(t, 1.0, 1.0, s) == 5.0);
  CHECK(cost_at(t, 1.0, 2.0, s) == 9.0);
  CHECK_THROWS_AS(cost_at(t, 1.0, 2.5, s), std::out_of_range);
  CHECK_THROWS_AS(cost_at(t, 1.0, 0.5, s), std::out_of_range);
}

TEST_CASE("convexify") {
  SUBCASE("convex table unchanged") {
    const SpeedSet s{{1.0, 2.0, 3.0, 4.0}, 1.0};
    const std::vector<double> c{1.0, 2.0, 4.0, 8.0};
    const ConvexEnvelope env = convexify(c, s);
    for (int j = 0; j < 4; ++j) CHECK(env.values(j) == Approx(c[j]));
  }
  SUBCASE("middle bump is cut by the chord") {
    const SpeedSet s{{1.0, 2.0, 3.0}, 1.0};
    const ConvexEnvelope env = convexify(std::vector<double>{0.0, 10.0, 0.0}, s);
    CHECK(env.values(0) == 0.0);
    CHECK(env.values(1) == Approx(0.0));
    CHECK(env.values(2) == 0.0);
  }
  SUBCASE("uneven spacing") {
    const SpeedSet s{{1.0, 1.5, 3.0}, 1.0};
    const ConvexEnvelope env = convexify(std::vector<double>{2.0, 10.0, 8.0}, s);
    CHECK(env.values(1) == Approx(2.0 + (8.0 - 2.0) * 0.5 / 2.0));
  }
  SUBCASE("single speed") {
    const SpeedSet s{{3.0}, 1.0};
    const ConvexEnvelope env = convexify(std::vector<double>{4.0}, s);
    CHECK(env.values(0) == 4.0);
    CHECK(env(3.0) == 4.0);
  }
  SUBCASE("length mismatch") {
    const SpeedSet s{{1.0, 2.0}, 1.0};
    CHECK_THROWS_AS(convexify(std::vector<double>{1.0}, s), std::invalid_argument);
  }
}

TEST_CASE("convexify output is discretely convex, below the table and idempotent") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> cost(0.0, 20.0), step(0.2, 1.0);
  for (int k = 0; k < 300; ++k) {
    const int m = 1 + k % 7;
    SpeedSet s;
    double v = 1.0;
    for (int j = 0; j < m; ++j) {
      s.speeds.push_back(v);
      v *= 1 + step(rng);
    }
    std::vector<double> c(m);
    for (double& x : c) x = cost(rng);
    const ConvexEnvelope env = convexify(c, s);
    for (int j = 0; j < m; ++j) CHECK(env.values(j) <= c[j] + 1e-12);
    for (int j = 1; j + 1 < m; ++j) {
      const double left = (env.values(j) - env.values(j - 1)) / (s[j] - s[j - 1]);
      const double right = (env.values(j + 1) - env.values(j)) / (s[j + 1] - s[j]);
      CHECK(left <= right + 1e-9);
    }
    const std::vector<double> again(env.values.data(), env.values.data() + m);
    const ConvexEnvelope twice = convexify(again, s);
    CHECK((twice.values - env.values).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("growth condition") {
  const SpeedSet s{{1.0, 1.1, 1.2, 2.0, 4.0}, 1.0};
  CHECK(check_growth_condition(PolynomialEnergy{1.0, 2.0}, 2.0, s));
  CHECK(check_growth_condition(PolynomialEnergy{1.0, 3.0}, 3.0, s));
  CHECK(check_growth_condition(PolynomialEnergy{1.0, 2.0}, 3.0, s));
  CHECK_FALSE(check_growth_condition(PolynomialEnergy{1.0, 3.0}, 2.0, s));

  CHECK(check_growth_condition(TableEnergy{{5.0, 5.0, 5.0, 5.0, 5.0}}, 2.0, s));
  CHECK(check_growth_condition(TableEnergy{{5.0, 5.0, 5.0, 5.0, 5.0}}, 3.0, s));
  CHECK_FALSE(check_growth_condition(TableEnergy{{1.0, 100.0, 200.0, 300.0, 400.0}}, 2.0, s));
  CHECK(check_growth_condition(TableEnergy{{1.0, 1.1, 1.2, 2.0, 4.0}}, 2.0, s));
}

TEST_CASE("quantize speed range") {
  CHECK(quantize_speed_range(1.0, 1.0, 0.5).speeds == std::vector<double>{1.0});
  CHECK(quantize_speed_range(1.0, 4.0, 1.0).speeds == std::vector<double>{1.0, 2.0, 4.0});
  CHECK(quantize_speed_range(1.0, 3.0, 1.0).speeds == std::vector<double>{1.0, 2.0, 4.0});
  const SpeedSet q = quantize_speed_range(0.7, 9.0, 0.3);
  CHECK(q.delta == 0.3);
  for (std::size_t j = 1; j < q.size(); ++j) CHECK(q[j] <= (1 + q.delta) * q[j - 1] * (1 + 1e-12));
  CHECK(q.fastest() >= 9.0);
  CHECK(q.speeds[q.size() - 2] < 9.0);
  CHECK_THROWS(quantize_speed_range(2.0, 1.0, 1.0));
  CHECK_THROWS(quantize_speed_range(1.0, 2.0, 0.0));
}

TEST_CASE("speed set lookup") {
  const SpeedSet s{{1.0, 1.5, 3.0}, 1.0};
  CHECK(s.index_of(1.5) == 1);
  CHECK(s.index_of(1.5 * (1 + 1e-14)) == 1);
  CHECK(s.index_of(2.0) == -1);
}
