#include <cstdlib>
#include <limits>
#include <random>

#include "doctest.h"

#include "easched/simplex.hpp"
#include "support/random_lp.hpp"
#include "support/vertex_enumeration.hpp"

using namespace easched;
using doctest::Approx;
using easched::testing::random_lp;
using easched::testing::vertex_enumeration;

namespace {

LpModel single_column(double lo, double hi, std::vector<std::pair<RowSense, double>> rows, double c = 1.0) {
  LpModel m;
  m.cost = Eigen::VectorXd::Constant(1, c);
  m.lower = Eigen::VectorXd::Constant(1, lo);
  m.upper = Eigen::VectorXd::Constant(1, hi);
  m.rows.resize(static_cast<Eigen::Index>(rows.size()), 1);
  m.rhs.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    m.rows.insert(static_cast<Eigen::Index>(r), 0) = 1.0;
    m.sense.push_back(rows[r].first);
    m.rhs(static_cast<Eigen::Index>(r)) = rows[r].second;
  }
  return m;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("forced equality") {
  const SolveResult r = PrimalSimplex().solve(single_column(0, kInf, {{RowSense::Equal, 1.0}}));
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.x(0) == Approx(1.0));
  CHECK(r.objective == Approx(1.0));
}

TEST_CASE("contradictory equalities are infeasible") {
  const SolveResult r =
      PrimalSimplex().solve(single_column(0, kInf, {{RowSense::Equal, 1.0}, {RowSense::Equal, 2.0}}));
  CHECK(r.status == SolveStatus::Infeasible);
}

TEST_CASE("inverted bounds are infeasible") {
  CHECK(PrimalSimplex().solve(single_column(2, 1, {})).status == SolveStatus::Infeasible);
}

TEST_CASE("unbounded direction") {
  const SolveResult r = PrimalSimplex().solve(single_column(0, kInf, {{RowSense::GreaterEqual, 1.0}}, -1.0));
  CHECK(r.status == SolveStatus::Unbounded);
}

TEST_CASE("column at its upper bound") {
  const SolveResult r = PrimalSimplex().solve(single_column(-1, 3, {{RowSense::LessEqual, 10.0}}, -2.0));
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.x(0) == Approx(3.0));
  CHECK(r.objective == Approx(-6.0));
}

TEST_CASE("fixed columns are honoured") {
  LpModel m;
  m.cost = Eigen::Vector2d(1.0, 1.0);
  m.lower = Eigen::Vector2d(0.0, 0.5);
  m.upper = Eigen::Vector2d(5.0, 0.5);
  m.rows.resize(1, 2);
  m.rows.insert(0, 0) = 1.0;
  m.rows.insert(0, 1) = 1.0;
  m.sense = {RowSense::GreaterEqual};
  m.rhs = Eigen::VectorXd::Constant(1, 2.0);
  const SolveResult r = PrimalSimplex().solve(m);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.x(0) == Approx(1.5));
  CHECK(r.x(1) == 0.5);
}

TEST_CASE("textbook problem") {
  // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18
  LpModel m;
  m.cost = Eigen::Vector2d(-3.0, -5.0);
  m.lower = Eigen::Vector2d::Zero();
  m.upper = Eigen::Vector2d::Constant(kInf);
  std::vector<Eigen::Triplet<double>> t{{0, 0, 1.0}, {1, 1, 2.0}, {2, 0, 3.0}, {2, 1, 2.0}};
  m.rows.resize(3, 2);
  m.rows.setFromTriplets(t.begin(), t.end());
  m.sense.assign(3, RowSense::LessEqual);
  m.rhs = Eigen::Vector3d(4.0, 12.0, 18.0);
  const SolveResult r = PrimalSimplex().solve(m);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.objective == Approx(-36.0));
  CHECK(r.x(0) == Approx(2.0));
  CHECK(r.x(1) == Approx(6.0));
  CHECK(r.max_residual <= 1e-9);
  CHECK(r.worst_reduced_cost >= -1e-9);
}

TEST_CASE("matches vertex enumeration on random bounded LPs") {
  std::mt19937_64 rng(2024);
  int compared = 0;
  for (int k = 0; k < 120; ++k) {
    const LpModel m = random_lp(rng);
    const auto oracle = vertex_enumeration(m);
    const SolveResult r = PrimalSimplex().solve(m);
    CAPTURE(k);
    if (!oracle) {
      CHECK(r.status == SolveStatus::Infeasible);
      continue;
    }
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(std::abs(r.objective - *oracle) <= 1e-6 * std::max(1.0, std::abs(*oracle)));
    CHECK(r.max_residual <= 1e-7);
    ++compared;
  }
  CHECK(compared >= 50);
}

TEST_CASE("extended precision instantiation agrees") {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 30; ++k) {
    const LpModel m = random_lp(rng);
    const SolveResult a = PrimalSimplex().solve(m);
    const SolveResult b = BoundedPrimalSimplex<long double>().solve(m);
    CHECK(a.status == b.status);
    if (a.status == SolveStatus::Optimal)
      CHECK(std::abs(a.objective - b.objective) <= 1e-7 * std::max(1.0, std::abs(a.objective)));
  }
}

TEST_CASE("repeated solves are bit-identical") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 20; ++k) {
    const LpModel m = random_lp(rng);
    const SolveResult a = PrimalSimplex().solve(m);
    const SolveResult b = PrimalSimplex().solve(m);
    CHECK(a.status == b.status);
    CHECK(a.iterations == b.iterations);
    if (a.status == SolveStatus::Optimal) {
      CHECK(a.objective == b.objective);
      CHECK(a.x == b.x);
    }
  }
}

TEST_CASE("iteration limit is reported") {
  std::mt19937_64 rng(1);
  SolverConfig cfg;
  cfg.max_iterations = 1;
  LpModel m;
  do {
    m = random_lp(rng);
  } while (PrimalSimplex().solve(m).iterations < 3);
  CHECK(PrimalSimplex(cfg).solve(m).status == SolveStatus::IterationLimit);
}

TEST_CASE("solver configuration") {
  SolverConfig bad;
  bad.feasibility_tolerance = 0;
  CHECK_THROWS_AS(bad.check(), std::invalid_argument);
  CHECK_THROWS_AS(PrimalSimplex{bad}, std::invalid_argument);

  setenv("EASCHED_FEAS_TOL", "1e-8", 1);
  setenv("EASCHED_MAX_ITER", "500", 1);
  const SolverConfig env = SolverConfig::from_environment();
  CHECK(env.feasibility_tolerance == 1e-8);
  CHECK(env.max_iterations == 500);
  CHECK(env.optimality_tolerance == SolverConfig{}.optimality_tolerance);
  setenv("EASCHED_OPT_TOL", "tight", 1);
  CHECK_THROWS_AS(SolverConfig::from_environment(), std::invalid_argument);
  unsetenv("EASCHED_FEAS_TOL");
  unsetenv("EASCHED_MAX_ITER");
  unsetenv("EASCHED_OPT_TOL");

  CHECK(std::string(to_string(SolveStatus::Unbounded)) == "unbounded");
}
