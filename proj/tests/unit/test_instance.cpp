#include <filesystem>
#include <string>

#include "doctest.h"

#include "easched/errors.hpp"
#include "easched/instance.hpp"
#include "support/fixtures.hpp"

using namespace easched;
using easched::testing::make_instance;
using easched::testing::poly_job;
using easched::testing::table_job;

namespace {

bool mentions(const ValidationReport& report, const std::string& needle) {
  for (const auto& v : report.violations)
    if (v.find(needle) != std::string::npos) return true;
  return false;
}

const char* kThreeJobs = R"({
  "jobs": [
    {"id": 1, "rho": 2, "weight": 1.5, "release": 0.5, "energy": {"type": "poly", "v": 1.0, "beta": 2.0}},
    {"id": 2, "rho": 1, "weight": 2.0, "energy": {"type": "table", "costs": [1.0, 3.0, 7.0]}},
    {"id": 3, "rho": 4, "weight": 0.5, "deadline": 3.0, "energy": {"type": "poly", "v": 2.0, "beta": 3.0}}
  ],
  "speeds": [1.0, 1.5, 3.0],
  "delta": 1.0,
  "edges": [[1, 2], [1, 3]],
  "objective": "completion",
  "alpha": 0.4,
  "epsilon": 0.5,
  "beta": 3.0
})";

}  // namespace

TEST_CASE("single job with one speed is valid") {
  const Instance inst = make_instance({poly_job(1, 1, 1.0)}, {1.0});
  CHECK(validate(inst).ok());
}

TEST_CASE("two-cycle is reported") {
  const Instance inst =
      make_instance({poly_job(1, 1, 1.0), poly_job(2, 1, 1.0)}, {1.0}, 1.0, {{1, 2}, {2, 1}});
  const ValidationReport r = validate(inst);
  CHECK_FALSE(r.ok());
  CHECK(mentions(r, "cycle"));
}

TEST_CASE("speed spacing beyond 1 + delta is reported") {
  const Instance inst = make_instance({poly_job(1, 1, 1.0)}, {1.0, 4.0}, 1.0);
  CHECK(mentions(validate(inst), "spacing"));
  CHECK(validate(make_instance({poly_job(1, 1, 1.0)}, {1.0, 2.0}, 1.0)).ok());
}

TEST_CASE("field-level validation") {
  SUBCASE("non-positive rho") {
    CHECK(mentions(validate(make_instance({poly_job(1, -2, 1.0)}, {1.0})), "rho"));
  }
  SUBCASE("zero weight") { CHECK(mentions(validate(make_instance({poly_job(1, 1, 0.0)}, {1.0})), "weight")); }
  SUBCASE("duplicate id") {
    CHECK(mentions(validate(make_instance({poly_job(1, 1, 1.0), poly_job(1, 2, 1.0)}, {1.0})), "duplicate"));
  }
  SUBCASE("unknown edge endpoint") {
    CHECK(mentions(validate(make_instance({poly_job(1, 1, 1.0)}, {1.0}, 1.0, {{1, 9}})), "unknown"));
  }
  SUBCASE("table length must match speed count") {
    CHECK(mentions(validate(make_instance({table_job(1, 1, 1.0, {1.0})}, {1.0, 2.0})), "entries"));
  }
  SUBCASE("negative table entry") {
    CHECK(mentions(validate(make_instance({table_job(1, 1, 1.0, {1.0, -1.0})}, {1.0, 2.0})), "non-negative"));
  }
  SUBCASE("tardiness forbids releases") {
    Instance inst = make_instance({poly_job(1, 1, 1.0, 1.0, 2.0, 0.5)}, {1.0}, 1.0, {}, Objective::Tardiness);
    CHECK(mentions(validate(inst), "release"));
  }
  SUBCASE("completion ignores deadlines") {
    Instance inst = make_instance({poly_job(1, 1, 1.0, 1.0, 2.0, 0.0, 100.0)}, {1.0});
    CHECK(validate(inst).ok());
  }
  SUBCASE("alpha outside (0, 1)") {
    Instance inst = make_instance({poly_job(1, 1, 1.0)}, {1.0});
    inst.alpha = 1.0;
    CHECK(mentions(validate(inst), "alpha"));
  }
  SUBCASE("beta below 2") {
    Instance inst = make_instance({poly_job(1, 1, 1.0)}, {1.0});
    inst.beta = 1.5;
    CHECK(mentions(validate(inst), "beta"));
  }
  SUBCASE("unsorted speeds") {
    CHECK(mentions(validate(make_instance({poly_job(1, 1, 1.0)}, {2.0, 1.0})), "increasing"));
  }
}

TEST_CASE("require_valid throws ValidationError") {
  CHECK_THROWS_AS(require_valid(make_instance({poly_job(1, 0, 1.0)}, {1.0})), ValidationError);
}

TEST_CASE("parse reads every field") {
  const Instance inst = parse_instance(kThreeJobs);
  REQUIRE(inst.num_jobs() == 3);
  CHECK(inst.jobs[0].release == 0.5);
  CHECK(inst.jobs[2].deadline == 3.0);
  CHECK(std::get<TableEnergy>(inst.jobs[1].energy).costs == std::vector<double>{1.0, 3.0, 7.0});
  CHECK(std::get<PolynomialEnergy>(inst.jobs[2].energy).beta == 3.0);
  CHECK(inst.speeds.speeds == std::vector<double>{1.0, 1.5, 3.0});
  CHECK(inst.precedence.edges.size() == 2);
  CHECK(inst.alpha == 0.4);
  CHECK(inst.epsilon == 0.5);
  CHECK(inst.beta == 3.0);
  CHECK(inst.has_releases());
}

TEST_CASE("save then load is the identity") {
  const Instance inst = parse_instance(kThreeJobs);
  const auto path = std::filesystem::temp_directory_path() / "easched_roundtrip.json";
  save_instance(inst, path);
  const Instance back = load_instance(path);
  std::filesystem::remove(path);
  CHECK(back == inst);
  CHECK(parse_instance(dump_instance(inst, -1)) == inst);

  Instance no_alpha = inst;
  no_alpha.alpha.reset();
  CHECK(parse_instance(dump_instance(no_alpha)) == no_alpha);
}

TEST_CASE("parse errors name the offending field") {
  std::string text = kThreeJobs;
  text.replace(text.find("\"rho\": 1"), 8, "\"rho\": \"one\"");
  try {
    parse_instance(text);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("jobs[1].rho") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_instance("{not json"), ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"jobs": [], "speeds": [1], "bogus": 1})"), ParseError);
}

TEST_CASE("negative rho from file is a validation error") {
  std::string text = kThreeJobs;
  text.replace(text.find("\"rho\": 1"), 8, "\"rho\": -1");
  CHECK_THROWS_AS(parse_instance(text), ValidationError);
}

TEST_CASE("generator is deterministic and valid") {
  const Instance a = generate(7, 4, 2);
  const Instance b = generate(7, 4, 2);
  CHECK(a == b);
  CHECK(validate(a).ok());
  CHECK_FALSE(generate(8, 4, 2) == a);

  GeneratorConfig no_edges;
  no_edges.edge_density = 0.0;
  CHECK(generate(3, 6, 3, no_edges).precedence.edges.empty());

  const Instance one = generate(1, 1, 1);
  CHECK(one.num_jobs() == 1);
  CHECK(validate(one).ok());
}

TEST_CASE("generated instances pass validation across configurations") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    GeneratorConfig cfg;
    cfg.energy = seed % 2 ? EnergyKind::Polynomial : EnergyKind::Table;
    cfg.objective = seed % 3 == 0 ? Objective::Tardiness : Objective::CompletionTime;
    cfg.release_max = cfg.objective == Objective::Tardiness ? 0.0 : 3.0;
    cfg.geometric_speeds = seed % 5 == 0;
    cfg.delta = 0.5 + 0.1 * static_cast<double>(seed % 4);
    const Instance inst = generate(seed, 1 + static_cast<int>(seed % 6), 1 + static_cast<int>(seed % 4), cfg);
    CAPTURE(seed);
    CHECK(validate(inst).ok());
    CHECK(parse_instance(dump_instance(inst)) == inst);
  }
}

TEST_CASE("objective names") {
  CHECK(std::string(to_string(Objective::Tardiness)) == "tardiness");
  CHECK(objective_from_string("completion") == Objective::CompletionTime);
  CHECK_THROWS(objective_from_string("makespan"));
}
