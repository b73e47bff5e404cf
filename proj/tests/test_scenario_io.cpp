#include <stdexcept>
#include <string>

#include "doctest.h"
#include "zest/scenario_io.hpp"

using namespace zest;

namespace {

const char* kMinimal = R"({"vessel": {"white": {"goal": {"x": 100, "y": 0}}}})";

}  // namespace

TEST_CASE("minimal scenario file takes all documented defaults") {
  const ScenarioConfig c = parse_scenario_file(kMinimal);
  CHECK(c.white.params.length == 10.0);
  CHECK(c.white.params.beam == 4.0);
  CHECK(c.white.params.cruise_speed == 2.5);
  CHECK(c.dt == 0.1);
  CHECK(c.max_time == 300.0);
  CHECK(c.seed == 1);
  CHECK_FALSE(c.red.has_value());
  CHECK(c.guidance.speed_pid.kp == 800.0);
  CHECK(c.guidance.heading_pid.kd == 9000.0);
  CHECK(c.guidance.speed_pid.output_limit == 2500.0);
  CHECK(c.thresholds.clear_range == 150.0);
  CHECK(c.apf.influence_radius == 40.0);
  REQUIRE(c.white.goal.has_value());
  CHECK(c.white.goal->x == 100.0);
}

TEST_CASE("safety radius resolves to twice the configured beam") {
  const std::string text =
      R"({"vessel": {"white": {"beam": 4, "goal": {"x": 50, "y": 0}}}})";
  CHECK(build_field_params(parse_scenario_file(text)).safety_radius == 8.0);
  const std::string narrow =
      R"({"vessel": {"white": {"beam": 2.5, "goal": {"x": 50, "y": 0}}}})";
  CHECK(build_field_params(parse_scenario_file(narrow)).safety_radius == 5.0);
}

TEST_CASE("serialize / parse round-trip is a fixpoint") {
  const std::string full = R"({
    "name": "roundtrip",
    "vessel": {
      "white": {
        "beam": 3.5, "cruise_speed": 2.2,
        "initial": {"x": 1, "y": -2, "psi": 0.5, "u": 1.0, "r": 0.01},
        "path": {"kind": "lemniscate", "amplitude": 35, "n_samples": 2048}
      },
      "red": {
        "initial": {"x": 50, "y": 10, "psi": -1.2, "u": 1.0},
        "constant_speed": 1.25
      }
    },
    "guidance": {"speed_pid": {"kp": 700, "ki": 60}, "lag_limit": 18},
    "colregs": {"clear_range": 120},
    "apf": {"k_att": 30, "influence_radius": 35},
    "sim": {"dt": 0.05, "max_time": 90, "seed": 42, "noise": {"gps": 0.2}}
  })";
  const ScenarioConfig first = parse_scenario_file(full);
  const std::string canonical = serialize_scenario(first);
  const ScenarioConfig second = parse_scenario_file(canonical);
  CHECK(serialize_scenario(second) == canonical);
  CHECK(second.white.params.beam == 3.5);
  CHECK(second.guidance.speed_pid.ki == 60.0);
  CHECK(second.guidance.lag_limit == 18.0);
  CHECK(second.dt == 0.05);
  CHECK(second.seed == 42);
  REQUIRE(second.red.has_value());
  CHECK(*second.red->constant_speed == 1.25);
}

TEST_CASE("unknown keys are rejected by name") {
  const std::string text =
      R"({"vessel": {"white": {"goal": {"x": 50, "y": 0}, "bogus_key": 1}}})";
  try {
    parse_scenario_file(text);
    FAIL("expected ScenarioError");
  } catch (const ScenarioError& e) {
    CHECK(std::string(e.what()).find("bogus_key") != std::string::npos);
  }
}

TEST_CASE("syntax errors carry a byte position") {
  try {
    parse_scenario_file("{\"vessel\": oops}");
    FAIL("expected ScenarioError");
  } catch (const ScenarioError& e) {
    CHECK(std::string(e.what()).find("byte") != std::string::npos);
  }
}

TEST_CASE("validation failures are reported") {
  SUBCASE("bad dt") {
    const std::string text =
        R"({"vessel": {"white": {"goal": {"x": 50, "y": 0}}}, "sim": {"dt": -0.1}})";
    CHECK_THROWS_AS(parse_scenario_file(text), ScenarioError);
  }
  SUBCASE("goal and path together") {
    const std::string text = R"({"vessel": {"white": {
      "goal": {"x": 50, "y": 0},
      "path": {"kind": "points", "points": [[0, 0], [10, 0]]}
    }}})";
    CHECK_THROWS_AS(parse_scenario_file(text), ScenarioError);
  }
  SUBCASE("red without a script") {
    const std::string text = R"({"vessel": {
      "white": {"goal": {"x": 50, "y": 0}},
      "red": {"initial": {"x": 30}}
    }})";
    CHECK_THROWS_AS(parse_scenario_file(text), ScenarioError);
  }
  SUBCASE("missing vessel section") {
    CHECK_THROWS_AS(parse_scenario_file("{}"), ScenarioError);
  }
}

TEST_CASE("pid output limits default to the motor thrust limit") {
  const std::string text = R"({"vessel": {"white": {
    "max_thrust_per_motor": 1000,
    "goal": {"x": 50, "y": 0}
  }}, "guidance": {"speed_pid": {"kp": 500}}})";
  const ScenarioConfig c = parse_scenario_file(text);
  CHECK(c.guidance.speed_pid.kp == 500.0);
  CHECK(c.guidance.speed_pid.output_limit == 1000.0);
  CHECK(c.guidance.heading_pid.output_limit == 1000.0);
}

TEST_CASE("point-list paths parse") {
  const std::string text = R"({"vessel": {"white": {
    "path": {"kind": "points", "points": [[0, 0], [100, 0], [100, 50]], "closed": false}
  }}})";
  const ScenarioConfig c = parse_scenario_file(text);
  REQUIRE(c.white.path.has_value());
  CHECK(c.white.path->points.size() == 3);
  const PlanarPath path = resolve_reference_path(c);
  CHECK(path.total_length() == doctest::Approx(150.0));
}

TEST_CASE("missing scenario files are reported") {
  CHECK_THROWS_AS(load_scenario_file("/nonexistent-dir-zest/scenario.json"), ScenarioError);
}

TEST_CASE("red constant thrust script parses") {
  const std::string text = R"({"vessel": {
    "white": {"goal": {"x": 50, "y": 0}},
    "red": {"initial": {"x": 30, "u": 1.0}, "constant_thrust": {"t_left": 250, "t_right": 250}}
  }})";
  const ScenarioConfig c = parse_scenario_file(text);
  REQUIRE(c.red.has_value());
  REQUIRE(c.red->constant_thrust.has_value());
  CHECK(c.red->constant_thrust->t_left == 250.0);
}
