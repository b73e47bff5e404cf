#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "zest/simulator.hpp"

namespace zest {

// The five stock scenarios: figure8 tracking plus the four two-vessel
// encounters (overtaking, head-on, starboard crossing, port crossing).
std::vector<std::string> golden_scenario_names();

// Throws std::invalid_argument for an unknown name.
ScenarioConfig golden_scenario(const std::string& name);

struct BoundCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct RunReport {
  std::string scenario;
  Metrics metrics;
  std::vector<BoundCheck> bounds;
  bool pass = false;  // true iff every declared bound holds
  std::vector<std::string> artifacts;
  double runtime_seconds = 0.0;
};

// Checks a finished run against the scenario's declared bounds.
// safety_scale scales the required minimum separation (forced-failure hook).
RunReport evaluate_golden(const std::string& name, const ScenarioConfig& config,
                          const SimResult& result, double safety_scale = 1.0,
                          double runtime_seconds = 0.0);

// Report for an ad-hoc (non-golden) run: the only declared bound is that the
// run completed without a collision abort.
RunReport evaluate_adhoc(const ScenarioConfig& config, const SimResult& result,
                         double runtime_seconds = 0.0);

std::string report_to_json(const RunReport& report);

struct SuiteOptions {
  std::string out_dir = "out";
  double safety_scale = 1.0;
  bool dump_bt = false;
  std::optional<std::uint64_t> seed_override;
  std::optional<double> dt_override;
};

// Runs every golden scenario, writes csv/svg/report artifacts, prints one
// table row per scenario. Returns 0 iff all pass.
int run_suite(const SuiteOptions& options, std::ostream& out);

}  // namespace zest
