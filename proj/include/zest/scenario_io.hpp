#pragma once

#include <stdexcept>
#include <string>

#include "zest/simulator.hpp"

namespace zest {

// Scenario file problems: syntax (with byte position), unknown keys, or
// invariant violations.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses a JSON scenario document. Omitted keys take the documented defaults;
// unknown keys are rejected by name. The returned config is validated.
ScenarioConfig parse_scenario_file(const std::string& text);

// Canonical JSON form with every field spelled out; parsing it again yields
// an identical config.
std::string serialize_scenario(const ScenarioConfig& config);

ScenarioConfig load_scenario_file(const std::string& path);

}  // namespace zest
