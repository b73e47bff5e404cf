#pragma once

#include <string>

#include "zest/simulator.hpp"

namespace zest {

// Static trajectory plot: dashed reference path, blue white-vessel track and
// red intruder track (one vertex per log record), CPA markers, metric axes.
// North is up, east is right. Output bytes are a pure function of the inputs.
std::string trajectory_svg(const SimLog& log, const ScenarioConfig& config);

void render_trajectory_svg(const SimLog& log, const ScenarioConfig& config,
                           const std::string& path);

}  // namespace zest
