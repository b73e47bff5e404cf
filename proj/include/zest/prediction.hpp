#pragma once

#include "zest/vessel.hpp"

namespace zest {

struct SeparationPrediction {
  double min_separation = 0.0;  // [m]
  double time_of_min = 0.0;     // [s] offset from now
};

// Minimum separation between two vessels under constant-velocity extrapolation,
// scanned at dt resolution over tau in [0, horizon]. Ties keep the earliest
// time. Requires horizon > 0 and dt > 0.
SeparationPrediction predict_min_separation(const VesselState& own, const VesselState& other,
                                            double horizon, double dt);

}  // namespace zest
