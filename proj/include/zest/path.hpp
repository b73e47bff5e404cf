#pragma once

#include <vector>

#include "zest/geometry.hpp"
#include "zest/vessel.hpp"

namespace zest {

// Arc-length parameterized polyline reference path.
struct PlanarPath {
  std::vector<Vec2> samples;
  std::vector<double> cumulative_arclength;  // starts at 0, strictly increasing
  bool closed = false;

  double total_length() const { return cumulative_arclength.back(); }
};

// Builds a path from ordered samples; validates the invariants
// (>= 2 samples, no repeated consecutive samples, closure if requested).
PlanarPath make_path(std::vector<Vec2> samples, bool closed);

// Closed Gerono lemniscate x = A sin(theta), y = A sin(theta) cos(theta),
// sampled uniformly in theta over [0, 2pi]. n_samples includes the closing
// point (last sample == first). Requires n_samples >= 16.
PlanarPath make_lemniscate_path(double amplitude, int n_samples);

// Piecewise-linear interpolation at arc length s.
// s wraps modulo total length on closed paths and clamps to [0, L] on open ones.
Vec2 point_at(const PlanarPath& path, double s);

// Distance from p to the nearest point on the polyline (segment projection).
double cross_track_distance(const PlanarPath& path, Vec2 p);

// Arc length of the point on the polyline nearest to p.
double project_arclength(const PlanarPath& path, Vec2 p);

// Moving reference target on a path.
struct VirtualTarget {
  double s = 0.0;  // arc-length position [m]
  Vec2 pos;        // interpolated point
};

VirtualTarget make_virtual_target(const PlanarPath& path, double s);

// Advances the target by nominal_speed*dt scaled by max(0, 1 - d/lag_limit),
// d being the vessel's distance to the target, so the target waits for a
// vessel that falls behind.
VirtualTarget advance_virtual_target(const PlanarPath& path, const VirtualTarget& vt,
                                     const VesselState& vessel, double nominal_speed,
                                     double lag_limit, double dt);

}  // namespace zest
