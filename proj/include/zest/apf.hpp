#pragma once

#include "zest/colregs.hpp"
#include "zest/geometry.hpp"
#include "zest/guidance.hpp"
#include "zest/vessel.hpp"

namespace zest {

// Planar force in the North-East frame [N].
struct ForceVector {
  double fx = 0.0;  // north
  double fy = 0.0;  // east
};

inline ForceVector operator+(ForceVector a, ForceVector b) { return {a.fx + b.fx, a.fy + b.fy}; }
inline ForceVector operator*(double s, ForceVector f) { return {s * f.fx, s * f.fy}; }

double force_norm(ForceVector f);
ForceVector clamp_force(ForceVector f, double max_force);

// Potential-field gains and geometry. safety_radius is tied to the own hull:
// twice the beam, set by make_field_params.
struct FieldParams {
  double k_att = 40.0;             // attractive gain [N/m]
  double k_rep = 4.0e6;            // repulsive gain
  double influence_radius = 40.0;  // [m]
  double safety_radius = 8.0;      // [m], = 2 x own beam
  double predict_horizon = 60.0;   // [s]
  double k_pred = 3.0e4;           // predictive gain
  double lateral_bias_gain = 2.0;  // rule-bias scale, dimensionless
  double max_force = 1.0e4;        // [N]
  double min_distance = 0.5;       // [m], singularity clamp
  double scan_dt = 0.1;            // [s], prediction scan resolution
};

// safety_radius = 2 x beam, influence_radius = 5 x safety_radius; validates.
FieldParams make_field_params(const VesselParams& own_params);

// Checks influence_radius > safety_radius > min_distance > 0 and positive gains.
void validate_field_params(const FieldParams& fp);

// U_att = 1/2 k |goal - pos|^2
double attractive_potential(Vec2 pos, Vec2 goal, double k_att);

// F = k (goal - pos) = -grad U_att. Unclamped.
ForceVector attractive_force(Vec2 pos, Vec2 goal, double k_att);

// Khatib-style repulsion, exactly zero beyond influence_radius:
//   |F| = k_rep (1/d - 1/d0) / d^2, away from the obstacle,
// with d clamped below by min_distance and |F| clamped to max_force.
ForceVector repulsive_force(Vec2 pos, Vec2 obstacle_pos, const FieldParams& fp);

// Anticipatory term: finds the minimum predicted separation d* over the
// horizon (constant-velocity extrapolation, scan_dt steps); when d* is inside
// the influence radius, pushes perpendicular to own velocity, away from the
// other vessel's predicted position at that time (starboard when ambiguous).
ForceVector predictive_force(const VesselState& own, const VesselState& other,
                             const FieldParams& fp);

// Full rule-conditioned field: attractive + repulsive + predictive + rule bias,
// clamped to max_force. Throws std::invalid_argument for EncounterType::Clear.
ForceVector colregs_field(const VesselState& own, const VesselState& other,
                          EncounterType encounter, Vec2 goal, const FieldParams& fp);

// Steers along the force; overtaking and head-on encounters halve the speed.
// Throws std::invalid_argument on a zero force.
GuidanceCommand force_to_guidance(ForceVector force, EncounterType encounter,
                                  double cruise_speed);

}  // namespace zest
