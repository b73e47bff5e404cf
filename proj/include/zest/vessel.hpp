#pragma once

#include "zest/geometry.hpp"

namespace zest {

// Planar 3-DOF pose plus surge/yaw rates of one vessel. Sway is not modeled:
// a differential-drive catamaran is driven purely in surge and yaw here.
struct VesselState {
  double x = 0.0;    // north position [m]
  double y = 0.0;    // east position [m]
  double psi = 0.0;  // heading, clockwise from north, wrapped to [-pi, pi)
  double u = 0.0;    // surge speed [m/s], body-forward
  double r = 0.0;    // yaw rate [rad/s], positive = bow to starboard
  double t = 0.0;    // simulation time [s]

  Vec2 position() const { return {x, y}; }
  Vec2 velocity() const { return u * heading_dir(psi); }
};

struct VesselParams {
  double length = 10.0;              // [m]
  double beam = 4.0;                 // [m]
  double mass = 6000.0;              // [kg]
  double yaw_inertia = 40000.0;      // [kg m^2]
  double thruster_separation = 4.0;  // [m]
  double linear_drag_surge = 900.0;  // [N s/m]
  double quad_drag_surge = 250.0;    // [N s^2/m^2]
  double linear_drag_yaw = 25000.0;  // [N m s]
  double quad_drag_yaw = 20000.0;    // [N m s^2]
  double max_thrust_per_motor = 2500.0;  // [N]
  double cruise_speed = 2.5;         // [m/s]
  double min_speed = 0.0;            // [m/s]
  double max_speed = 5.66;           // [m/s], 11 kn
};

struct ThrustCommand {
  double t_left = 0.0;   // [N]
  double t_right = 0.0;  // [N]
};

// Throws std::invalid_argument on a parameter set violating the invariants.
void validate_params(const VesselParams& params);

// Clamps each motor independently to +-max_thrust_per_motor.
ThrustCommand saturate(const ThrustCommand& thrust, const VesselParams& params);

// Time derivative of the state under the given (already saturated) thrust.
// Returned struct holds per-second rates in the same fields (t rate is 1).
VesselState state_derivative(const VesselState& state, const VesselParams& params,
                             const ThrustCommand& thrust);

// One fixed-step RK4 integration step; saturates thrust, wraps psi, advances t.
// Requires 0 < dt <= 1.
VesselState step_dynamics(const VesselState& state, const VesselParams& params,
                          const ThrustCommand& thrust, double dt);

}  // namespace zest
