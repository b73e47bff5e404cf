#pragma once

#include <limits>

#include "zest/geometry.hpp"
#include "zest/path.hpp"
#include "zest/vessel.hpp"

namespace zest {

struct GuidanceCommand {
  double desired_speed = 0.0;    // [m/s], >= 0
  double desired_heading = 0.0;  // [rad], in [-pi, pi)
};

// PID controller state. A value type: pid_step consumes one and returns the
// updated copy, so there is never hidden mutable state.
struct PidState {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
  double integral = 0.0;
  double prev_error = 0.0;
  double output_limit = std::numeric_limits<double>::infinity();
};

struct PidResult {
  double actuation = 0.0;
  PidState state;
};

// One PID update: actuation = clamp(kp*e + ki*int(e) + kd*(e - e_prev)/dt).
// The integral is clamped so |integral*ki| <= output_limit (anti-windup).
PidResult pid_step(const PidState& pid, double error, double dt);

// Pursuit command toward the virtual target: heading straight at it, speed
// ramping down linearly inside arrival_radius. Degenerate (coincident) target
// commands zero speed and holds the current heading.
GuidanceCommand vtg_command(const VesselState& vessel, const VirtualTarget& vt,
                            double cruise_speed, double arrival_radius);

// Two PID loops to differential thrust: the speed loop produces common thrust,
// the heading loop (on the error wrapped to (-pi, pi]) produces the
// differential. Each motor is clamped to +-max_thrust_per_motor.
// The PID states are updated in place.
ThrustCommand guidance_to_thrust(const GuidanceCommand& cmd, const VesselState& vessel,
                                 PidState& speed_pid, PidState& heading_pid,
                                 const VesselParams& params, double dt);

}  // namespace zest
