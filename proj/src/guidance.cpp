#include "zest/guidance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zest {

PidResult pid_step(const PidState& pid, double error, double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("invalid timestep");
  }
  PidState next = pid;
  next.integral += error * dt;
  if (pid.ki != 0.0) {
    const double cap = pid.output_limit / std::abs(pid.ki);
    next.integral = std::clamp(next.integral, -cap, cap);
  }
  const double derivative = (error - pid.prev_error) / dt;
  const double raw = pid.kp * error + pid.ki * next.integral + pid.kd * derivative;
  next.prev_error = error;
  return {std::clamp(raw, -pid.output_limit, pid.output_limit), next};
}

GuidanceCommand vtg_command(const VesselState& vessel, const VirtualTarget& vt,
                            double cruise_speed, double arrival_radius) {
  if (!(arrival_radius > 0.0)) {
    throw std::invalid_argument("invalid arrival radius");
  }
  const Vec2 delta = vt.pos - vessel.position();
  const double d = norm(delta);
  if (d < 1e-6) {
    return {0.0, vessel.psi};
  }
  GuidanceCommand cmd;
  cmd.desired_heading = wrap_angle(std::atan2(delta.y, delta.x));
  cmd.desired_speed = cruise_speed * std::min(1.0, d / arrival_radius);
  return cmd;
}

ThrustCommand guidance_to_thrust(const GuidanceCommand& cmd, const VesselState& vessel,
                                 PidState& speed_pid, PidState& heading_pid,
                                 const VesselParams& params, double dt) {
  const PidResult speed = pid_step(speed_pid, cmd.desired_speed - vessel.u, dt);
  speed_pid = speed.state;
  const double heading_error = wrap_signed(cmd.desired_heading - vessel.psi);
  const PidResult heading = pid_step(heading_pid, heading_error, dt);
  heading_pid = heading.state;
  const double common = speed.actuation;
  const double differential = heading.actuation;
  return saturate({common + differential, common - differential}, params);
}

}  // namespace zest
