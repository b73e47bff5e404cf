#include "zest/vessel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zest {

namespace {

bool all_finite(const VesselState& s) {
  return std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.psi) &&
         std::isfinite(s.u) && std::isfinite(s.r) && std::isfinite(s.t);
}

VesselState axpy(const VesselState& s, const VesselState& d, double h) {
  return {s.x + h * d.x, s.y + h * d.y, s.psi + h * d.psi,
          s.u + h * d.u, s.r + h * d.r, s.t + h * d.t};
}

}  // namespace

void validate_params(const VesselParams& p) {
  if (!(p.length > 0.0 && p.beam > 0.0 && p.mass > 0.0 && p.yaw_inertia > 0.0 &&
        p.thruster_separation > 0.0 && p.max_thrust_per_motor > 0.0)) {
    throw std::invalid_argument("invalid vessel params: dimensions, inertias and "
                                "thrust limit must be positive");
  }
  if (p.linear_drag_surge < 0.0 || p.quad_drag_surge < 0.0 || p.linear_drag_yaw < 0.0 ||
      p.quad_drag_yaw < 0.0) {
    throw std::invalid_argument("invalid vessel params: drag coefficients must be >= 0");
  }
  if (!(p.min_speed <= p.cruise_speed && p.cruise_speed <= p.max_speed)) {
    throw std::invalid_argument("invalid vessel params: need min_speed <= cruise_speed "
                                "<= max_speed");
  }
}

ThrustCommand saturate(const ThrustCommand& thrust, const VesselParams& params) {
  const double lim = params.max_thrust_per_motor;
  return {std::clamp(thrust.t_left, -lim, lim), std::clamp(thrust.t_right, -lim, lim)};
}

VesselState state_derivative(const VesselState& state, const VesselParams& params,
                             const ThrustCommand& thrust) {
  if (!all_finite(state) || !std::isfinite(thrust.t_left) || !std::isfinite(thrust.t_right)) {
    throw std::invalid_argument("invalid state");
  }
  VesselState d;
  d.x = state.u * std::cos(state.psi);
  d.y = state.u * std::sin(state.psi);
  d.psi = state.r;
  d.u = (thrust.t_left + thrust.t_right - params.linear_drag_surge * state.u -
         params.quad_drag_surge * state.u * std::abs(state.u)) /
        params.mass;
  d.r = ((thrust.t_left - thrust.t_right) * params.thruster_separation * 0.5 -
         params.linear_drag_yaw * state.r -
         params.quad_drag_yaw * state.r * std::abs(state.r)) /
        params.yaw_inertia;
  d.t = 1.0;
  return d;
}

VesselState step_dynamics(const VesselState& state, const VesselParams& params,
                          const ThrustCommand& thrust, double dt) {
  if (!(dt > 0.0) || dt > 1.0) {
    throw std::invalid_argument("invalid timestep");
  }
  const ThrustCommand sat = saturate(thrust, params);
  const VesselState k1 = state_derivative(state, params, sat);
  const VesselState k2 = state_derivative(axpy(state, k1, 0.5 * dt), params, sat);
  const VesselState k3 = state_derivative(axpy(state, k2, 0.5 * dt), params, sat);
  const VesselState k4 = state_derivative(axpy(state, k3, dt), params, sat);

  const double w = dt / 6.0;
  VesselState out;
  out.x = state.x + w * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
  out.y = state.y + w * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
  out.psi = wrap_angle(state.psi + w * (k1.psi + 2.0 * k2.psi + 2.0 * k3.psi + k4.psi));
  out.u = state.u + w * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u);
  out.r = state.r + w * (k1.r + 2.0 * k2.r + 2.0 * k3.r + k4.r);
  out.t = state.t + dt;
  if (!all_finite(out)) {
    throw std::runtime_error("invalid state");
  }
  return out;
}

}  // namespace zest
