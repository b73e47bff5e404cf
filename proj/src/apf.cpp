#include "zest/apf.hpp"

#include <cmath>
#include <stdexcept>

#include "zest/prediction.hpp"

namespace zest {

double force_norm(ForceVector f) { return std::hypot(f.fx, f.fy); }

ForceVector clamp_force(ForceVector f, double max_force) {
  const double mag = force_norm(f);
  if (mag <= max_force || mag == 0.0) {
    return f;
  }
  return (max_force / mag) * f;
}

FieldParams make_field_params(const VesselParams& own_params) {
  validate_params(own_params);
  FieldParams fp;
  fp.safety_radius = 2.0 * own_params.beam;
  fp.influence_radius = 5.0 * fp.safety_radius;
  validate_field_params(fp);
  return fp;
}

void validate_field_params(const FieldParams& fp) {
  if (!(fp.influence_radius > fp.safety_radius && fp.safety_radius > fp.min_distance &&
        fp.min_distance > 0.0)) {
    throw std::invalid_argument("invalid field params: need influence_radius > "
                                "safety_radius > min_distance > 0");
  }
  if (!(fp.k_att > 0.0 && fp.k_rep >= 0.0 && fp.k_pred >= 0.0 && fp.max_force > 0.0 &&
        fp.predict_horizon > 0.0 && fp.scan_dt > 0.0 && fp.lateral_bias_gain >= 0.0)) {
    throw std::invalid_argument("invalid field params: nonpositive gain or horizon");
  }
}

double attractive_potential(Vec2 pos, Vec2 goal, double k_att) {
  const Vec2 d = goal - pos;
  return 0.5 * k_att * dot(d, d);
}

ForceVector attractive_force(Vec2 pos, Vec2 goal, double k_att) {
  const Vec2 d = goal - pos;
  return {k_att * d.x, k_att * d.y};
}

ForceVector repulsive_force(Vec2 pos, Vec2 obstacle_pos, const FieldParams& fp) {
  const Vec2 delta = pos - obstacle_pos;
  const double dist = norm(delta);
  if (dist > fp.influence_radius) {
    return {};
  }
  const double d = std::max(dist, fp.min_distance);
  const double mag = fp.k_rep * (1.0 / d - 1.0 / fp.influence_radius) / (d * d);
  // Coincident positions leave the direction undefined; push north.
  const Vec2 dir = dist > 1e-12 ? (1.0 / dist) * delta : Vec2{1.0, 0.0};
  return clamp_force({mag * dir.x, mag * dir.y}, fp.max_force);
}

ForceVector predictive_force(const VesselState& own, const VesselState& other,
                             const FieldParams& fp) {
  const SeparationPrediction pred =
      predict_min_separation(own, other, fp.predict_horizon, fp.scan_dt);
  if (pred.min_separation > fp.influence_radius) {
    return {};
  }
  const double d = std::max(pred.min_separation, fp.min_distance);
  const double mag = fp.k_pred * (1.0 / d - 1.0 / fp.influence_radius);
  const Vec2 own_pred = own.position() + pred.time_of_min * own.velocity();
  const Vec2 other_pred = other.position() + pred.time_of_min * other.velocity();
  const Vec2 stb = starboard_dir(own.psi);
  // Deflect away from the other's predicted position; dead-ahead conflicts
  // break the tie to starboard.
  const double side = dot(other_pred - own_pred, stb);
  const Vec2 lateral = side > 0.0 ? -1.0 * stb : stb;
  return clamp_force({mag * lateral.x, mag * lateral.y}, fp.max_force);
}

ForceVector colregs_field(const VesselState& own, const VesselState& other,
                          EncounterType encounter, Vec2 goal, const FieldParams& fp) {
  if (encounter == EncounterType::Clear) {
    throw std::invalid_argument("no field needed");
  }
  const ForceVector f_att = attractive_force(own.position(), goal, fp.k_att);
  ForceVector total = f_att + repulsive_force(own.position(), other.position(), fp) +
                      predictive_force(own, other, fp);

  const double att_mag = force_norm(f_att);
  const double bias_mag = fp.lateral_bias_gain * att_mag;
  const Vec2 stb = starboard_dir(own.psi);
  const Vec2 delta = other.position() - own.position();
  const double bearing = wrap_signed(std::atan2(delta.y, delta.x) - own.psi);

  switch (encounter) {
    case EncounterType::Overtaking: {
      // Pass on the side the contact is not on; dead ahead goes starboard.
      const Vec2 side = bearing > 0.0 ? -1.0 * stb : stb;
      total = total + ForceVector{bias_mag * side.x, bias_mag * side.y};
      break;
    }
    case EncounterType::HeadOn:
      total = total + ForceVector{bias_mag * stb.x, bias_mag * stb.y};
      break;
    case EncounterType::CrossingGiveWay: {
      // Starboard plus a pull toward a point well astern of the contact.
      total = total + ForceVector{bias_mag * stb.x, bias_mag * stb.y};
      const Vec2 astern_point =
          other.position() - fp.influence_radius * heading_dir(other.psi);
      const Vec2 to_astern = astern_point - own.position();
      const double dist = norm(to_astern);
      if (dist > 1e-12) {
        const Vec2 dir = (1.0 / dist) * to_astern;
        total = total + ForceVector{bias_mag * dir.x, bias_mag * dir.y};
      }
      break;
    }
    case EncounterType::StandOn:
    case EncounterType::StaticObstacle:
      break;  // no bias; attractive/repulsive/predictive only
    case EncounterType::Clear:
      break;  // unreachable
  }
  return clamp_force(total, fp.max_force);
}

GuidanceCommand force_to_guidance(ForceVector force, EncounterType encounter,
                                  double cruise_speed) {
  if (force_norm(force) == 0.0) {
    throw std::invalid_argument("undefined direction");
  }
  const bool slow =
      encounter == EncounterType::Overtaking || encounter == EncounterType::HeadOn;
  GuidanceCommand cmd;
  cmd.desired_heading = wrap_angle(std::atan2(force.fy, force.fx));
  cmd.desired_speed = cruise_speed * (slow ? 0.5 : 1.0);
  return cmd;
}

}  // namespace zest
