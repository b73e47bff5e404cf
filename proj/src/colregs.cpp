#include "zest/colregs.hpp"

#include <cmath>
#include <stdexcept>

namespace zest {

const char* to_string(EncounterType type) {
  switch (type) {
    case EncounterType::Clear: return "Clear";
    case EncounterType::StaticObstacle: return "StaticObstacle";
    case EncounterType::Overtaking: return "Overtaking";
    case EncounterType::HeadOn: return "HeadOn";
    case EncounterType::CrossingGiveWay: return "CrossingGiveWay";
    case EncounterType::StandOn: return "StandOn";
  }
  return "Clear";
}

void validate_thresholds(const ColregsThresholds& th) {
  if (!(0.0 < th.head_on_half_angle && th.head_on_half_angle < th.overtake_boundary &&
        th.overtake_boundary < kPi)) {
    throw std::invalid_argument("invalid thresholds: need 0 < head_on_half_angle < "
                                "overtake_boundary < pi");
  }
  if (!(th.reciprocal_tolerance > 0.0) || !(th.static_speed_threshold >= 0.0)) {
    throw std::invalid_argument("invalid thresholds: tolerances must be positive");
  }
  if (!(th.clear_range > 0.0) || !(th.release_range > 0.0) ||
      th.release_range > th.clear_range) {
    throw std::invalid_argument("invalid thresholds: need 0 < release_range <= clear_range");
  }
}

EncounterGeometry encounter_geometry(const VesselState& own, const VesselState& other) {
  const Vec2 delta = other.position() - own.position();
  const double range = norm(delta);
  if (range <= 1e-9) {
    throw std::invalid_argument("degenerate geometry");
  }
  EncounterGeometry geom;
  geom.range = range;
  geom.bearing_own_to_other = wrap_signed(std::atan2(delta.y, delta.x) - own.psi);
  geom.bearing_other_to_own = wrap_signed(std::atan2(-delta.y, -delta.x) - other.psi);
  geom.heading_delta = wrap_signed(other.psi - own.psi);
  const Vec2 rel_vel = other.velocity() - own.velocity();
  geom.range_rate = dot(delta, rel_vel) / range;
  geom.other_speed = std::abs(other.u);
  return geom;
}

EncounterType classify_encounter(const EncounterGeometry& geom, const ColregsThresholds& th) {
  if (geom.other_speed < th.static_speed_threshold) {
    return EncounterType::StaticObstacle;
  }
  if (geom.range > th.clear_range ||
      (geom.range_rate > 0.0 && geom.range > th.release_range)) {
    return EncounterType::Clear;
  }
  // Own inside the other's stern sector while closing: overtaking. The
  // boundary itself counts as overtaking (conservative tie-break).
  if (std::abs(geom.bearing_other_to_own) >= th.overtake_boundary && geom.range_rate < 0.0) {
    return EncounterType::Overtaking;
  }
  if (std::abs(geom.bearing_own_to_other) <= th.head_on_half_angle &&
      std::abs(wrap_signed(geom.heading_delta - kPi)) <= th.reciprocal_tolerance) {
    return EncounterType::HeadOn;
  }
  if (geom.bearing_own_to_other > th.head_on_half_angle &&
      geom.bearing_own_to_other <= th.overtake_boundary) {
    return EncounterType::CrossingGiveWay;
  }
  if (geom.bearing_own_to_other < -th.head_on_half_angle &&
      geom.bearing_own_to_other >= -th.overtake_boundary) {
    return EncounterType::StandOn;
  }
  return EncounterType::Clear;
}

bool encounter_cleared(const EncounterGeometry& geom, const ColregsThresholds& th) {
  return geom.range_rate > 0.0 && geom.range > th.release_range &&
         std::abs(geom.bearing_own_to_other) > kPi / 2.0;
}

}  // namespace zest
