#pragma once

#include "zest/geometry.hpp"
#include "zest/vessel.hpp"

namespace zest {

// Which collision-regulation situation applies to the own vessel.
enum class EncounterType {
  Clear,
  StaticObstacle,
  Overtaking,       // Rule 13: own vessel overtakes the other
  HeadOn,           // Rule 14: reciprocal courses, other ahead
  CrossingGiveWay,  // Rule 15: other crossing from starboard, own gives way
  StandOn,          // Rule 17: other crossing from port, own stands on
};

const char* to_string(EncounterType type);

// Relative geometry of a two-vessel encounter, all from ground-truth states.
struct EncounterGeometry {
  double range = 0.0;                 // [m]
  double bearing_own_to_other = 0.0;  // [rad] relative to own heading, + starboard, (-pi, pi]
  double bearing_other_to_own = 0.0;  // [rad] relative to other's heading
  double heading_delta = 0.0;         // [rad] wrap(other.psi - own.psi)
  double range_rate = 0.0;            // [m/s], positive = opening
  double other_speed = 0.0;           // [m/s]
};

struct ColregsThresholds {
  double head_on_half_angle = deg2rad(15.0);     // [rad]
  double reciprocal_tolerance = deg2rad(15.0);   // [rad]
  double overtake_boundary = deg2rad(112.5);     // [rad] 22.5 deg abaft the beam
  double static_speed_threshold = 0.2;           // [m/s]
  double clear_range = 150.0;                    // [m]
  double release_range = 60.0;                   // [m], ~6 ship lengths
};

void validate_thresholds(const ColregsThresholds& th);

// Throws std::invalid_argument when the vessels are coincident (range <= 1e-9).
EncounterGeometry encounter_geometry(const VesselState& own, const VesselState& other);

// Priority-ordered classification:
//   static obstacle, clear (range gate), overtaking (stern sector, closing),
//   head-on (bow cone + reciprocal headings), starboard crossing, port
//   crossing, otherwise clear. Boundary ties resolve toward the more
//   conservative give-way class (head-on over crossing, overtaking over the
//   side sectors).
EncounterType classify_encounter(const EncounterGeometry& geom, const ColregsThresholds& th);

// True once the encounter is resolved: opening range beyond release_range with
// the other vessel abaft own beam.
bool encounter_cleared(const EncounterGeometry& geom, const ColregsThresholds& th);

}  // namespace zest
