#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "zest/apf.hpp"
#include "zest/behavior_tree.hpp"
#include "zest/colregs.hpp"
#include "zest/guidance.hpp"
#include "zest/path.hpp"
#include "zest/prediction.hpp"
#include "zest/vessel.hpp"

namespace zest {

// Per-channel additive Gaussian noise standard deviations.
struct NoiseConfig {
  double gps = 0.0;              // [m], applied to each GPS axis
  double compass = 0.0;          // [rad]
  double imu_yaw_rate = 0.0;     // [rad/s]
  double imu_surge_accel = 0.0;  // [m/s^2]
};

struct SensorReading {
  Vec2 gps;                       // [m]
  double compass = 0.0;           // [rad], wrapped to [-pi, pi)
  double imu_yaw_rate = 0.0;      // [rad/s]
  double imu_surge_accel = 0.0;   // [m/s^2]
};

// Deterministic seeded Gaussian source (mt19937_64 + Box-Muller, no caching,
// so the draw sequence is fixed by the seed and call order alone).
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : gen_(seed) {}
  double normal();

 private:
  std::mt19937_64 gen_;
};

// Ground truth plus seeded noise; with all stds zero the reading equals truth.
// surge_accel_truth is supplied by the caller (the state has no acceleration).
SensorReading sense(const VesselState& truth, const NoiseConfig& noise, GaussianRng& rng,
                    double surge_accel_truth = 0.0);

// --- scenario configuration ---------------------------------------------

struct PathSpec {
  enum class Kind { Lemniscate, Points };
  Kind kind = Kind::Points;
  double amplitude = 40.0;  // lemniscate half-width [m]
  int n_samples = 4096;
  std::vector<Vec2> points;
  bool closed = false;
};

struct WhiteConfig {
  VesselParams params;
  VesselState initial;
  std::optional<PathSpec> path;  // exactly one of path / goal
  std::optional<Vec2> goal;
};

struct RedConfig {
  VesselParams params;
  VesselState initial;
  std::optional<double> constant_speed;          // equilibrium equal thrust
  std::optional<ThrustCommand> constant_thrust;  // raw constant thrust
};

struct GuidanceConfig {
  PidState speed_pid{800.0, 80.0, 0.0, 0.0, 0.0, 2500.0};
  PidState heading_pid{3000.0, 0.0, 9000.0, 0.0, 0.0, 2500.0};
  double lag_limit = 15.0;         // [m]
  double arrival_radius = 5.0;     // [m]
  double arrival_tolerance = 2.0;  // [m]
};

// APF gains as configured; safety_radius and scan_dt are derived at run time
// (2 x white beam, simulation dt) by build_field_params.
struct ApfConfig {
  double k_att = 40.0;
  double k_rep = 4.0e6;
  double influence_radius = 40.0;
  double predict_horizon = 60.0;
  double k_pred = 3.0e4;
  double lateral_bias_gain = 2.0;
  double max_force = 1.0e4;
  double min_distance = 0.5;
};

struct ScenarioConfig {
  std::string name = "scenario";
  WhiteConfig white;
  std::optional<RedConfig> red;
  GuidanceConfig guidance;
  ColregsThresholds thresholds;
  ApfConfig apf;
  double dt = 0.1;          // [s]
  double max_time = 300.0;  // [s]
  NoiseConfig noise;
  std::uint64_t seed = 1;
};

// Throws std::invalid_argument / std::runtime_error on invariant violations.
void validate_scenario(const ScenarioConfig& config);

// Resolves the white vessel's reference path: the configured path, or the
// 2-point segment from the initial position to the goal.
PlanarPath resolve_reference_path(const ScenarioConfig& config);

// FieldParams with safety_radius = 2 x white beam and scan_dt = config.dt.
FieldParams build_field_params(const ScenarioConfig& config);

// --- simulation products --------------------------------------------------

struct SimRecord {
  double t = 0.0;
  VesselState white;
  std::optional<VesselState> red;
  std::string leaf;  // action leaf that produced the command this tick
  EncounterType encounter = EncounterType::Clear;
  double t_left = 0.0;
  double t_right = 0.0;
  std::optional<double> separation;  // [m], absent without a red vessel
  double cross_track = 0.0;          // [m]
  GuidanceCommand command;           // not part of the CSV schema
};

struct SimLog {
  std::vector<SimRecord> records;
};

struct Metrics {
  std::optional<double> min_separation;  // [m]
  std::optional<double> cpa_time;        // [s]
  std::optional<double> time_to_goal;    // [s], absent = not reached
  double cross_track_rms = 0.0;          // [m]
  double max_cross_track = 0.0;          // [m]
  double max_heading_deviation = 0.0;    // [rad], vs the no-red baseline run
  bool colregs_violation = false;        // min_separation < safety_radius
};

struct SimResult {
  SimLog log;
  Metrics metrics;
  NodeStatus final_status = NodeStatus::Running;
  bool aborted = false;
  std::string abort_reason;
  std::size_t abort_index = 0;
  std::vector<std::string> bt_trace;  // one line per tick when dump_bt is set
};

struct RunOptions {
  bool dump_bt = false;
};

// Runs the closed loop at dt until the tree returns Success or max_time:
// sense -> tick tree -> PID thrust -> step both vessels -> log. The red
// vessel runs its constant script through the same dynamics. Aborts (flagged,
// not thrown) when separation falls below 0.5 m.
SimResult run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

// Derived quantities over a finished log. When the scenario has a red vessel
// the heading-deviation metric re-runs the scenario without it as baseline.
Metrics compute_metrics(const SimLog& log, const ScenarioConfig& config);

}  // namespace zest
