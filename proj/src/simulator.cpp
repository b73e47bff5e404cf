#include "zest/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace zest {

double GaussianRng::normal() {
  // Box-Muller on two fresh uniforms per draw; no caching so the stream
  // depends only on seed and call count.
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double u1 = uni(gen_);
  while (u1 <= 0.0) {
    u1 = uni(gen_);
  }
  const double u2 = uni(gen_);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

SensorReading sense(const VesselState& truth, const NoiseConfig& noise, GaussianRng& rng,
                    double surge_accel_truth) {
  SensorReading reading;
  reading.gps.x = truth.x + noise.gps * rng.normal();
  reading.gps.y = truth.y + noise.gps * rng.normal();
  reading.compass = wrap_angle(truth.psi + noise.compass * rng.normal());
  reading.imu_yaw_rate = truth.r + noise.imu_yaw_rate * rng.normal();
  reading.imu_surge_accel = surge_accel_truth + noise.imu_surge_accel * rng.normal();
  return reading;
}

void validate_scenario(const ScenarioConfig& config) {
  validate_params(config.white.params);
  validate_thresholds(config.thresholds);
  if (!(config.dt > 0.0) || config.dt > 1.0) {
    throw std::invalid_argument("invalid scenario: dt must be in (0, 1]");
  }
  if (config.max_time < config.dt) {
    throw std::invalid_argument("invalid scenario: max_time must be >= dt");
  }
  if (config.white.path.has_value() == config.white.goal.has_value()) {
    throw std::invalid_argument("invalid scenario: white needs exactly one of path / goal");
  }
  if (config.red.has_value()) {
    validate_params(config.red->params);
    if (config.red->constant_speed.has_value() == config.red->constant_thrust.has_value()) {
      throw std::invalid_argument(
          "invalid scenario: red needs exactly one of constant_speed / constant_thrust");
    }
    if (config.red->constant_speed.has_value() && !(*config.red->constant_speed >= 0.0)) {
      throw std::invalid_argument("invalid scenario: red constant_speed must be >= 0");
    }
  }
  if (config.noise.gps < 0.0 || config.noise.compass < 0.0 ||
      config.noise.imu_yaw_rate < 0.0 || config.noise.imu_surge_accel < 0.0) {
    throw std::invalid_argument("invalid scenario: noise stds must be >= 0");
  }
  if (!(config.guidance.lag_limit > 0.0) || !(config.guidance.arrival_radius > 0.0) ||
      !(config.guidance.arrival_tolerance > 0.0)) {
    throw std::invalid_argument("invalid scenario: guidance distances must be positive");
  }
  if (!(config.guidance.speed_pid.output_limit > 0.0) ||
      !(config.guidance.heading_pid.output_limit > 0.0)) {
    throw std::invalid_argument("invalid scenario: PID output limits must be positive");
  }
  validate_field_params(build_field_params(config));
}

PlanarPath resolve_reference_path(const ScenarioConfig& config) {
  if (config.white.goal.has_value()) {
    return make_path({config.white.initial.position(), *config.white.goal}, false);
  }
  const PathSpec& spec = *config.white.path;
  if (spec.kind == PathSpec::Kind::Lemniscate) {
    return make_lemniscate_path(spec.amplitude, spec.n_samples);
  }
  return make_path(spec.points, spec.closed);
}

FieldParams build_field_params(const ScenarioConfig& config) {
  FieldParams fp;
  fp.k_att = config.apf.k_att;
  fp.k_rep = config.apf.k_rep;
  fp.influence_radius = config.apf.influence_radius;
  fp.safety_radius = 2.0 * config.white.params.beam;
  fp.predict_horizon = config.apf.predict_horizon;
  fp.k_pred = config.apf.k_pred;
  fp.lateral_bias_gain = config.apf.lateral_bias_gain;
  fp.max_force = config.apf.max_force;
  fp.min_distance = config.apf.min_distance;
  fp.scan_dt = config.dt;
  validate_field_params(fp);
  return fp;
}

namespace {

// Equal per-motor thrust holding speed v against drag (steady state).
ThrustCommand equilibrium_thrust(const VesselParams& p, double v) {
  const double drag = p.linear_drag_surge * v + p.quad_drag_surge * v * std::abs(v);
  return {0.5 * drag, 0.5 * drag};
}

std::string format_trace(std::size_t step, double t, const std::vector<TickTraceEntry>& trace) {
  std::ostringstream os;
  os << "tick=" << step << " t=" << t;
  for (const TickTraceEntry& e : trace) {
    os << ' ' << e.node << '=' << to_string(e.status);
  }
  return os.str();
}

}  // namespace

SimResult run_scenario(const ScenarioConfig& config, const RunOptions& options) {
  validate_scenario(config);

  const PlanarPath path = resolve_reference_path(config);
  const VesselParams& wp = config.white.params;

  Blackboard bb;
  bb.path = path;
  bb.vt = make_virtual_target(path, 0.0);
  bb.own_params = wp;
  bb.thresholds = config.thresholds;
  bb.field = build_field_params(config);
  bb.cruise_speed = wp.cruise_speed;
  bb.arrival_radius = config.guidance.arrival_radius;
  bb.arrival_tolerance = config.guidance.arrival_tolerance;

  VesselState white = config.white.initial;
  white.psi = wrap_angle(white.psi);
  white.t = 0.0;

  std::optional<VesselState> red;
  ThrustCommand red_thrust;
  if (config.red.has_value()) {
    VesselState r0 = config.red->initial;
    r0.psi = wrap_angle(r0.psi);
    r0.t = 0.0;
    if (config.red->constant_speed.has_value()) {
      r0.u = *config.red->constant_speed;
      red_thrust = equilibrium_thrust(config.red->params, r0.u);
    } else {
      red_thrust = *config.red->constant_thrust;
    }
    red = r0;
  }

  GaussianRng rng(config.seed);
  PidState speed_pid = config.guidance.speed_pid;
  PidState heading_pid = config.guidance.heading_pid;
  BtNode tree = build_zest_tree();
  validate_tree(tree);

  SimResult result;
  std::vector<TickTraceEntry> trace;

  for (std::size_t step = 0;; ++step) {
    const SensorReading reading = sense(white, config.noise, rng);
    bb.own = white;
    bb.own.x = reading.gps.x;
    bb.own.y = reading.gps.y;
    bb.own.psi = reading.compass;
    bb.own.r = reading.imu_yaw_rate;
    bb.other = red;
    bb.sim_time = white.t;
    // A vessel that left the target's lag radius during an avoidance detour
    // must not be sent back to a stale target: move the target to the same
    // lookahead point the way-free corridor check validates (monotone along
    // the path; open paths only).
    if (!path.closed &&
        distance(bb.own.position(), bb.vt.pos) > config.guidance.lag_limit) {
      const double s_target = std::min(
          project_arclength(path, bb.own.position()) + bb.field.influence_radius,
          path.total_length());
      if (s_target > bb.vt.s) {
        bb.vt = make_virtual_target(path, s_target);
      }
    }
    bb.vt = advance_virtual_target(path, bb.vt, bb.own, wp.cruise_speed,
                                   config.guidance.lag_limit, config.dt);

    std::optional<double> separation;
    if (red.has_value()) {
      separation = distance(white.position(), red->position());
    }

    NodeStatus status;
    bool degenerate = false;
    try {
      bb.encounter = red.has_value()
                         ? classify_encounter(encounter_geometry(bb.own, *red), bb.thresholds)
                         : EncounterType::Clear;
      bb.command_written = false;
      bb.active_leaf.clear();
      trace.clear();
      status = tick(tree, bb, options.dump_bt ? &trace : nullptr);
    } catch (const std::exception& e) {
      result.aborted = true;
      result.abort_reason = e.what();
      result.abort_index = result.log.records.empty() ? 0 : result.log.records.size() - 1;
      degenerate = true;
      status = NodeStatus::Failure;
    }
    if (degenerate) {
      break;
    }
    if (!bb.command_written) {
      // Tree returned Failure without a command (classifier/way-free
      // mismatch window): keep sailing the mission, under the same
      // last-resort guard as stand-on conduct.
      bb.command = stand_on_command(bb);
      bb.active_leaf = "FailSafe";
    }

    const ThrustCommand thrust =
        guidance_to_thrust(bb.command, bb.own, speed_pid, heading_pid, wp, config.dt);

    SimRecord rec;
    rec.t = white.t;
    rec.white = white;
    rec.red = red;
    rec.leaf = bb.active_leaf;
    rec.encounter = bb.encounter;
    rec.t_left = thrust.t_left;
    rec.t_right = thrust.t_right;
    rec.separation = separation;
    rec.cross_track = cross_track_distance(path, white.position());
    rec.command = bb.command;
    result.log.records.push_back(std::move(rec));
    if (options.dump_bt) {
      result.bt_trace.push_back(format_trace(step, white.t, trace));
    }

    if (status == NodeStatus::Success) {
      result.final_status = status;
      break;
    }
    if (separation.has_value() && *separation < 0.5) {
      result.aborted = true;
      result.abort_reason = "separation below 0.5 m collision threshold";
      result.abort_index = result.log.records.size() - 1;
      break;
    }
    if (white.t + config.dt > config.max_time + 1e-9) {
      result.final_status = status;
      break;
    }

    try {
      white = step_dynamics(white, wp, thrust, config.dt);
      if (red.has_value()) {
        red = step_dynamics(*red, config.red->params, red_thrust, config.dt);
      }
    } catch (const std::exception& e) {
      result.aborted = true;
      result.abort_reason = e.what();
      result.abort_index = result.log.records.size() - 1;
      break;
    }
  }

  if (result.log.records.empty()) {
    throw std::runtime_error("scenario aborted before the first record: " +
                             result.abort_reason);
  }
  result.metrics = compute_metrics(result.log, config);
  return result;
}

Metrics compute_metrics(const SimLog& log, const ScenarioConfig& config) {
  if (log.records.empty()) {
    throw std::invalid_argument("empty log");
  }
  Metrics m;

  double sum_sq = 0.0;
  for (const SimRecord& rec : log.records) {
    sum_sq += rec.cross_track * rec.cross_track;
    m.max_cross_track = std::max(m.max_cross_track, rec.cross_track);
    if (rec.separation.has_value() &&
        (!m.min_separation.has_value() || *rec.separation < *m.min_separation)) {
      m.min_separation = rec.separation;
      m.cpa_time = rec.t;
    }
  }
  m.cross_track_rms = std::sqrt(sum_sq / static_cast<double>(log.records.size()));

  const PlanarPath path = resolve_reference_path(config);
  if (!path.closed) {
    const SimRecord& last = log.records.back();
    if (distance(last.white.position(), path.samples.back()) <=
        config.guidance.arrival_tolerance) {
      m.time_to_goal = last.t;
    }
  }

  if (config.red.has_value()) {
    ScenarioConfig baseline = config;
    baseline.red.reset();
    const SimResult base = run_scenario(baseline);
    const std::size_t n = std::min(log.records.size(), base.log.records.size());
    for (std::size_t i = 0; i < n; ++i) {
      const double dev =
          std::abs(wrap_signed(log.records[i].white.psi - base.log.records[i].white.psi));
      m.max_heading_deviation = std::max(m.max_heading_deviation, dev);
    }
    const double safety = build_field_params(config).safety_radius;
    m.colregs_violation = m.min_separation.has_value() && *m.min_separation < safety;
  }
  return m;
}

}  // namespace zest
