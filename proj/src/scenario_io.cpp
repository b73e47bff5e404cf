#include "zest/scenario_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace zest {

namespace {

using json = nlohmann::ordered_json;

// Object view that records which keys were consumed and rejects leftovers.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) {
      throw ScenarioError(path_ + ": expected an object");
    }
  }

  bool has(const char* key) const { return j_.contains(key); }

  const json* take(const char* key) {
    consumed_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  double number(const char* key, double fallback) {
    const json* v = take(key);
    if (v == nullptr) return fallback;
    if (!v->is_number()) {
      throw ScenarioError(path_ + "." + key + ": expected a number");
    }
    return v->get<double>();
  }

  std::uint64_t unsigned_int(const char* key, std::uint64_t fallback) {
    const json* v = take(key);
    if (v == nullptr) return fallback;
    if (!v->is_number_unsigned()) {
      throw ScenarioError(path_ + "." + key + ": expected a non-negative integer");
    }
    return v->get<std::uint64_t>();
  }

  std::string text(const char* key, std::string fallback) {
    const json* v = take(key);
    if (v == nullptr) return fallback;
    if (!v->is_string()) {
      throw ScenarioError(path_ + "." + key + ": expected a string");
    }
    return v->get<std::string>();
  }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (consumed_.find(item.key()) == consumed_.end()) {
        throw ScenarioError("unknown key '" + path_ + "." + item.key() + "'");
      }
    }
  }

  const std::string& path() const { return path_; }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> consumed_;
};

VesselParams parse_params(ObjectReader& obj) {
  VesselParams p;
  p.length = obj.number("length", p.length);
  p.beam = obj.number("beam", p.beam);
  p.mass = obj.number("mass", p.mass);
  p.yaw_inertia = obj.number("yaw_inertia", p.yaw_inertia);
  p.thruster_separation = obj.number("thruster_separation", p.thruster_separation);
  p.linear_drag_surge = obj.number("linear_drag_surge", p.linear_drag_surge);
  p.quad_drag_surge = obj.number("quad_drag_surge", p.quad_drag_surge);
  p.linear_drag_yaw = obj.number("linear_drag_yaw", p.linear_drag_yaw);
  p.quad_drag_yaw = obj.number("quad_drag_yaw", p.quad_drag_yaw);
  p.max_thrust_per_motor = obj.number("max_thrust_per_motor", p.max_thrust_per_motor);
  p.cruise_speed = obj.number("cruise_speed", p.cruise_speed);
  p.min_speed = obj.number("min_speed", p.min_speed);
  p.max_speed = obj.number("max_speed", p.max_speed);
  return p;
}

VesselState parse_state(const json& j, const std::string& path) {
  ObjectReader obj(j, path);
  VesselState s;
  s.x = obj.number("x", 0.0);
  s.y = obj.number("y", 0.0);
  s.psi = obj.number("psi", 0.0);
  s.u = obj.number("u", 0.0);
  s.r = obj.number("r", 0.0);
  obj.finish();
  return s;
}

Vec2 parse_point(const json& j, const std::string& path) {
  ObjectReader obj(j, path);
  Vec2 p;
  p.x = obj.number("x", 0.0);
  p.y = obj.number("y", 0.0);
  obj.finish();
  return p;
}

PathSpec parse_path_spec(const json& j, const std::string& path) {
  ObjectReader obj(j, path);
  PathSpec spec;
  const std::string kind = obj.text("kind", "points");
  if (kind == "lemniscate") {
    spec.kind = PathSpec::Kind::Lemniscate;
    spec.amplitude = obj.number("amplitude", spec.amplitude);
    const double n = obj.number("n_samples", spec.n_samples);
    spec.n_samples = static_cast<int>(n);
  } else if (kind == "points") {
    spec.kind = PathSpec::Kind::Points;
    const json* pts = obj.take("points");
    if (pts == nullptr || !pts->is_array() || pts->size() < 2) {
      throw ScenarioError(path + ".points: expected an array of at least 2 [x, y] pairs");
    }
    for (std::size_t i = 0; i < pts->size(); ++i) {
      const json& item = (*pts)[i];
      if (!item.is_array() || item.size() != 2 || !item[0].is_number() ||
          !item[1].is_number()) {
        throw ScenarioError(path + ".points: entries must be [x, y] number pairs");
      }
      spec.points.push_back({item[0].get<double>(), item[1].get<double>()});
    }
    const json* closed = obj.take("closed");
    if (closed != nullptr) {
      if (!closed->is_boolean()) {
        throw ScenarioError(path + ".closed: expected a boolean");
      }
      spec.closed = closed->get<bool>();
    }
  } else {
    throw ScenarioError(path + ".kind: expected 'lemniscate' or 'points'");
  }
  obj.finish();
  return spec;
}

PidState parse_pid(const json& j, const std::string& path, const PidState& defaults,
                   double default_limit) {
  ObjectReader obj(j, path);
  PidState pid = defaults;
  pid.kp = obj.number("kp", defaults.kp);
  pid.ki = obj.number("ki", defaults.ki);
  pid.kd = obj.number("kd", defaults.kd);
  pid.output_limit = obj.number("output_limit", default_limit);
  pid.integral = 0.0;
  pid.prev_error = 0.0;
  obj.finish();
  return pid;
}

json point_json(Vec2 p) { return json{{"x", p.x}, {"y", p.y}}; }

json state_json(const VesselState& s) {
  return json{{"x", s.x}, {"y", s.y}, {"psi", s.psi}, {"u", s.u}, {"r", s.r}};
}

json params_json(const VesselParams& p) {
  return json{{"length", p.length},
              {"beam", p.beam},
              {"mass", p.mass},
              {"yaw_inertia", p.yaw_inertia},
              {"thruster_separation", p.thruster_separation},
              {"linear_drag_surge", p.linear_drag_surge},
              {"quad_drag_surge", p.quad_drag_surge},
              {"linear_drag_yaw", p.linear_drag_yaw},
              {"quad_drag_yaw", p.quad_drag_yaw},
              {"max_thrust_per_motor", p.max_thrust_per_motor},
              {"cruise_speed", p.cruise_speed},
              {"min_speed", p.min_speed},
              {"max_speed", p.max_speed}};
}

json pid_json(const PidState& pid) {
  return json{{"kp", pid.kp}, {"ki", pid.ki}, {"kd", pid.kd},
              {"output_limit", pid.output_limit}};
}

}  // namespace

ScenarioConfig parse_scenario_file(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("scenario syntax error at byte ") +
                        std::to_string(e.byte) + ": " + e.what());
  }

  ScenarioConfig config;
  ObjectReader root(doc, "scenario");
  config.name = root.text("name", config.name);

  {
    const json* vessel = root.take("vessel");
    if (vessel == nullptr) {
      throw ScenarioError("scenario.vessel: missing section");
    }
    ObjectReader vobj(*vessel, "vessel");

    const json* white = vobj.take("white");
    if (white == nullptr) {
      throw ScenarioError("vessel.white: missing section");
    }
    ObjectReader wobj(*white, "vessel.white");
    config.white.params = parse_params(wobj);
    if (const json* init = wobj.take("initial")) {
      config.white.initial = parse_state(*init, "vessel.white.initial");
    }
    if (const json* goal = wobj.take("goal")) {
      config.white.goal = parse_point(*goal, "vessel.white.goal");
    }
    if (const json* path = wobj.take("path")) {
      config.white.path = parse_path_spec(*path, "vessel.white.path");
    }
    wobj.finish();

    if (const json* red = vobj.take("red")) {
      ObjectReader robj(*red, "vessel.red");
      RedConfig rc;
      rc.params = parse_params(robj);
      if (const json* init = robj.take("initial")) {
        rc.initial = parse_state(*init, "vessel.red.initial");
      }
      if (robj.has("constant_speed")) {
        rc.constant_speed = robj.number("constant_speed", 0.0);
      }
      if (const json* thrust = robj.take("constant_thrust")) {
        ObjectReader tobj(*thrust, "vessel.red.constant_thrust");
        rc.constant_thrust = ThrustCommand{tobj.number("t_left", 0.0),
                                           tobj.number("t_right", 0.0)};
        tobj.finish();
      }
      robj.finish();
      config.red = std::move(rc);
    }
    vobj.finish();
  }

  if (const json* guidance = root.take("guidance")) {
    ObjectReader gobj(*guidance, "guidance");
    const double limit = config.white.params.max_thrust_per_motor;
    GuidanceConfig defaults;
    config.guidance.speed_pid = defaults.speed_pid;
    config.guidance.speed_pid.output_limit = limit;
    config.guidance.heading_pid = defaults.heading_pid;
    config.guidance.heading_pid.output_limit = limit;
    if (const json* pid = gobj.take("speed_pid")) {
      config.guidance.speed_pid =
          parse_pid(*pid, "guidance.speed_pid", config.guidance.speed_pid, limit);
    }
    if (const json* pid = gobj.take("heading_pid")) {
      config.guidance.heading_pid =
          parse_pid(*pid, "guidance.heading_pid", config.guidance.heading_pid, limit);
    }
    config.guidance.lag_limit = gobj.number("lag_limit", config.guidance.lag_limit);
    config.guidance.arrival_radius =
        gobj.number("arrival_radius", config.guidance.arrival_radius);
    config.guidance.arrival_tolerance =
        gobj.number("arrival_tolerance", config.guidance.arrival_tolerance);
    gobj.finish();
  } else {
    const double limit = config.white.params.max_thrust_per_motor;
    config.guidance.speed_pid.output_limit = limit;
    config.guidance.heading_pid.output_limit = limit;
  }

  if (const json* colregs = root.take("colregs")) {
    ObjectReader cobj(*colregs, "colregs");
    config.thresholds.head_on_half_angle =
        cobj.number("head_on_half_angle", config.thresholds.head_on_half_angle);
    config.thresholds.reciprocal_tolerance =
        cobj.number("reciprocal_tolerance", config.thresholds.reciprocal_tolerance);
    config.thresholds.overtake_boundary =
        cobj.number("overtake_boundary", config.thresholds.overtake_boundary);
    config.thresholds.static_speed_threshold =
        cobj.number("static_speed_threshold", config.thresholds.static_speed_threshold);
    config.thresholds.clear_range = cobj.number("clear_range", config.thresholds.clear_range);
    config.thresholds.release_range =
        cobj.number("release_range", config.thresholds.release_range);
    cobj.finish();
  }

  if (const json* apf = root.take("apf")) {
    ObjectReader aobj(*apf, "apf");
    config.apf.k_att = aobj.number("k_att", config.apf.k_att);
    config.apf.k_rep = aobj.number("k_rep", config.apf.k_rep);
    config.apf.influence_radius = aobj.number("influence_radius", config.apf.influence_radius);
    config.apf.predict_horizon = aobj.number("predict_horizon", config.apf.predict_horizon);
    config.apf.k_pred = aobj.number("k_pred", config.apf.k_pred);
    config.apf.lateral_bias_gain =
        aobj.number("lateral_bias_gain", config.apf.lateral_bias_gain);
    config.apf.max_force = aobj.number("max_force", config.apf.max_force);
    config.apf.min_distance = aobj.number("min_distance", config.apf.min_distance);
    aobj.finish();
  }

  if (const json* sim = root.take("sim")) {
    ObjectReader sobj(*sim, "sim");
    config.dt = sobj.number("dt", config.dt);
    config.max_time = sobj.number("max_time", config.max_time);
    config.seed = sobj.unsigned_int("seed", config.seed);
    if (const json* noise = sobj.take("noise")) {
      ObjectReader nobj(*noise, "sim.noise");
      config.noise.gps = nobj.number("gps", config.noise.gps);
      config.noise.compass = nobj.number("compass", config.noise.compass);
      config.noise.imu_yaw_rate = nobj.number("imu_yaw_rate", config.noise.imu_yaw_rate);
      config.noise.imu_surge_accel =
          nobj.number("imu_surge_accel", config.noise.imu_surge_accel);
      nobj.finish();
    }
    sobj.finish();
  }

  root.finish();

  try {
    validate_scenario(config);
  } catch (const std::exception& e) {
    throw ScenarioError(std::string("scenario validation failed: ") + e.what());
  }
  return config;
}

std::string serialize_scenario(const ScenarioConfig& config) {
  json doc;
  doc["name"] = config.name;

  json white = params_json(config.white.params);
  white["initial"] = state_json(config.white.initial);
  if (config.white.goal.has_value()) {
    white["goal"] = point_json(*config.white.goal);
  }
  if (config.white.path.has_value()) {
    const PathSpec& spec = *config.white.path;
    json p;
    if (spec.kind == PathSpec::Kind::Lemniscate) {
      p["kind"] = "lemniscate";
      p["amplitude"] = spec.amplitude;
      p["n_samples"] = spec.n_samples;
    } else {
      p["kind"] = "points";
      json pts = json::array();
      for (Vec2 v : spec.points) {
        pts.push_back(json::array({v.x, v.y}));
      }
      p["points"] = std::move(pts);
      p["closed"] = spec.closed;
    }
    white["path"] = std::move(p);
  }
  doc["vessel"]["white"] = std::move(white);

  if (config.red.has_value()) {
    json red = params_json(config.red->params);
    red["initial"] = state_json(config.red->initial);
    if (config.red->constant_speed.has_value()) {
      red["constant_speed"] = *config.red->constant_speed;
    }
    if (config.red->constant_thrust.has_value()) {
      red["constant_thrust"] = json{{"t_left", config.red->constant_thrust->t_left},
                                    {"t_right", config.red->constant_thrust->t_right}};
    }
    doc["vessel"]["red"] = std::move(red);
  }

  doc["guidance"] = json{{"speed_pid", pid_json(config.guidance.speed_pid)},
                         {"heading_pid", pid_json(config.guidance.heading_pid)},
                         {"lag_limit", config.guidance.lag_limit},
                         {"arrival_radius", config.guidance.arrival_radius},
                         {"arrival_tolerance", config.guidance.arrival_tolerance}};

  doc["colregs"] = json{{"head_on_half_angle", config.thresholds.head_on_half_angle},
                        {"reciprocal_tolerance", config.thresholds.reciprocal_tolerance},
                        {"overtake_boundary", config.thresholds.overtake_boundary},
                        {"static_speed_threshold", config.thresholds.static_speed_threshold},
                        {"clear_range", config.thresholds.clear_range},
                        {"release_range", config.thresholds.release_range}};

  doc["apf"] = json{{"k_att", config.apf.k_att},
                    {"k_rep", config.apf.k_rep},
                    {"influence_radius", config.apf.influence_radius},
                    {"predict_horizon", config.apf.predict_horizon},
                    {"k_pred", config.apf.k_pred},
                    {"lateral_bias_gain", config.apf.lateral_bias_gain},
                    {"max_force", config.apf.max_force},
                    {"min_distance", config.apf.min_distance}};

  doc["sim"] = json{{"dt", config.dt},
                    {"max_time", config.max_time},
                    {"seed", config.seed},
                    {"noise", json{{"gps", config.noise.gps},
                                   {"compass", config.noise.compass},
                                   {"imu_yaw_rate", config.noise.imu_yaw_rate},
                                   {"imu_surge_accel", config.noise.imu_surge_accel}}}};

  return doc.dump(2) + "\n";
}

ScenarioConfig load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ScenarioError("cannot open scenario file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario_file(buffer.str());
}

}  // namespace zest
