#include "zest/golden.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "zest/log_io.hpp"
#include "zest/svg_plot.hpp"

namespace zest {

namespace {

ScenarioConfig base_config(const std::string& name) {
  ScenarioConfig config;
  config.name = name;
  config.dt = 0.1;
  config.max_time = 400.0;
  config.seed = 1;
  return config;
}

ScenarioConfig make_figure8() {
  ScenarioConfig config = base_config("figure8");
  PathSpec spec;
  spec.kind = PathSpec::Kind::Lemniscate;
  spec.amplitude = 40.0;
  spec.n_samples = 4096;
  config.white.path = spec;
  config.white.initial = {0.0, 0.0, kPi / 4.0, config.white.params.cruise_speed, 0.0, 0.0};
  config.max_time = 240.0;
  return config;
}

ScenarioConfig make_rule(const std::string& name, Vec2 red_pos, double red_psi,
                         double red_speed, Vec2 goal) {
  ScenarioConfig config = base_config(name);
  config.white.initial = {0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  config.white.goal = goal;
  RedConfig red;
  red.initial = {red_pos.x, red_pos.y, wrap_angle(red_psi), red_speed, 0.0, 0.0};
  red.constant_speed = red_speed;
  config.red = red;
  return config;
}

struct BoundSet {
  std::vector<BoundCheck> checks;

  void add(const std::string& name, bool pass, const std::string& detail) {
    checks.push_back({name, pass, detail});
  }

  void add_less(const std::string& name, double value, double limit) {
    std::ostringstream os;
    os << std::setprecision(4) << std::fixed << value << " < " << limit;
    add(name, value < limit, os.str());
  }

  void add_at_least(const std::string& name, std::optional<double> value, double limit) {
    std::ostringstream os;
    if (value.has_value()) {
      os << std::setprecision(4) << std::fixed << *value << " >= " << limit;
      add(name, *value >= limit, os.str());
    } else {
      add(name, false, "value missing");
    }
  }
};

// White visits eight equally spaced checkpoints => the circuit was traversed.
bool full_circuit(const SimLog& log, const PlanarPath& path) {
  const double total = path.total_length();
  for (int k = 0; k < 8; ++k) {
    const Vec2 target = point_at(path, total * static_cast<double>(k) / 8.0);
    double best = std::numeric_limits<double>::infinity();
    for (const SimRecord& rec : log.records) {
      best = std::min(best, distance(rec.white.position(), target));
    }
    if (best > 5.0) {
      return false;
    }
  }
  return true;
}

std::string fixed_str(double v, int precision) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << v;
  return os.str();
}

// First record index where white crosses the red vessel's track line, or -1.
long first_track_crossing(const SimLog& log, Vec2 red0, Vec2 red_dir) {
  const auto side = [&](Vec2 p) { return cross(red_dir, p - red0); };
  for (std::size_t i = 1; i < log.records.size(); ++i) {
    const double s0 = side(log.records[i - 1].white.position());
    const double s1 = side(log.records[i].white.position());
    if (s0 != 0.0 && ((s0 < 0.0) != (s1 < 0.0))) {
      return static_cast<long>(i);
    }
  }
  return -1;
}

}  // namespace

std::vector<std::string> golden_scenario_names() {
  return {"figure8", "rule13", "rule14", "rule15", "rule17"};
}

ScenarioConfig golden_scenario(const std::string& name) {
  if (name == "figure8") return make_figure8();
  if (name == "rule13") return make_rule("rule13", {40.0, 0.0}, 0.0, 0.5, {160.0, 0.0});
  if (name == "rule14") return make_rule("rule14", {120.0, 0.0}, kPi, 1.5, {200.0, 0.0});
  if (name == "rule15") return make_rule("rule15", {60.0, 60.0}, -kPi / 2.0, 1.5, {160.0, 0.0});
  if (name == "rule17") return make_rule("rule17", {20.0, -40.0}, kPi / 2.0, 1.0, {160.0, 0.0});
  throw std::invalid_argument("unknown golden scenario '" + name + "'");
}

RunReport evaluate_golden(const std::string& name, const ScenarioConfig& config,
                          const SimResult& result, double safety_scale,
                          double runtime_seconds) {
  const Metrics& m = result.metrics;
  BoundSet bounds;

  if (name == "figure8") {
    bounds.add_less("cross_track_rms < 1 m", m.cross_track_rms, 1.0);
    bounds.add_less("max_cross_track < 3 m", m.max_cross_track, 3.0);
    bounds.add("full circuit", full_circuit(result.log, resolve_reference_path(config)),
               "all 8 checkpoints visited within 5 m");
    bounds.add_less("runtime < 5 s", runtime_seconds, 5.0);
  } else {
    const double required_sep = build_field_params(config).safety_radius * safety_scale;
    bounds.add_at_least("min_separation >= safety", m.min_separation, required_sep);
    bounds.add("no collision abort", !result.aborted, result.abort_reason);

    if (name == "rule13") {
      bounds.add("goal reached", m.time_to_goal.has_value(),
                 m.time_to_goal ? "t=" + std::to_string(*m.time_to_goal) : "not reached");
      // commanded speed must drop below cruise while the rule leaf is active
      double min_cmd = std::numeric_limits<double>::infinity();
      bool active = false;
      for (const SimRecord& rec : result.log.records) {
        if (rec.leaf == "ApplyRule13") {
          active = true;
          min_cmd = std::min(min_cmd, rec.command.desired_speed);
        }
      }
      const double cruise = config.white.params.cruise_speed;
      std::ostringstream os;
      os << std::setprecision(4) << std::fixed << "min commanded " << min_cmd << " vs cruise "
         << cruise;
      bounds.add("slows down during rule 13", active && min_cmd < cruise, os.str());
    } else if (name == "rule14") {
      bounds.add("goal reached", m.time_to_goal.has_value(),
                 m.time_to_goal ? "t=" + std::to_string(*m.time_to_goal) : "not reached");
      bool east_at_cpa = false;
      double cpa_y = 0.0;
      if (m.cpa_time.has_value()) {
        for (const SimRecord& rec : result.log.records) {
          if (rec.t == *m.cpa_time) {
            cpa_y = rec.white.y;
            east_at_cpa = rec.white.y > 0.0;
            break;
          }
        }
      }
      std::ostringstream os;
      os << std::setprecision(4) << std::fixed << "white y at CPA = " << cpa_y;
      bounds.add("starboard (east) of track at CPA", east_at_cpa, os.str());
    } else if (name == "rule15") {
      bounds.add("goal reached", m.time_to_goal.has_value(),
                 m.time_to_goal ? "t=" + std::to_string(*m.time_to_goal) : "not reached");
      const Vec2 red0 = config.red->initial.position();
      const Vec2 red_dir = heading_dir(config.red->initial.psi);
      const long idx = first_track_crossing(result.log, red0, red_dir);
      bool astern = false;
      std::string detail = "white never crossed the red track line";
      if (idx >= 0) {
        const SimRecord& rec = result.log.records[static_cast<std::size_t>(idx)];
        const double along_red = dot(rec.red->position() - red0, red_dir);
        const double along_cross = dot(rec.white.position() - red0, red_dir);
        astern = along_red > along_cross;
        std::ostringstream os;
        os << std::setprecision(4) << std::fixed << "red along-track " << along_red
           << " vs crossing point " << along_cross << " at t=" << rec.t;
        detail = os.str();
      }
      bounds.add("passes astern of red", astern, detail);
    } else if (name == "rule17") {
      bounds.add("goal reached", m.time_to_goal.has_value(),
                 m.time_to_goal ? "t=" + std::to_string(*m.time_to_goal) : "not reached");
      bounds.add_less("max_heading_deviation < 5 deg", rad2deg(m.max_heading_deviation), 5.0);
      bounds.add_less("cross-track deviation < 1.5 m", m.max_cross_track, 1.5);
    } else {
      throw std::invalid_argument("unknown golden scenario '" + name + "'");
    }
  }

  RunReport report;
  report.scenario = name;
  report.metrics = m;
  report.bounds = std::move(bounds.checks);
  report.pass = true;
  for (const BoundCheck& check : report.bounds) {
    report.pass = report.pass && check.pass;
  }
  report.runtime_seconds = runtime_seconds;
  return report;
}

RunReport evaluate_adhoc(const ScenarioConfig& config, const SimResult& result,
                         double runtime_seconds) {
  RunReport report;
  report.scenario = config.name;
  report.metrics = result.metrics;
  report.bounds.push_back(
      {"no collision abort", !result.aborted,
       result.aborted ? result.abort_reason : "completed"});
  report.pass = !result.aborted;
  report.runtime_seconds = runtime_seconds;
  return report;
}

std::string report_to_json(const RunReport& report) {
  nlohmann::ordered_json doc;
  doc["scenario"] = report.scenario;
  doc["pass"] = report.pass;
  doc["runtime_seconds"] = report.runtime_seconds;
  nlohmann::ordered_json metrics;
  const Metrics& m = report.metrics;
  metrics["min_separation"] = m.min_separation ? nlohmann::ordered_json(*m.min_separation)
                                               : nlohmann::ordered_json(nullptr);
  metrics["cpa_time"] =
      m.cpa_time ? nlohmann::ordered_json(*m.cpa_time) : nlohmann::ordered_json(nullptr);
  metrics["time_to_goal"] = m.time_to_goal ? nlohmann::ordered_json(*m.time_to_goal)
                                           : nlohmann::ordered_json(nullptr);
  metrics["cross_track_rms"] = m.cross_track_rms;
  metrics["max_cross_track"] = m.max_cross_track;
  metrics["max_heading_deviation"] = m.max_heading_deviation;
  metrics["colregs_violation"] = m.colregs_violation;
  doc["metrics"] = std::move(metrics);
  nlohmann::ordered_json bounds = nlohmann::ordered_json::array();
  for (const BoundCheck& check : report.bounds) {
    bounds.push_back({{"name", check.name}, {"pass", check.pass}, {"detail", check.detail}});
  }
  doc["bounds"] = std::move(bounds);
  doc["artifacts"] = report.artifacts;
  return doc.dump(2) + "\n";
}

int run_suite(const SuiteOptions& options, std::ostream& out) {
  namespace fs = std::filesystem;
  fs::create_directories(options.out_dir);

  bool all_pass = true;
  out << "scenario  result  min_sep   xte_rms  time_to_goal\n";
  for (const std::string& name : golden_scenario_names()) {
    ScenarioConfig config = golden_scenario(name);
    if (options.seed_override.has_value()) config.seed = *options.seed_override;
    if (options.dt_override.has_value()) config.dt = *options.dt_override;

    const auto start = std::chrono::steady_clock::now();
    RunOptions run_options;
    run_options.dump_bt = options.dump_bt;
    const SimResult result = run_scenario(config, run_options);
    const double runtime =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    RunReport report = evaluate_golden(name, config, result, options.safety_scale, runtime);

    const std::string csv_path = options.out_dir + "/" + name + ".csv";
    const std::string svg_path = options.out_dir + "/" + name + ".svg";
    const std::string report_path = options.out_dir + "/" + name + ".report.json";
    write_log_csv(result.log, csv_path);
    render_trajectory_svg(result.log, config, svg_path);
    report.artifacts = {csv_path, svg_path, report_path};
    if (options.dump_bt) {
      const std::string bt_path = options.out_dir + "/" + name + ".bt.log";
      std::ofstream bt(bt_path, std::ios::binary);
      for (const std::string& line : result.bt_trace) {
        bt << line << '\n';
      }
      report.artifacts.push_back(bt_path);
    }
    {
      std::ofstream rep(report_path, std::ios::binary);
      rep << report_to_json(report);
    }

    std::ostringstream row;
    row << std::left << std::setw(10) << name << (report.pass ? "PASS" : "FAIL") << "    ";
    row << std::setw(10)
        << (result.metrics.min_separation ? fixed_str(*result.metrics.min_separation, 2)
                                          : std::string("-"));
    row << std::setw(9) << fixed_str(result.metrics.cross_track_rms, 3);
    row << (result.metrics.time_to_goal ? fixed_str(*result.metrics.time_to_goal, 1)
                                        : std::string("-"));
    out << row.str() << '\n';
    for (const BoundCheck& check : report.bounds) {
      if (!check.pass) {
        out << "    FAILED bound: " << check.name << " (" << check.detail << ")\n";
      }
    }
    all_pass = all_pass && report.pass;
  }
  out << (all_pass ? "suite: all scenarios passed\n" : "suite: FAILURES present\n");
  return all_pass ? 0 : 1;
}

}  // namespace zest
