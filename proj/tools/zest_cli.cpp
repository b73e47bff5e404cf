#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "zest/golden.hpp"
#include "zest/log_io.hpp"
#include "zest/scenario_io.hpp"
#include "zest/simulator.hpp"
#include "zest/svg_plot.hpp"

namespace {

int run_single(const std::string& file, const std::string& out_dir,
               std::optional<std::uint64_t> seed, std::optional<double> dt, bool dump_bt) {
  zest::ScenarioConfig config = zest::load_scenario_file(file);
  if (seed.has_value()) config.seed = *seed;
  if (dt.has_value()) config.dt = *dt;

  std::filesystem::create_directories(out_dir);

  const auto start = std::chrono::steady_clock::now();
  zest::RunOptions options;
  options.dump_bt = dump_bt;
  const zest::SimResult result = zest::run_scenario(config, options);
  const double runtime =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::string base = out_dir + "/" + config.name;
  zest::write_log_csv(result.log, base + ".csv");
  zest::render_trajectory_svg(result.log, config, base + ".svg");
  if (dump_bt) {
    std::ofstream bt(base + ".bt.log", std::ios::binary);
    for (const std::string& line : result.bt_trace) {
      bt << line << '\n';
    }
  }

  zest::RunReport report = zest::evaluate_adhoc(config, result, runtime);
  report.artifacts = {base + ".csv", base + ".svg", base + ".report.json"};
  {
    std::ofstream rep(base + ".report.json", std::ios::binary);
    rep << zest::report_to_json(report);
  }

  std::cout << "scenario " << config.name << ": " << (report.pass ? "PASS" : "FAIL") << " ("
            << result.log.records.size() << " records, " << runtime << " s)\n";
  if (result.aborted) {
    std::cout << "  aborted: " << result.abort_reason << " at record "
              << result.abort_index << "\n";
  }
  if (result.metrics.min_separation.has_value()) {
    std::cout << "  min separation " << *result.metrics.min_separation << " m at t="
              << *result.metrics.cpa_time << " s\n";
  }
  std::cout << "  cross-track rms " << result.metrics.cross_track_rms << " m\n";
  if (result.metrics.time_to_goal.has_value()) {
    std::cout << "  goal reached at t=" << *result.metrics.time_to_goal << " s\n";
  }
  return report.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic planar USV guidance / collision-avoidance simulator"};
  app.require_subcommand(1);

  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<double> dt;
  bool dump_bt = false;
  double safety_scale = 1.0;

  std::string scenario_file;
  CLI::App* run_cmd = app.add_subcommand("run", "run one scenario file");
  run_cmd->add_option("file", scenario_file, "scenario JSON file")->required();
  run_cmd->add_option("--out", out_dir, "output directory");
  run_cmd->add_option("--seed", seed, "override the scenario seed");
  run_cmd->add_option("--dt", dt, "override the integration step [s]");
  run_cmd->add_flag("--dump-bt", dump_bt, "write a per-tick node status log");

  CLI::App* suite_cmd = app.add_subcommand("suite", "run the five stock scenarios");
  suite_cmd->add_option("--out", out_dir, "output directory");
  suite_cmd->add_option("--seed", seed, "override every scenario seed");
  suite_cmd->add_option("--dt", dt, "override the integration step [s]");
  suite_cmd->add_flag("--dump-bt", dump_bt, "write per-tick node status logs");
  suite_cmd->add_option("--safety-scale", safety_scale,
                        "scale the minimum-separation bound used in reports");

  CLI::App* list_cmd = app.add_subcommand("list", "list the stock scenarios");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list_cmd->parsed()) {
      for (const std::string& name : zest::golden_scenario_names()) {
        std::cout << name << "\n";
      }
      return 0;
    }
    if (suite_cmd->parsed()) {
      zest::SuiteOptions options;
      options.out_dir = out_dir;
      options.safety_scale = safety_scale;
      options.dump_bt = dump_bt;
      options.seed_override = seed;
      options.dt_override = dt;
      return zest::run_suite(options, std::cout);
    }
    return run_single(scenario_file, out_dir, seed, dt, dump_bt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
