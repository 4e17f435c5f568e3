#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dashsim/runner.hpp"
#include "dashsim/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"DASH adaptive-streaming session simulator"};

  std::string config_path;
  std::string trace_path;
  std::string out_dir = "results";
  std::string format = "csv";
  std::vector<std::string> algorithms;
  std::vector<double> speeds;
  int iterations = 1;
  std::uint64_t seed = 1;

  app.add_option("--config", config_path, "scenario file (key=value sections)");
  app.add_option("--algorithm", algorithms, "algorithm to run; repeatable")->delimiter(',');
  app.add_option("--speed", speeds, "vehicle speed in m/s; repeatable")->delimiter(',');
  app.add_option("--iterations", iterations, "runs per (algorithm, speed) cell");
  app.add_option("--seed", seed, "base seed; run r uses base+r");
  app.add_option("--trace", trace_path, "bandwidth trace file; replaces the vehicular channel");
  app.add_option("--out-dir", out_dir, "output directory")->capture_default_str();
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    dashsim::Scenario scenario;
    if (!config_path.empty()) scenario = dashsim::load_scenario(config_path);
    if (!algorithms.empty()) scenario.algorithms = algorithms;
    if (!speeds.empty()) scenario.speeds_mps = speeds;
    if (app.count("--iterations") > 0) scenario.iterations = iterations;
    if (app.count("--seed") > 0) scenario.base_seed = seed;
    if (!trace_path.empty()) {
      scenario.trace_path = trace_path;
      scenario.channel_kind = dashsim::ChannelKind::trace;
    }
    scenario.validate();

    dashsim::BatchResult result = dashsim::run_batch(scenario);
    dashsim::ExportFormat fmt =
        format == "csv" ? dashsim::ExportFormat::csv : dashsim::ExportFormat::json;
    dashsim::export_results(result, fmt, out_dir);

    std::cout << result.runs.size() << " runs across " << result.cells.size()
              << " cells written to " << out_dir << "/runs." << format << "\n";
    if (!result.failures.empty()) {
      std::cerr << result.failures.size() << " runs failed; see " << out_dir
                << "/errors.txt\n";
      return 2;
    }
    return 0;
  } catch (const dashsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
