#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "dashsim/metrics.hpp"
#include "dashsim/scenario.hpp"

namespace dashsim {

// One (algorithm, speed, run) result. speed_mps is 0 for trace-driven
// channels, where speed plays no role.
struct RunRow {
  std::string algorithm;
  double speed_mps = 0.0;
  int run = 0;
  QoEMetrics metrics;
};

struct CellAggregate {
  std::string algorithm;
  double speed_mps = 0.0;
  Aggregate stats;
};

struct RunFailure {
  std::string algorithm;
  double speed_mps = 0.0;
  int run = 0;
  std::uint64_t seed = 0;
  std::string message;
};

struct BatchResult {
  std::vector<RunRow> runs;          // algorithms in declared order, speeds asc, runs asc
  std::vector<CellAggregate> cells;  // same ordering, over successful runs
  std::vector<RunFailure> failures;
};

// Runs iterations × algorithms × speeds sessions. Run r uses seed
// base_seed + r, and the channel realization depends only on (speed, seed),
// never on the algorithm, so a given run index sees the identical channel
// under every algorithm. Failed runs produce no row, only a failure entry.
BatchResult run_batch(const Scenario& scenario);

// CSV/JSON renderings. Missing per-run metrics appear as "nan" in CSV and
// null in JSON; aggregate rows carry the count n of runs the metric was
// present in.
std::string per_run_csv(const BatchResult& result);
std::string aggregate_csv(const BatchResult& result);
std::string per_run_json(const BatchResult& result);
std::string aggregate_json(const BatchResult& result);
std::string failures_text(const BatchResult& result);

// Writes runs.<ext> and aggregate.<ext> into out_dir (created if needed),
// plus errors.txt when any run failed. Throws std::runtime_error on an
// unwritable path.
enum class ExportFormat { csv, json };
void export_results(const BatchResult& result, ExportFormat format,
                    const std::filesystem::path& out_dir);

}  // namespace dashsim
