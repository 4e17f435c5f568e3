#include "dashsim/runner.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>

#include "dashsim/adapters.hpp"
#include "dashsim/engine.hpp"
#include "dashsim/text.hpp"

namespace dashsim {

BatchResult run_batch(const Scenario& scenario) {
  scenario.validate();
  const VideoManifest manifest = scenario.make_manifest();
  const std::vector<std::string> algos = scenario.algorithm_list();
  const bool markov = scenario.channel_kind == ChannelKind::markov;

  std::map<std::string, std::unique_ptr<Adapter>> adapters;
  for (const std::string& name : algos) {
    auto it = scenario.overrides.find(name);
    adapters[name] = make_adapter(
        name, it == scenario.overrides.end() ? std::map<std::string, std::string>{} : it->second);
  }

  std::vector<double> speeds;
  std::optional<PiecewiseTrace> file_trace;
  if (markov) {
    speeds = scenario.speeds_mps;
    std::sort(speeds.begin(), speeds.end());
    speeds.erase(std::unique(speeds.begin(), speeds.end()), speeds.end());
  } else {
    speeds = {0.0};  // speed plays no role under a fixed trace
    file_trace = PiecewiseTrace::load(scenario.trace_path);
  }

  BatchResult result;
  for (double speed : speeds) {
    for (int run = 0; run < scenario.iterations; ++run) {
      std::uint64_t seed = scenario.base_seed + static_cast<std::uint64_t>(run);
      // One realization per (speed, run), shared by every algorithm, so
      // cross-algorithm differences are never channel noise.
      std::optional<PiecewiseTrace> channel = file_trace;
      if (markov) {
        MarkovVehicularModel model = scenario.markov;
        model.speed_mps = speed;
        model.seed = seed;
        channel = realize_markov_path(model, scenario.duration_limit_s);
      }
      for (const std::string& name : algos) {
        try {
          SessionConfig cfg{scenario.duration_limit_s, scenario.buffer_cap_s, seed};
          SessionTrace trace = run_session(manifest, *channel, *adapters[name], cfg);
          result.runs.push_back({name, speed, run, compute_metrics(trace)});
        } catch (const std::exception& e) {
          result.failures.push_back({name, speed, run, seed, e.what()});
        }
      }
    }
  }

  auto order_of = [&algos](const std::string& name) {
    return std::find(algos.begin(), algos.end(), name) - algos.begin();
  };
  std::sort(result.runs.begin(), result.runs.end(), [&](const RunRow& a, const RunRow& b) {
    return std::tuple(order_of(a.algorithm), a.speed_mps, a.run) <
           std::tuple(order_of(b.algorithm), b.speed_mps, b.run);
  });
  std::sort(result.failures.begin(), result.failures.end(),
            [&](const RunFailure& a, const RunFailure& b) {
              return std::tuple(order_of(a.algorithm), a.speed_mps, a.run) <
                     std::tuple(order_of(b.algorithm), b.speed_mps, b.run);
            });

  for (const std::string& name : algos) {
    for (double speed : speeds) {
      std::vector<QoEMetrics> cell;
      for (const RunRow& row : result.runs)
        if (row.algorithm == name && row.speed_mps == speed) cell.push_back(row.metrics);
      if (!cell.empty()) result.cells.push_back({name, speed, aggregate(cell)});
    }
  }
  return result;
}

namespace {

std::string opt_field(const std::optional<double>& v) {
  return v ? format_double(*v) : "nan";
}

struct MetricColumn {
  const char* name;
  MetricStat Aggregate::* stat;
};

constexpr MetricColumn kMetricColumns[] = {
    {"avg_bitrate_bps", &Aggregate::avg_bitrate_bps},
    {"interruptions", &Aggregate::interruptions},
    {"interruption_time_s", &Aggregate::interruption_time_s},
    {"resolution_changes", &Aggregate::resolution_changes},
    {"avg_buffering_s", &Aggregate::avg_buffering_s},
    {"startup_delay_s", &Aggregate::startup_delay_s},
};

nlohmann::ordered_json json_opt(const std::optional<double>& v) {
  if (v) return *v;
  return nullptr;
}

}  // namespace

std::string per_run_csv(const BatchResult& result) {
  std::string out =
      "algorithm,speed_mps,run,avg_bitrate_bps,interruptions,interruption_time_s,"
      "resolution_changes,avg_buffering_s,startup_delay_s\n";
  for (const RunRow& row : result.runs) {
    const QoEMetrics& m = row.metrics;
    out += row.algorithm + "," + format_double(row.speed_mps) + "," + std::to_string(row.run) +
           "," + opt_field(m.avg_bitrate_bps) + "," + std::to_string(m.interruptions) + "," +
           format_double(m.interruption_time_s) + "," + std::to_string(m.resolution_changes) +
           "," + opt_field(m.avg_buffering_s) + "," + opt_field(m.startup_delay_s) + "\n";
  }
  return out;
}

std::string aggregate_csv(const BatchResult& result) {
  std::string out = "algorithm,speed_mps,metric,mean,ci95_halfwidth,n\n";
  for (const CellAggregate& cell : result.cells) {
    for (const MetricColumn& col : kMetricColumns) {
      const MetricStat& stat = cell.stats.*col.stat;
      out += cell.algorithm + "," + format_double(cell.speed_mps) + "," + col.name + "," +
             format_double(stat.mean) + "," + format_double(stat.ci95_halfwidth) + "," +
             std::to_string(stat.n) + "\n";
    }
  }
  return out;
}

std::string per_run_json(const BatchResult& result) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const RunRow& row : result.runs) {
    const QoEMetrics& m = row.metrics;
    rows.push_back({{"algorithm", row.algorithm},
                    {"speed_mps", row.speed_mps},
                    {"run", row.run},
                    {"avg_bitrate_bps", json_opt(m.avg_bitrate_bps)},
                    {"interruptions", m.interruptions},
                    {"interruption_time_s", m.interruption_time_s},
                    {"resolution_changes", m.resolution_changes},
                    {"avg_buffering_s", json_opt(m.avg_buffering_s)},
                    {"startup_delay_s", json_opt(m.startup_delay_s)}});
  }
  return rows.dump(2) + "\n";
}

std::string aggregate_json(const BatchResult& result) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const CellAggregate& cell : result.cells) {
    for (const MetricColumn& col : kMetricColumns) {
      const MetricStat& stat = cell.stats.*col.stat;
      nlohmann::ordered_json row = {{"algorithm", cell.algorithm},
                                    {"speed_mps", cell.speed_mps},
                                    {"metric", col.name},
                                    {"mean", stat.mean},
                                    {"ci95_halfwidth", stat.ci95_halfwidth},
                                    {"n", stat.n}};
      rows.push_back(std::move(row));
    }
  }
  return rows.dump(2) + "\n";
}

std::string failures_text(const BatchResult& result) {
  std::string out;
  for (const RunFailure& f : result.failures)
    out += "algorithm=" + f.algorithm + " speed_mps=" + format_double(f.speed_mps) +
           " run=" + std::to_string(f.run) + " seed=" + std::to_string(f.seed) + ": " +
           f.message + "\n";
  return out;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

void export_results(const BatchResult& result, ExportFormat format,
                    const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create " + out_dir.string() + ": " + ec.message());
  if (format == ExportFormat::csv) {
    write_file(out_dir / "runs.csv", per_run_csv(result));
    write_file(out_dir / "aggregate.csv", aggregate_csv(result));
  } else {
    write_file(out_dir / "runs.json", per_run_json(result));
    write_file(out_dir / "aggregate.json", aggregate_json(result));
  }
  if (!result.failures.empty()) write_file(out_dir / "errors.txt", failures_text(result));
}

}  // namespace dashsim
