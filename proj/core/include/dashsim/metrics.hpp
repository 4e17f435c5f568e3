#pragma once

#include <optional>
#include <vector>

#include "dashsim/engine.hpp"

namespace dashsim {

// Per-session QoE. The optional fields have no value when the session never
// played a segment (cut off before startup); they are reported as n/a, not
// as zeros.
struct QoEMetrics {
  std::optional<double> avg_bitrate_bps;  // unweighted mean over played segments
  int interruptions = 0;                  // mid-stream stall count
  double interruption_time_s = 0.0;       // total mid-stream stall time
  int resolution_changes = 0;             // adjacent played pairs with differing rep
  std::optional<double> avg_buffering_s;  // mean buffering time over played segments
  std::optional<double> startup_delay_s;  // initial-startup episode, kept out of the above
  int played_segments = 0;
};

QoEMetrics compute_metrics(const SessionTrace& trace);

// mean ± Student-t 95% halfwidth. n == 1 yields halfwidth 0; n == 0 (metric
// absent in every run) yields NaN mean with n = 0.
struct MetricStat {
  double mean = 0.0;
  double ci95_halfwidth = 0.0;
  int n = 0;
};

MetricStat summarize(const std::vector<double>& values);

struct Aggregate {
  MetricStat avg_bitrate_bps;
  MetricStat interruptions;
  MetricStat interruption_time_s;
  MetricStat resolution_changes;
  MetricStat avg_buffering_s;
  MetricStat startup_delay_s;
};

// Throws std::invalid_argument on an empty run list.
Aggregate aggregate(const std::vector<QoEMetrics>& runs);

// 0.975 quantile of Student's t with dof degrees of freedom.
double student_t_975(int dof);

}  // namespace dashsim
