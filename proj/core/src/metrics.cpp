#include "dashsim/metrics.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dashsim {

QoEMetrics compute_metrics(const SessionTrace& trace) {
  QoEMetrics m;
  m.played_segments = static_cast<int>(trace.playback.size());

  for (const StallEpisode& st : trace.stalls) {
    if (st.kind == StallKind::mid_stream) {
      ++m.interruptions;
      m.interruption_time_s += st.duration_s();
    } else {
      m.startup_delay_s = st.duration_s();
    }
  }

  if (trace.playback.empty()) return m;

  std::vector<double> rep_bitrate(trace.downloads.size());
  std::vector<int> rep_of(trace.downloads.size());
  for (size_t i = 0; i < trace.downloads.size(); ++i) {
    rep_of[i] = trace.downloads[i].rep;
    rep_bitrate[i] = trace.manifest.bitrate_bps(trace.downloads[i].rep);
  }

  double bitrate_sum = 0.0;
  double buffering_sum = 0.0;
  for (size_t i = 0; i < trace.playback.size(); ++i) {
    const PlaybackEvent& ev = trace.playback[i];
    bitrate_sum += rep_bitrate[static_cast<size_t>(ev.segment_index)];
    buffering_sum += ev.buffering_s;
    if (i > 0 && rep_of[static_cast<size_t>(ev.segment_index)] !=
                     rep_of[static_cast<size_t>(trace.playback[i - 1].segment_index)])
      ++m.resolution_changes;
  }
  m.avg_bitrate_bps = bitrate_sum / static_cast<double>(trace.playback.size());
  m.avg_buffering_s = buffering_sum / static_cast<double>(trace.playback.size());
  return m;
}

double student_t_975(int dof) {
  if (dof < 1) throw std::invalid_argument("degrees of freedom must be >= 1");
  boost::math::students_t_distribution<double> dist(static_cast<double>(dof));
  return boost::math::quantile(dist, 0.975);
}

MetricStat summarize(const std::vector<double>& values) {
  MetricStat stat;
  stat.n = static_cast<int>(values.size());
  if (values.empty()) {
    stat.mean = std::numeric_limits<double>::quiet_NaN();
    stat.ci95_halfwidth = std::numeric_limits<double>::quiet_NaN();
    return stat;
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  stat.mean = sum / static_cast<double>(values.size());
  if (values.size() == 1) return stat;
  double ss = 0.0;
  for (double v : values) ss += (v - stat.mean) * (v - stat.mean);
  double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  stat.ci95_halfwidth =
      student_t_975(stat.n - 1) * sd / std::sqrt(static_cast<double>(values.size()));
  return stat;
}

Aggregate aggregate(const std::vector<QoEMetrics>& runs) {
  if (runs.empty()) throw std::invalid_argument("aggregate over an empty run list");
  std::vector<double> bitrate, interruptions, itime, changes, buffering, startup;
  for (const QoEMetrics& m : runs) {
    if (m.avg_bitrate_bps) bitrate.push_back(*m.avg_bitrate_bps);
    interruptions.push_back(static_cast<double>(m.interruptions));
    itime.push_back(m.interruption_time_s);
    changes.push_back(static_cast<double>(m.resolution_changes));
    if (m.avg_buffering_s) buffering.push_back(*m.avg_buffering_s);
    if (m.startup_delay_s) startup.push_back(*m.startup_delay_s);
  }
  Aggregate agg;
  agg.avg_bitrate_bps = summarize(bitrate);
  agg.interruptions = summarize(interruptions);
  agg.interruption_time_s = summarize(itime);
  agg.resolution_changes = summarize(changes);
  agg.avg_buffering_s = summarize(buffering);
  agg.startup_delay_s = summarize(startup);
  return agg;
}

}  // namespace dashsim
