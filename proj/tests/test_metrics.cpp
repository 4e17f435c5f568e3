#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dashsim/adapters.hpp"
#include "dashsim/metrics.hpp"

using namespace dashsim;

namespace {

// ~1 Mbps session over a 0.5 Mbps channel: startup 4 s, then two 2 s
// mid-stream stalls.
SessionTrace stalling_session() {
  VideoManifest m(2.0, 3, {1e6});
  PiecewiseTrace channel({{0.0, 0.5e6}});
  FixedRateAdapter adapter(0);
  return run_session(m, channel, adapter, SessionConfig{});
}

}  // namespace

TEST_CASE("stall accounting separates startup from interruptions") {
  QoEMetrics q = compute_metrics(stalling_session());
  CHECK(q.played_segments == 3);
  REQUIRE(q.avg_bitrate_bps.has_value());
  CHECK(*q.avg_bitrate_bps == doctest::Approx(1e6).epsilon(1e-12));
  CHECK(q.interruptions == 2);
  CHECK(q.interruption_time_s == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(q.resolution_changes == 0);
  REQUIRE(q.avg_buffering_s.has_value());
  CHECK(*q.avg_buffering_s == doctest::Approx(0.0).epsilon(1e-9));
  REQUIRE(q.startup_delay_s.has_value());
  CHECK(*q.startup_delay_s == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("smooth session has no interruptions") {
  VideoManifest m(2.0, 3, {1e6});
  PiecewiseTrace channel({{0.0, 2e6}});
  FixedRateAdapter adapter(0);
  QoEMetrics q = compute_metrics(run_session(m, channel, adapter, SessionConfig{}));
  CHECK(q.interruptions == 0);
  CHECK(q.interruption_time_s == 0.0);
  CHECK(*q.startup_delay_s == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(*q.avg_buffering_s == doctest::Approx(1.0).epsilon(1e-9));  // mean of 0,1,2
}

TEST_CASE("resolution changes count adjacent played pairs") {
  VideoManifest m(2.0, 4, {1e6, 2e6});
  SessionTrace tr{{}, {}, {}, m, SessionConfig{}, "synthetic", 12.0};
  int reps[] = {0, 1, 1, 0};
  for (int i = 0; i < 4; ++i) {
    DownloadRecord d;
    d.segment_index = i;
    d.rep = reps[i];
    d.begin_time_s = i;
    d.end_time_s = i + 0.5;
    d.bits = segment_size_bits(m, reps[i]);
    tr.downloads.push_back(d);
    tr.playback.push_back({i, i + 1.0, 0.0});
  }

  QoEMetrics q = compute_metrics(tr);
  CHECK(q.resolution_changes == 2);
  CHECK(*q.avg_bitrate_bps == doctest::Approx(1.5e6).epsilon(1e-12));
  CHECK(q.played_segments == 4);
  // No stall episodes recorded in this synthetic trace.
  CHECK(!q.startup_delay_s.has_value());
  CHECK(q.interruptions == 0);
}

TEST_CASE("a session with no playback reports n/a metrics") {
  VideoManifest m(2.0, 3, {1e6});
  PiecewiseTrace channel({{0.0, 2e6}});
  FixedRateAdapter adapter(0);
  SessionConfig cfg;
  cfg.duration_limit_s = 0.5;
  QoEMetrics q = compute_metrics(run_session(m, channel, adapter, cfg));
  CHECK(q.played_segments == 0);
  CHECK(!q.avg_bitrate_bps.has_value());
  CHECK(!q.avg_buffering_s.has_value());
  CHECK(!q.startup_delay_s.has_value());
  CHECK(q.interruptions == 0);
  CHECK(q.resolution_changes == 0);
}

TEST_CASE("student t quantiles match table values") {
  CHECK(student_t_975(1) == doctest::Approx(12.706204736).epsilon(1e-9));
  CHECK(student_t_975(2) == doctest::Approx(4.302652730).epsilon(1e-9));
  CHECK(student_t_975(29) == doctest::Approx(2.045229642).epsilon(1e-9));
  CHECK(student_t_975(120) == doctest::Approx(1.979930405).epsilon(1e-9));
}

TEST_CASE("summarize computes the t-based confidence halfwidth") {
  // n=3, sd=1: halfwidth = t_{.975,2} / sqrt(3) = 2.4841558...
  MetricStat s = summarize({1.0, 2.0, 3.0});
  CHECK(s.n == 3);
  CHECK(s.mean == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(s.ci95_halfwidth == doctest::Approx(2.4841377118).epsilon(1e-9));

  MetricStat flat = summarize({5.0, 5.0, 5.0, 5.0});
  CHECK(flat.mean == 5.0);
  CHECK(flat.ci95_halfwidth == 0.0);

  MetricStat single = summarize({7.0});
  CHECK(single.n == 1);
  CHECK(single.mean == 7.0);
  CHECK(single.ci95_halfwidth == 0.0);

  MetricStat empty = summarize({});
  CHECK(empty.n == 0);
  CHECK(std::isnan(empty.mean));

  // Order of the samples cannot matter.
  MetricStat perm = summarize({3.0, 1.0, 2.0});
  CHECK(perm.mean == s.mean);
  CHECK(perm.ci95_halfwidth == doctest::Approx(s.ci95_halfwidth).epsilon(1e-15));
}

TEST_CASE("aggregate pools runs and skips absent optionals") {
  QoEMetrics a;
  a.avg_bitrate_bps = 1e6;
  a.interruptions = 1;
  a.interruption_time_s = 2.0;
  a.resolution_changes = 3;
  a.avg_buffering_s = 10.0;
  a.startup_delay_s = 0.5;
  a.played_segments = 10;

  QoEMetrics b = a;
  b.avg_bitrate_bps = 3e6;
  b.interruptions = 3;

  QoEMetrics empty;  // no playback: optionals absent, counters zero

  Aggregate agg = aggregate({a, b, empty});
  CHECK(agg.avg_bitrate_bps.n == 2);  // the empty run contributes nothing here
  CHECK(agg.avg_bitrate_bps.mean == doctest::Approx(2e6).epsilon(1e-12));
  CHECK(agg.interruptions.n == 3);  // counters are always present
  CHECK(agg.interruptions.mean == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(agg.startup_delay_s.n == 2);
  CHECK(agg.startup_delay_s.mean == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(aggregate({}), std::invalid_argument);
}
