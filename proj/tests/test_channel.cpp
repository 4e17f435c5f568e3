#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <vector>

#include "dashsim/channel.hpp"
#include "dashsim/rng.hpp"

using namespace dashsim;

TEST_CASE("bandwidth_at is right-continuous at breakpoints") {
  PiecewiseTrace tr({{0.0, 1e6}, {1.0, 3e6}});
  CHECK(tr.bandwidth_at(0.5) == 1e6);
  CHECK(tr.bandwidth_at(1.0) == 3e6);  // boundary belongs to the new piece
  CHECK(tr.bandwidth_at(0.0) == 1e6);
  CHECK(tr.bandwidth_at(100.0) == 3e6);  // last rate holds forever
  CHECK_THROWS_AS(tr.bandwidth_at(-0.1), std::domain_error);
}

TEST_CASE("transfer_time integrates across breakpoints") {
  PiecewiseTrace tr({{0.0, 1e6}, {1.0, 3e6}});
  // 1 Mbit in the first second, the remaining 1 Mbit at 3 Mbps.
  CHECK(tr.transfer_time(2e6, 0.0) == doctest::Approx(1.0 + 1.0 / 3.0).epsilon(1e-12));

  PiecewiseTrace flat({{0.0, 2e6}});
  CHECK(flat.transfer_time(2e6, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(flat.transfer_time(2e6, 7.25) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero-rate pieces add waiting time") {
  PiecewiseTrace tr({{0.0, 1e6}, {1.0, 0.0}, {2.0, 1e6}});
  // 1 Mbit by t=1, one second stalled, 0.5 Mbit more by t=2.5.
  CHECK(tr.transfer_time(1.5e6, 0.0) == doctest::Approx(2.5).epsilon(1e-12));
  // Starting inside the outage just waits for it to end.
  CHECK(tr.transfer_time(1e6, 1.5) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("trace construction rejects malformed inputs") {
  CHECK_THROWS_AS(PiecewiseTrace({}), std::invalid_argument);
  CHECK_THROWS_AS(PiecewiseTrace({{1.0, 1e6}}), std::invalid_argument);           // not at 0
  CHECK_THROWS_AS(PiecewiseTrace({{0.0, 1e6}, {1.0, 0.0}}), std::invalid_argument);  // zero tail
  CHECK_THROWS_AS(PiecewiseTrace({{0.0, -1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(PiecewiseTrace({{0.0, 1e6}, {1.0, 2e6}, {1.0, 3e6}}),
                  std::invalid_argument);  // not strictly increasing
  PiecewiseTrace ok({{0.0, 1e6}});
  CHECK_THROWS_AS(ok.transfer_time(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ok.transfer_time(-1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ok.transfer_time(1.0, -1.0), std::domain_error);
}

namespace {

// Independent check: integrate bandwidth_at over [start, start+d] by walking
// the breakpoints directly.
double integrate_rate(const PiecewiseTrace& tr, double start, double duration) {
  std::vector<double> cuts{start, start + duration};
  for (const RatePoint& p : tr.points())
    if (p.time_s > start && p.time_s < start + duration) cuts.push_back(p.time_s);
  std::sort(cuts.begin(), cuts.end());
  double bits = 0.0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i)
    bits += tr.bandwidth_at(cuts[i]) * (cuts[i + 1] - cuts[i]);
  return bits;
}

PiecewiseTrace random_trace(SplitMix64& rng) {
  int pieces = 1 + rng.next_index(6);
  std::vector<RatePoint> pts;
  double t = 0.0;
  for (int i = 0; i < pieces; ++i) {
    double rate = (i + 1 == pieces || rng.next_double() > 0.2)
                      ? 2e5 + 6e6 * rng.next_double()
                      : 0.0;
    pts.push_back({t, rate});
    t += 0.25 + 10.0 * rng.next_double();
  }
  return PiecewiseTrace(std::move(pts));
}

}  // namespace

TEST_CASE("transfer_time inverts the bandwidth integral") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    PiecewiseTrace tr = random_trace(rng);
    double start = 20.0 * rng.next_double();
    double bits = 1e4 + 2e7 * rng.next_double();
    double d = tr.transfer_time(bits, start);
    CHECK(integrate_rate(tr, start, d) == doctest::Approx(bits).epsilon(1e-9));
    // Strictly fewer bits finish no later.
    CHECK(tr.transfer_time(bits * 0.5, start) <= d + 1e-12);
  }
}

TEST_CASE("trace text round-trips exactly") {
  PiecewiseTrace tr({{0.0, 350e3}, {12.5, 0.0}, {13.0, 1.0 / 3.0 * 1e6}});
  PiecewiseTrace back = PiecewiseTrace::parse(tr.to_text());
  REQUIRE(back.points().size() == tr.points().size());
  for (size_t i = 0; i < tr.points().size(); ++i) {
    CHECK(back.points()[i].time_s == tr.points()[i].time_s);
    CHECK(back.points()[i].rate_bps == tr.points()[i].rate_bps);
  }
}

TEST_CASE("trace parser handles comments and reports line numbers") {
  PiecewiseTrace tr = PiecewiseTrace::parse("# header\n0 1e6\n\n10 2e6  # mid\n");
  REQUIRE(tr.points().size() == 2);
  CHECK(tr.points()[1].time_s == 10.0);
  CHECK(tr.points()[1].rate_bps == 2e6);

  CHECK_THROWS_WITH_AS(PiecewiseTrace::parse("0 1e6\n5\n"),
                       doctest::Contains("line 2"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(PiecewiseTrace::parse("0 1e6\n5 2e6 extra\n"),
                       doctest::Contains("line 2"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(PiecewiseTrace::parse("zero 1e6\n"),
                       doctest::Contains("line 1"), std::invalid_argument);
}

TEST_CASE("trace load reads files and fails loudly on missing ones") {
  std::filesystem::path file =
      std::filesystem::temp_directory_path() / "dashsim_test_trace.txt";
  {
    std::ofstream out(file);
    out << "0 1e6\n3 4e6\n";
  }
  PiecewiseTrace tr = PiecewiseTrace::load(file);
  CHECK(tr.bandwidth_at(4.0) == 4e6);
  std::filesystem::remove(file);
  CHECK_THROWS_AS(PiecewiseTrace::load(file), std::runtime_error);
}

TEST_CASE("vehicular model validation") {
  MarkovVehicularModel m = default_vehicular_model();
  CHECK_NOTHROW(m.validate());

  MarkovVehicularModel bad = m;
  bad.transition[1] = {0.5, 0.0, 0.4, 0.0};  // row sums to 0.9
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = m;
  bad.speed_mps = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = m;
  bad.handover_outage_s = 200.0;  // longer than the 50 s spacing at 5 m/s
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = m;
  for (ChannelState& s : bad.states) s.rate_bps = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = m;
  bad.states[2].coherence_m = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("nearest-neighbor matrix reflects at the ends") {
  auto m = nearest_neighbor_matrix(4);
  CHECK(m[0] == std::vector<double>{0.0, 1.0, 0.0, 0.0});
  CHECK(m[1] == std::vector<double>{0.5, 0.0, 0.5, 0.0});
  CHECK(m[2] == std::vector<double>{0.0, 0.5, 0.0, 0.5});
  CHECK(m[3] == std::vector<double>{0.0, 0.0, 1.0, 0.0});
  CHECK(nearest_neighbor_matrix(1) == std::vector<std::vector<double>>{{1.0}});
}

TEST_CASE("single-state model yields a constant rate with handover gaps") {
  MarkovVehicularModel m;
  m.states = {{"only", 2e6, 80.0}};
  m.transition = nearest_neighbor_matrix(1);
  m.speed_mps = 10.0;
  m.handover_interval_m = 500.0;  // gap every 50 s
  m.handover_outage_s = 0.5;
  m.seed = 31;

  PiecewiseTrace tr = realize_markov_path(m, 200.0);
  std::vector<RatePoint> expect{{0.0, 2e6},   {50.0, 0.0},  {50.5, 2e6},
                                {100.0, 0.0}, {100.5, 2e6}, {150.0, 0.0},
                                {150.5, 2e6}};
  REQUIRE(tr.points().size() == expect.size());
  for (size_t i = 0; i < expect.size(); ++i) {
    CHECK(tr.points()[i].time_s == doctest::Approx(expect[i].time_s).epsilon(1e-12));
    CHECK(tr.points()[i].rate_bps == expect[i].rate_bps);
  }
  CHECK(tr.bandwidth_at(50.2) == 0.0);

  // Disabled outages leave the rate flat.
  m.handover_outage_s = 0.0;
  PiecewiseTrace flat = realize_markov_path(m, 200.0);
  REQUIRE(flat.points().size() == 1);
  CHECK(flat.points()[0].rate_bps == 2e6);
}

TEST_CASE("same seed reproduces the channel byte for byte") {
  MarkovVehicularModel m = default_vehicular_model();
  m.speed_mps = 25.0;
  m.seed = 77;
  std::string a = realize_markov_path(m, 550.0).to_text();
  std::string b = realize_markov_path(m, 550.0).to_text();
  CHECK(a == b);
  m.seed = 78;
  CHECK(realize_markov_path(m, 550.0).to_text() != a);
}

TEST_CASE("empirical dwell times track coherence_length over speed") {
  MarkovVehicularModel m;
  m.states = {{"a", 1e6, 50.0}, {"b", 2e6, 100.0}};
  m.transition = nearest_neighbor_matrix(2);
  m.speed_mps = 10.0;  // mean dwells 5 s and 10 s
  m.handover_outage_s = 0.0;
  m.seed = 42;

  PiecewiseTrace tr = realize_markov_path(m, 30000.0);
  std::map<double, std::pair<double, int>> by_rate;  // rate -> (total, count)
  const auto& pts = tr.points();
  for (size_t i = 0; i + 1 < pts.size(); ++i) {  // last sojourn is open-ended
    auto& [total, count] = by_rate[pts[i].rate_bps];
    total += pts[i + 1].time_s - pts[i].time_s;
    ++count;
  }
  REQUIRE(by_rate.count(1e6) == 1);
  REQUIRE(by_rate.count(2e6) == 1);
  CHECK(by_rate[1e6].second > 1000);
  CHECK(by_rate[2e6].second > 1000);
  double mean_a = by_rate[1e6].first / by_rate[1e6].second;
  double mean_b = by_rate[2e6].first / by_rate[2e6].second;
  CHECK(mean_a == doctest::Approx(5.0).epsilon(0.05));
  CHECK(mean_b == doctest::Approx(10.0).epsilon(0.05));
}

TEST_CASE("doubling speed doubles the transition count") {
  MarkovVehicularModel m;
  m.states = {{"a", 1e6, 50.0}, {"b", 2e6, 100.0}};
  m.transition = nearest_neighbor_matrix(2);
  m.handover_outage_s = 0.0;

  auto total_transitions = [&](double speed) {
    long total = 0;
    for (uint64_t seed = 1; seed <= 1000; ++seed) {
      MarkovVehicularModel run = m;
      run.speed_mps = speed;
      run.seed = seed;
      total += static_cast<long>(realize_markov_path(run, 200.0).points().size()) - 1;
    }
    return total;
  };

  long slow = total_transitions(10.0);
  long fast = total_transitions(20.0);
  CHECK(slow > 1000);
  double ratio = static_cast<double>(fast) / static_cast<double>(slow);
  CHECK(ratio == doctest::Approx(2.0).epsilon(0.10));
}
