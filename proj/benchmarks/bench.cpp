#include <benchmark/benchmark.h>

#include "dashsim/adapters.hpp"
#include "dashsim/channel.hpp"
#include "dashsim/engine.hpp"
#include "dashsim/fuzzy.hpp"
#include "dashsim/manifest.hpp"
#include "dashsim/rng.hpp"

namespace {

dashsim::PiecewiseTrace busy_trace(int pieces) {
  dashsim::SplitMix64 rng(7);
  std::vector<dashsim::RatePoint> points;
  points.reserve(pieces);
  for (int i = 0; i < pieces; ++i)
    points.push_back({static_cast<double>(i), 5e5 + 5.5e6 * rng.next_double()});
  return dashsim::PiecewiseTrace(std::move(points));
}

void BM_TransferTime(benchmark::State& state) {
  dashsim::PiecewiseTrace trace = busy_trace(1000);
  double start = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(trace.transfer_time(8.4e6, start));
    start += 1.0;
    if (start > 900.0) start = 0.0;
  }
}
BENCHMARK(BM_TransferTime);

void BM_FuzzyFactor(benchmark::State& state) {
  dashsim::FuzzyConfig cfg;
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dashsim::fuzzy_factor(t, t - 40.0, cfg));
    t += 0.7;
    if (t > 150.0) t = 0.0;
  }
}
BENCHMARK(BM_FuzzyFactor);

void BM_RealizeMarkovPath(benchmark::State& state) {
  dashsim::MarkovVehicularModel model = dashsim::default_vehicular_model();
  model.speed_mps = 40.0;
  for (auto _ : state) {
    model.seed += 1;
    benchmark::DoNotOptimize(dashsim::realize_markov_path(model, 550.0));
  }
}
BENCHMARK(BM_RealizeMarkovPath);

void BM_FdashSession(benchmark::State& state) {
  dashsim::VideoManifest manifest = dashsim::default_manifest();
  dashsim::MarkovVehicularModel model = dashsim::default_vehicular_model();
  model.speed_mps = 20.0;
  dashsim::PiecewiseTrace channel = dashsim::realize_markov_path(model, 550.0);
  dashsim::FdashAdapter adapter;
  dashsim::SessionConfig config;
  for (auto _ : state)
    benchmark::DoNotOptimize(dashsim::run_session(manifest, channel, adapter, config));
}
BENCHMARK(BM_FdashSession);

}  // namespace

BENCHMARK_MAIN();
