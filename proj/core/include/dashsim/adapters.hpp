#pragma once

#include <map>
#include <memory>
#include <string>

#include "dashsim/abr.hpp"
#include "dashsim/fuzzy.hpp"
#include "dashsim/manifest.hpp"

namespace dashsim {

// Buffer projected Δ seconds ahead while downloading at `bitrate_bps` and
// receiving `throughput_bps`: proj(Δ) = t + Δ·(throughput/bitrate − 1),
// minimized over Δ ∈ [0, horizon]. Linear, so the minimum sits at an
// endpoint.
double min_projected_buffer(double t_s, double throughput_bps, double bitrate_bps,
                            double horizon_s);

// Switch-suppression rule: an up-switch is dropped when the projected buffer
// dips below target within the horizon at the candidate rate; a down-switch
// is dropped when it stays at or above target at the current rate. Returns
// the representation to actually use.
int apply_hysteresis(int current, int candidate, double t_s, double throughput_bps,
                     const VideoManifest& manifest, const FuzzyConfig& cfg);

// Fuzzy controller: next bitrate = fuzzy_factor(t, Δt) × windowed
// throughput, quantized to the ladder and passed through the hysteresis
// rule. Regulates purely via rate, never by idling.
class FdashAdapter : public Adapter {
 public:
  explicit FdashAdapter(FuzzyConfig cfg = {});
  std::string_view name() const override { return "fdash"; }
  AdapterDecision decide(const AdapterInputs& in) override;
  const FuzzyConfig& config() const { return cfg_; }

 private:
  FuzzyConfig cfg_;
};

// Buffer-threshold policy with four bands. Below buffer_min the client
// panics to the lowest representation; below buffer_low it steps down one
// level when the current bitrate exceeds throughput; inside the band it
// holds; above buffer_high it steps up one level when the next bitrate fits
// under safety × throughput. Requests idle until the buffer is back at
// buffer_max.
struct AaashConfig {
  double buffer_min_s = 10.5;
  double buffer_low_s = 21.0;
  double buffer_high_s = 35.0;
  double buffer_max_s = 52.5;
  double safety = 0.9;
  double window_s = 10.0;
};

class AaashAdapter : public Adapter {
 public:
  explicit AaashAdapter(AaashConfig cfg = {});
  std::string_view name() const override { return "aaash"; }
  AdapterDecision decide(const AdapterInputs& in) override;

 private:
  AaashConfig cfg_;
};

// Compares the last segment fetch time against the segment duration:
// μ = τ/SFT. Steps up one level when μ clears 1+ε (ε is the largest
// relative gap between adjacent ladder rates), drops to quantize(μ × current
// bitrate) in a single decision when μ falls under down_ratio.
struct RaahsConfig {
  double down_ratio = 0.67;
  double buffer_max_s = 50.0;
};

class RaahsAdapter : public Adapter {
 public:
  explicit RaahsAdapter(RaahsConfig cfg = {});
  std::string_view name() const override { return "raahs"; }
  AdapterDecision decide(const AdapterInputs& in) override;

 private:
  RaahsConfig cfg_;
};

// Like RAAHS but the reference fetch time adapts to the buffer:
// ESFT = clamp(τ + beta·(t − target), τ/2, 2τ), ρ = ESFT/SFT. Step-wise up,
// multi-step down via quantize(ρ × current bitrate).
struct SftmConfig {
  double beta = 0.5;
  double target_s = 35.0;
};

class SftmAdapter : public Adapter {
 public:
  explicit SftmAdapter(SftmConfig cfg = {});
  std::string_view name() const override { return "sftm"; }
  AdapterDecision decide(const AdapterInputs& in) override;

 private:
  SftmConfig cfg_;
};

// Buffer-feedback controller: b_target = (1−margin)·F(q)·throughput with
// F(q) = 2q/(q + target). Switches down immediately (any number of levels),
// switches up one level only after the up-condition held for up_persistence
// consecutive decisions. The persistence counter is the adapter's only
// state.
struct SvaaConfig {
  double target_s = 35.0;
  double margin = 0.1;
  int up_persistence = 2;
  double buffer_cap_s = 70.0;
  double window_s = 10.0;
};

class SvaaAdapter : public Adapter {
 public:
  explicit SvaaAdapter(SvaaConfig cfg = {});
  std::string_view name() const override { return "svaa"; }
  void reset() override { up_streak_ = 0; }
  AdapterDecision decide(const AdapterInputs& in) override;
  int up_streak() const { return up_streak_; }

 private:
  SvaaConfig cfg_;
  int up_streak_ = 0;
};

// Bandwidth estimate = min of the throughputs of the last two segments
// (conservative), quantized. Never idles.
class OsmfAdapter : public Adapter {
 public:
  std::string_view name() const override { return "osmf"; }
  AdapterDecision decide(const AdapterInputs& in) override;
};

// Pins every segment to one representation; used by engine tests.
class FixedRateAdapter : public Adapter {
 public:
  explicit FixedRateAdapter(int rep) : rep_(rep) {}
  std::string_view name() const override { return "fixed"; }
  AdapterDecision decide(const AdapterInputs& in) override;

 private:
  int rep_;
};

// Canonical algorithm names, in the order results are reported.
const std::vector<std::string>& algorithm_names();
bool is_known_algorithm(std::string_view name);

// Builds an adapter by canonical name. `overrides` holds per-algorithm
// config keys (e.g. {"target_s","30"} for fdash); an unknown name, unknown
// key, or unparsable value throws std::invalid_argument naming the
// offender.
std::unique_ptr<Adapter> make_adapter(
    std::string_view name, const std::map<std::string, std::string>& overrides = {});

}  // namespace dashsim
