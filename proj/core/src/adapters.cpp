#include "dashsim/adapters.hpp"

#include <algorithm>
#include <stdexcept>

#include "dashsim/text.hpp"

namespace dashsim {

double min_projected_buffer(double t_s, double throughput_bps, double bitrate_bps,
                            double horizon_s) {
  double end = t_s + horizon_s * (throughput_bps / bitrate_bps - 1.0);
  return std::min(t_s, end);
}

int apply_hysteresis(int current, int candidate, double t_s, double throughput_bps,
                     const VideoManifest& manifest, const FuzzyConfig& cfg) {
  if (candidate > current) {
    double low = min_projected_buffer(t_s, throughput_bps, manifest.bitrate_bps(candidate),
                                      cfg.horizon_s);
    if (low < cfg.target_s) return current;
  } else if (candidate < current) {
    double low = min_projected_buffer(t_s, throughput_bps, manifest.bitrate_bps(current),
                                      cfg.horizon_s);
    if (low >= cfg.target_s) return current;
  }
  return candidate;
}

namespace {

const VideoManifest& manifest_of(const AdapterInputs& in) {
  if (in.manifest == nullptr) throw std::invalid_argument("adapter inputs missing manifest");
  return *in.manifest;
}

// Largest relative gap between adjacent ladder rates; the switch-up
// threshold 1+ε used by the fetch-time ratio algorithms.
double ladder_epsilon(const VideoManifest& m) {
  double eps = 0.0;
  for (int i = 0; i + 1 < m.ladder_size(); ++i)
    eps = std::max(eps, (m.bitrate_bps(i + 1) - m.bitrate_bps(i)) / m.bitrate_bps(i));
  return eps;
}

double last_buffering(const AdapterInputs& in) { return in.history.back().buffering_s; }

double last_sft(const AdapterInputs& in) { return in.history.back().download.duration_s(); }

}  // namespace

FdashAdapter::FdashAdapter(FuzzyConfig cfg) : cfg_(cfg) { cfg_.validate(); }

AdapterDecision FdashAdapter::decide(const AdapterInputs& in) {
  if (in.history.empty()) return {0, in.now_s};
  const VideoManifest& m = manifest_of(in);
  double t_i = last_buffering(in);
  double dt = in.history.size() >= 2
                  ? t_i - in.history[in.history.size() - 2].buffering_s
                  : 0.0;
  double r_d = windowed_throughput(in.history, in.now_s, cfg_.window_s);
  double factor = fuzzy_factor(t_i, dt, cfg_);
  int candidate = quantize_to_ladder(m, factor * r_d);
  int rep = apply_hysteresis(in.current_rep, candidate, t_i, r_d, m, cfg_);
  return {rep, in.now_s};
}

AaashAdapter::AaashAdapter(AaashConfig cfg) : cfg_(cfg) {
  if (!(cfg_.buffer_min_s > 0.0) || cfg_.buffer_low_s < cfg_.buffer_min_s ||
      cfg_.buffer_high_s < cfg_.buffer_low_s || cfg_.buffer_max_s < cfg_.buffer_high_s)
    throw std::invalid_argument("aaash buffer thresholds must satisfy 0 < min <= low <= high <= max");
  if (!(cfg_.safety > 0.0)) throw std::invalid_argument("aaash safety must be > 0");
  if (!(cfg_.window_s > 0.0)) throw std::invalid_argument("aaash window_s must be > 0");
}

AdapterDecision AaashAdapter::decide(const AdapterInputs& in) {
  if (in.history.empty()) return {0, in.now_s};
  const VideoManifest& m = manifest_of(in);
  int cur = in.current_rep;
  double b = in.buffer_s;
  double r_d = windowed_throughput(in.history, in.now_s, cfg_.window_s);
  int rep = cur;
  if (b < cfg_.buffer_min_s) {
    rep = 0;
  } else if (b < cfg_.buffer_low_s) {
    if (cur > 0 && m.bitrate_bps(cur) > r_d) rep = cur - 1;
  } else if (b > cfg_.buffer_high_s) {
    if (cur < m.top_index() && m.bitrate_bps(cur + 1) <= cfg_.safety * r_d) rep = cur + 1;
  }
  return {rep, in.now_s + std::max(0.0, b - cfg_.buffer_max_s)};
}

RaahsAdapter::RaahsAdapter(RaahsConfig cfg) : cfg_(cfg) {
  if (!(cfg_.down_ratio > 0.0) || cfg_.down_ratio >= 1.0)
    throw std::invalid_argument("raahs down_ratio must lie in (0, 1)");
  if (!(cfg_.buffer_max_s > 0.0)) throw std::invalid_argument("raahs buffer_max_s must be > 0");
}

AdapterDecision RaahsAdapter::decide(const AdapterInputs& in) {
  if (in.history.empty()) return {0, in.now_s};
  const VideoManifest& m = manifest_of(in);
  int cur = in.current_rep;
  double mu = m.segment_duration_s() / last_sft(in);
  int rep = cur;
  if (mu > 1.0 + ladder_epsilon(m))
    rep = std::min(cur + 1, m.top_index());
  else if (mu < cfg_.down_ratio)
    rep = quantize_to_ladder(m, mu * m.bitrate_bps(cur));
  return {rep, in.now_s + std::max(0.0, in.buffer_s - cfg_.buffer_max_s)};
}

SftmAdapter::SftmAdapter(SftmConfig cfg) : cfg_(cfg) {
  if (cfg_.beta < 0.0) throw std::invalid_argument("sftm beta must be >= 0");
  if (!(cfg_.target_s > 0.0)) throw std::invalid_argument("sftm target_s must be > 0");
}

AdapterDecision SftmAdapter::decide(const AdapterInputs& in) {
  if (in.history.empty()) return {0, in.now_s};
  const VideoManifest& m = manifest_of(in);
  int cur = in.current_rep;
  double tau = m.segment_duration_s();
  double esft = std::clamp(tau + cfg_.beta * (last_buffering(in) - cfg_.target_s), tau / 2.0,
                           2.0 * tau);
  double rho = esft / last_sft(in);
  int rep = cur;
  if (rho > 1.0 + ladder_epsilon(m))
    rep = std::min(cur + 1, m.top_index());
  else if (rho < 1.0)
    rep = quantize_to_ladder(m, rho * m.bitrate_bps(cur));
  return {rep, in.now_s};
}

SvaaAdapter::SvaaAdapter(SvaaConfig cfg) : cfg_(cfg) {
  if (!(cfg_.target_s > 0.0)) throw std::invalid_argument("svaa target_s must be > 0");
  if (cfg_.margin < 0.0 || cfg_.margin >= 1.0)
    throw std::invalid_argument("svaa margin must lie in [0, 1)");
  if (cfg_.up_persistence < 1) throw std::invalid_argument("svaa up_persistence must be >= 1");
  if (!(cfg_.buffer_cap_s > 0.0)) throw std::invalid_argument("svaa buffer_cap_s must be > 0");
  if (!(cfg_.window_s > 0.0)) throw std::invalid_argument("svaa window_s must be > 0");
}

AdapterDecision SvaaAdapter::decide(const AdapterInputs& in) {
  if (in.history.empty()) return {0, in.now_s};
  const VideoManifest& m = manifest_of(in);
  int cur = in.current_rep;
  double q = in.buffer_s;
  double r_d = windowed_throughput(in.history, in.now_s, cfg_.window_s);
  double feedback = 2.0 * q / (q + cfg_.target_s);
  double b_target = (1.0 - cfg_.margin) * feedback * r_d;
  int candidate = quantize_to_ladder(m, b_target);
  int rep = cur;
  if (candidate < cur) {
    rep = candidate;
    up_streak_ = 0;
  } else if (cur < m.top_index() && m.bitrate_bps(cur + 1) <= b_target) {
    if (++up_streak_ >= cfg_.up_persistence) {
      rep = cur + 1;
      up_streak_ = 0;
    }
  } else {
    up_streak_ = 0;
  }
  return {rep, in.now_s + std::max(0.0, q - cfg_.buffer_cap_s)};
}

AdapterDecision OsmfAdapter::decide(const AdapterInputs& in) {
  if (in.history.empty()) return {0, in.now_s};
  const VideoManifest& m = manifest_of(in);
  double r_last = estimate_segment_throughput(in.history.back().download);
  double estimate = r_last;
  if (in.history.size() >= 2)
    estimate = std::min(
        r_last, estimate_segment_throughput(in.history[in.history.size() - 2].download));
  return {quantize_to_ladder(m, estimate), in.now_s};
}

AdapterDecision FixedRateAdapter::decide(const AdapterInputs& in) { return {rep_, in.now_s}; }

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names = {"fdash", "aaash", "raahs",
                                                 "sftm",  "svaa",  "osmf"};
  return names;
}

bool is_known_algorithm(std::string_view name) {
  const auto& names = algorithm_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

namespace {

double num_value(const std::string& key, const std::string& value) {
  try {
    return parse_double(value);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("bad value for '" + key + "': '" + value + "'");
  }
}

int int_value(const std::string& key, const std::string& value) {
  try {
    return static_cast<int>(parse_int(value));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("bad value for '" + key + "': '" + value + "'");
  }
}

[[noreturn]] void unknown_key(std::string_view algo, const std::string& key) {
  throw std::invalid_argument("unknown config key '" + key + "' for algorithm '" +
                              std::string(algo) + "'");
}

}  // namespace

std::unique_ptr<Adapter> make_adapter(std::string_view name,
                                      const std::map<std::string, std::string>& overrides) {
  if (name == "fdash") {
    FuzzyConfig cfg;
    for (const auto& [key, value] : overrides) {
      double v = num_value(key, value);
      if (key == "target_s") cfg.target_s = v;
      else if (key == "window_s") cfg.window_s = v;
      else if (key == "horizon_s") cfg.horizon_s = v;
      else if (key == "weight_reduce") cfg.weight_reduce = v;
      else if (key == "weight_small_reduce") cfg.weight_small_reduce = v;
      else if (key == "weight_no_change") cfg.weight_no_change = v;
      else if (key == "weight_small_increase") cfg.weight_small_increase = v;
      else if (key == "weight_increase") cfg.weight_increase = v;
      else unknown_key(name, key);
    }
    return std::make_unique<FdashAdapter>(cfg);
  }
  if (name == "aaash") {
    AaashConfig cfg;
    for (const auto& [key, value] : overrides) {
      double v = num_value(key, value);
      if (key == "buffer_min_s") cfg.buffer_min_s = v;
      else if (key == "buffer_low_s") cfg.buffer_low_s = v;
      else if (key == "buffer_high_s") cfg.buffer_high_s = v;
      else if (key == "buffer_max_s") cfg.buffer_max_s = v;
      else if (key == "safety") cfg.safety = v;
      else if (key == "window_s") cfg.window_s = v;
      else unknown_key(name, key);
    }
    return std::make_unique<AaashAdapter>(cfg);
  }
  if (name == "raahs") {
    RaahsConfig cfg;
    for (const auto& [key, value] : overrides) {
      double v = num_value(key, value);
      if (key == "down_ratio") cfg.down_ratio = v;
      else if (key == "buffer_max_s") cfg.buffer_max_s = v;
      else unknown_key(name, key);
    }
    return std::make_unique<RaahsAdapter>(cfg);
  }
  if (name == "sftm") {
    SftmConfig cfg;
    for (const auto& [key, value] : overrides) {
      double v = num_value(key, value);
      if (key == "beta") cfg.beta = v;
      else if (key == "target_s") cfg.target_s = v;
      else unknown_key(name, key);
    }
    return std::make_unique<SftmAdapter>(cfg);
  }
  if (name == "svaa") {
    SvaaConfig cfg;
    for (const auto& [key, value] : overrides) {
      if (key == "target_s") cfg.target_s = num_value(key, value);
      else if (key == "margin") cfg.margin = num_value(key, value);
      else if (key == "up_persistence") cfg.up_persistence = int_value(key, value);
      else if (key == "buffer_cap_s") cfg.buffer_cap_s = num_value(key, value);
      else if (key == "window_s") cfg.window_s = num_value(key, value);
      else unknown_key(name, key);
    }
    return std::make_unique<SvaaAdapter>(cfg);
  }
  if (name == "osmf") {
    if (!overrides.empty()) unknown_key(name, overrides.begin()->first);
    return std::make_unique<OsmfAdapter>();
  }
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

}  // namespace dashsim
