#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "dashsim/channel.hpp"
#include "dashsim/manifest.hpp"

namespace dashsim {

// Bad scenario input: unknown key or section, unparsable value, unknown
// algorithm name. Carries the config-file line when the problem came from
// one (0 otherwise).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& message) : std::runtime_error(message) {}
  ConfigError(const std::string& message, int line)
      : std::runtime_error(message + " (line " + std::to_string(line) + ")"), line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

enum class ChannelKind { markov, trace };

// One batch: manifest × channel × algorithm list × iterations. Every field
// has a default so an empty config runs the stock vehicular comparison.
struct Scenario {
  // [manifest]
  double segment_duration_s = 2.0;
  int segment_count = 275;
  std::vector<double> ladder_bps = {350e3, 700e3, 1.4e6, 2.8e6, 4.2e6};

  // [channel]
  ChannelKind channel_kind = ChannelKind::markov;
  MarkovVehicularModel markov = default_vehicular_model();
  std::vector<double> speeds_mps = {5.0};
  std::string trace_path;

  // [scenario]
  std::vector<std::string> algorithms;  // empty = all known algorithms
  int iterations = 1;
  std::uint64_t base_seed = 1;
  double duration_limit_s = 550.0;
  double buffer_cap_s = 60.0;

  // per-algorithm key overrides, e.g. overrides["fdash"]["target_s"] = "30"
  std::map<std::string, std::map<std::string, std::string>> overrides;

  VideoManifest make_manifest() const;
  std::vector<std::string> algorithm_list() const;  // resolves the empty default

  // Throws ConfigError on anything run_batch could not execute: bad
  // manifest, bad channel model, unknown algorithm, bad override key.
  void validate() const;
};

// Flat INI-style text: `[section]` headers with `key=value` lines, `#` or
// `;` comments, blank lines ignored. Sections: scenario, manifest, channel,
// plus one per algorithm for its overrides. Unknown sections, keys, or
// malformed lines raise ConfigError with the line number.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& file);

}  // namespace dashsim
