#include "dashsim/scenario.hpp"

#include <fstream>
#include <sstream>

#include "dashsim/adapters.hpp"
#include "dashsim/text.hpp"

namespace dashsim {

VideoManifest Scenario::make_manifest() const {
  return VideoManifest(segment_duration_s, segment_count, ladder_bps);
}

std::vector<std::string> Scenario::algorithm_list() const {
  return algorithms.empty() ? algorithm_names() : algorithms;
}

void Scenario::validate() const {
  try {
    make_manifest();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("manifest: ") + e.what());
  }
  if (iterations < 1) throw ConfigError("iterations must be >= 1");
  if (!(duration_limit_s > 0.0)) throw ConfigError("duration_limit_s must be > 0");
  if (!(buffer_cap_s > 0.0)) throw ConfigError("buffer_cap_s must be > 0");

  for (const std::string& name : algorithm_list())
    if (!is_known_algorithm(name)) throw ConfigError("unknown algorithm '" + name + "'");
  for (const auto& [name, keys] : overrides) {
    try {
      make_adapter(name, keys);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }

  if (channel_kind == ChannelKind::markov) {
    if (speeds_mps.empty()) throw ConfigError("channel: at least one speed is required");
    for (double v : speeds_mps) {
      if (!(v > 0.0)) throw ConfigError("channel: speeds must be > 0");
      MarkovVehicularModel probe = markov;
      probe.speed_mps = v;
      try {
        probe.validate();
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("channel: ") + e.what());
      }
    }
  } else {
    if (trace_path.empty()) throw ConfigError("channel: trace path is required");
    try {
      PiecewiseTrace::load(trace_path);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("channel: ") + e.what());
    }
  }
}

namespace {

double num_value(const std::string& value, int line) {
  try {
    return parse_double(value);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what(), line);
  }
}

long long int_value(const std::string& value, int line) {
  try {
    return parse_int(value);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what(), line);
  }
}

std::vector<double> num_list(const std::string& value, int line) {
  std::vector<double> out;
  for (const std::string& piece : split_list(value, ',')) out.push_back(num_value(piece, line));
  return out;
}

std::vector<ChannelState> state_list(const std::string& value, int line) {
  std::vector<ChannelState> out;
  for (const std::string& piece : split_list(value, ',')) {
    std::vector<std::string> fields = split_list(piece, ':');
    if (fields.size() != 3)
      throw ConfigError("state must be 'label:rate_bps:coherence_m', got '" + piece + "'", line);
    out.push_back({fields[0], num_value(fields[1], line), num_value(fields[2], line)});
  }
  return out;
}

void apply_scenario_key(Scenario& sc, const std::string& key, const std::string& value,
                        int line) {
  if (key == "algorithms") {
    sc.algorithms = split_list(value, ',');
  } else if (key == "iterations") {
    sc.iterations = static_cast<int>(int_value(value, line));
  } else if (key == "base_seed") {
    long long seed = int_value(value, line);
    if (seed < 0) throw ConfigError("base_seed must be >= 0", line);
    sc.base_seed = static_cast<std::uint64_t>(seed);
  } else if (key == "duration_limit_s") {
    sc.duration_limit_s = num_value(value, line);
  } else if (key == "buffer_cap_s") {
    sc.buffer_cap_s = num_value(value, line);
  } else {
    throw ConfigError("unknown key '" + key + "' in [scenario]", line);
  }
}

void apply_manifest_key(Scenario& sc, const std::string& key, const std::string& value,
                        int line) {
  if (key == "segment_duration_s") sc.segment_duration_s = num_value(value, line);
  else if (key == "segment_count") sc.segment_count = static_cast<int>(int_value(value, line));
  else if (key == "ladder_bps") sc.ladder_bps = num_list(value, line);
  else throw ConfigError("unknown key '" + key + "' in [manifest]", line);
}

void apply_channel_key(Scenario& sc, bool& kind_set, const std::string& key,
                       const std::string& value, int line) {
  if (key == "kind") {
    if (value == "markov") sc.channel_kind = ChannelKind::markov;
    else if (value == "trace") sc.channel_kind = ChannelKind::trace;
    else throw ConfigError("channel kind must be 'markov' or 'trace', got '" + value + "'", line);
    kind_set = true;
  } else if (key == "trace") {
    sc.trace_path = value;
    if (!kind_set) sc.channel_kind = ChannelKind::trace;
  } else if (key == "speeds_mps") {
    sc.speeds_mps = num_list(value, line);
  } else if (key == "handover_interval_m") {
    sc.markov.handover_interval_m = num_value(value, line);
  } else if (key == "handover_outage_s") {
    sc.markov.handover_outage_s = num_value(value, line);
  } else if (key == "states") {
    sc.markov.states = state_list(value, line);
    sc.markov.transition = nearest_neighbor_matrix(static_cast<int>(sc.markov.states.size()));
  } else {
    throw ConfigError("unknown key '" + key + "' in [channel]", line);
  }
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  Scenario sc;
  std::istringstream in(text);
  std::string line;
  std::string section;
  bool kind_set = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = trim(line);
    if (body.empty() || body.front() == '#' || body.front() == ';') continue;
    if (body.front() == '[') {
      if (body.back() != ']') throw ConfigError("unterminated section header", lineno);
      section = std::string(trim(body.substr(1, body.size() - 2)));
      if (section != "scenario" && section != "manifest" && section != "channel" &&
          !is_known_algorithm(section))
        throw ConfigError("unknown section '[" + section + "]'", lineno);
      continue;
    }
    size_t eq = body.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected key=value", lineno);
    std::string key(trim(body.substr(0, eq)));
    std::string value(trim(body.substr(eq + 1)));
    if (key.empty()) throw ConfigError("empty key", lineno);
    if (section.empty()) throw ConfigError("key outside any [section]", lineno);

    if (section == "scenario") apply_scenario_key(sc, key, value, lineno);
    else if (section == "manifest") apply_manifest_key(sc, key, value, lineno);
    else if (section == "channel") apply_channel_key(sc, kind_set, key, value, lineno);
    else sc.overrides[section][key] = value;
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open scenario file: " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace dashsim
