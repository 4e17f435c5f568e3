#include "dashsim/channel.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dashsim/rng.hpp"
#include "dashsim/text.hpp"

namespace dashsim {

PiecewiseTrace::PiecewiseTrace(std::vector<RatePoint> points) : points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("trace must have at least one breakpoint");
  if (points_.front().time_s != 0.0)
    throw std::invalid_argument("first breakpoint must be at time 0");
  for (size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].rate_bps < 0.0) throw std::invalid_argument("trace rates must be >= 0");
    if (i > 0 && !(points_[i].time_s > points_[i - 1].time_s))
      throw std::invalid_argument("trace times must be strictly increasing");
  }
  if (!(points_.back().rate_bps > 0.0))
    throw std::invalid_argument("trace must not end in a zero-rate tail");
}

double PiecewiseTrace::bandwidth_at(double t) const {
  if (t < 0.0) throw std::domain_error("bandwidth_at: negative time");
  auto it = std::upper_bound(points_.begin(), points_.end(), t,
                             [](double v, const RatePoint& p) { return v < p.time_s; });
  return std::prev(it)->rate_bps;
}

double PiecewiseTrace::transfer_time(double bits, double start) const {
  if (!(bits > 0.0)) throw std::invalid_argument("transfer_time: bits must be > 0");
  if (start < 0.0) throw std::domain_error("transfer_time: negative start");
  auto it = std::upper_bound(points_.begin(), points_.end(), start,
                             [](double v, const RatePoint& p) { return v < p.time_s; });
  size_t piece = static_cast<size_t>(std::prev(it) - points_.begin());
  double now = start;
  double remaining = bits;
  while (piece + 1 < points_.size()) {
    double rate = points_[piece].rate_bps;
    double piece_end = points_[piece + 1].time_s;
    double capacity = rate * (piece_end - now);
    if (capacity >= remaining) return now + remaining / rate - start;
    remaining -= capacity;
    now = piece_end;
    ++piece;
  }
  return now + remaining / points_.back().rate_bps - start;
}

PiecewiseTrace PiecewiseTrace::parse(const std::string& text) {
  std::vector<RatePoint> points;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (size_t hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string_view body = trim(line);
    if (body.empty()) continue;
    std::istringstream fields{std::string(body)};
    std::string t_tok, r_tok, extra;
    fields >> t_tok >> r_tok;
    if (r_tok.empty() || (fields >> extra))
      throw std::invalid_argument("trace line " + std::to_string(lineno) +
                                  ": expected 'time_s rate_bps'");
    try {
      points.push_back({parse_double(t_tok), parse_double(r_tok)});
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("trace line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return PiecewiseTrace(std::move(points));
}

PiecewiseTrace PiecewiseTrace::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open trace file: " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string PiecewiseTrace::to_text() const {
  std::string out;
  for (const RatePoint& p : points_)
    out += format_double(p.time_s) + " " + format_double(p.rate_bps) + "\n";
  return out;
}

void MarkovVehicularModel::validate() const {
  if (states.empty()) throw std::invalid_argument("vehicular model needs at least one state");
  if (!(speed_mps > 0.0)) throw std::invalid_argument("speed must be > 0");
  size_t n = states.size();
  bool any_positive = false;
  for (const ChannelState& s : states) {
    if (s.rate_bps < 0.0) throw std::invalid_argument("state rate must be >= 0");
    if (!(s.coherence_m > 0.0)) throw std::invalid_argument("coherence length must be > 0");
    any_positive = any_positive || s.rate_bps > 0.0;
  }
  if (!any_positive) throw std::invalid_argument("at least one state must have positive rate");
  if (transition.size() != n)
    throw std::invalid_argument("transition matrix must be square over the states");
  for (size_t i = 0; i < n; ++i) {
    if (transition[i].size() != n)
      throw std::invalid_argument("transition matrix must be square over the states");
    double sum = 0.0;
    for (double p : transition[i]) {
      if (p < 0.0) throw std::invalid_argument("transition probabilities must be >= 0");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("transition row " + std::to_string(i) + " does not sum to 1");
  }
  if (!(handover_interval_m > 0.0)) throw std::invalid_argument("handover interval must be > 0");
  if (handover_outage_s < 0.0) throw std::invalid_argument("handover outage must be >= 0");
  if (handover_outage_s >= handover_interval_m / speed_mps)
    throw std::invalid_argument("handover outage must be shorter than the handover spacing");
}

std::vector<std::vector<double>> nearest_neighbor_matrix(int n_states) {
  if (n_states < 1) throw std::invalid_argument("need at least one state");
  size_t n = static_cast<size_t>(n_states);
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  if (n == 1) {
    m[0][0] = 1.0;
    return m;
  }
  m[0][1] = 1.0;
  m[n - 1][n - 2] = 1.0;
  for (size_t i = 1; i + 1 < n; ++i) {
    m[i][i - 1] = 0.5;
    m[i][i + 1] = 0.5;
  }
  return m;
}

MarkovVehicularModel default_vehicular_model() {
  MarkovVehicularModel model;
  model.states = {{"outage", 0.0, 20.0},
                  {"bad", 500e3, 50.0},
                  {"mid", 2e6, 100.0},
                  {"good", 6e6, 150.0}};
  model.transition = nearest_neighbor_matrix(4);
  return model;
}

namespace {

int sample_transition(const std::vector<double>& row, double u) {
  double acc = 0.0;
  for (size_t j = 0; j < row.size(); ++j) {
    acc += row[j];
    if (u < acc) return static_cast<int>(j);
  }
  return static_cast<int>(row.size()) - 1;
}

}  // namespace

PiecewiseTrace realize_markov_path(const MarkovVehicularModel& model, double horizon_s) {
  model.validate();
  if (!(horizon_s > 0.0)) throw std::invalid_argument("horizon must be > 0");

  SplitMix64 rng(model.seed);
  int state = rng.next_index(static_cast<int>(model.states.size()));

  // Fading sojourns; the final one has positive rate and extends beyond the
  // horizon, so its rate holds forever.
  std::vector<RatePoint> fading{{0.0, model.states[state].rate_bps}};
  double t = 0.0;
  while (true) {
    double dwell = rng.next_exponential(model.states[state].coherence_m / model.speed_mps);
    int next = sample_transition(model.transition[state], rng.next_double());
    double t_end = t + dwell;
    if (t_end >= horizon_s && model.states[state].rate_bps > 0.0) break;
    t = t_end;
    state = next;
    fading.push_back({t, model.states[state].rate_bps});
  }

  // Deterministic handover outages at multiples of the handover spacing.
  std::vector<std::pair<double, double>> outages;
  if (model.handover_outage_s > 0.0) {
    double spacing = model.handover_interval_m / model.speed_mps;
    for (double at = spacing; at < horizon_s; at += spacing)
      outages.emplace_back(at, at + model.handover_outage_s);
  }

  std::vector<double> times;
  times.reserve(fading.size() + 2 * outages.size());
  for (const RatePoint& p : fading) times.push_back(p.time_s);
  for (auto [a, b] : outages) {
    times.push_back(a);
    times.push_back(b);
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  auto fading_rate_at = [&fading](double at) {
    size_t i = fading.size() - 1;
    while (fading[i].time_s > at) --i;
    return fading[i].rate_bps;
  };
  auto in_outage = [&outages](double at) {
    for (auto [a, b] : outages)
      if (at >= a && at < b) return true;
    return false;
  };

  std::vector<RatePoint> merged;
  for (double at : times) {
    double rate = in_outage(at) ? 0.0 : fading_rate_at(at);
    if (merged.empty() || rate != merged.back().rate_bps) merged.push_back({at, rate});
  }
  return PiecewiseTrace(std::move(merged));
}

}  // namespace dashsim
