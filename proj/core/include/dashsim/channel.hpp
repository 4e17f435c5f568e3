#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace dashsim {

struct RatePoint {
  double time_s = 0.0;
  double rate_bps = 0.0;
};

// Piecewise-constant bandwidth over time. Each breakpoint's rate holds from
// its time until the next breakpoint; the last rate holds forever. Times are
// strictly increasing and start at 0; rates are >= 0; the final rate must be
// positive so every transfer terminates. Immutable and shareable.
class PiecewiseTrace {
 public:
  // Throws std::invalid_argument on any invariant violation.
  explicit PiecewiseTrace(std::vector<RatePoint> points);

  const std::vector<RatePoint>& points() const { return points_; }

  // Instantaneous rate at time t (t >= 0, else std::domain_error). A time
  // exactly on a breakpoint belongs to the new piece.
  double bandwidth_at(double t) const;

  // Duration D such that the integral of the rate over [start, start+D]
  // equals `bits`. Computed by exact piecewise inversion; zero-rate pieces
  // contribute waiting time. bits > 0, start >= 0.
  double transfer_time(double bits, double start) const;

  // `time_s rate_bps` per line, '#' comments and blank lines ignored.
  static PiecewiseTrace parse(const std::string& text);
  static PiecewiseTrace load(const std::filesystem::path& file);
  std::string to_text() const;

 private:
  std::vector<RatePoint> points_;
};

struct ChannelState {
  std::string label;
  double rate_bps = 0.0;
  double coherence_m = 0.0;  // distance scale over which the state persists
};

// Speed-parameterized stochastic channel: a continuous-time chain over
// coherence-scaled states plus periodic handover outages. A vehicle at speed
// v dwells in state s for an exponential time with mean coherence_m(s)/v and
// suffers a fixed outage every handover_interval_m/v seconds, so a faster
// vehicle sees both faster fading and more frequent handovers. The handover
// defaults make the outage share of airtime grow from 10% at 5 m/s to 80% at
// 40 m/s; fading alone would average out under a deep client buffer and
// faster travel would otherwise cost nothing.
struct MarkovVehicularModel {
  std::vector<ChannelState> states;
  std::vector<std::vector<double>> transition;  // row-stochastic
  double speed_mps = 5.0;
  double handover_interval_m = 250.0;
  double handover_outage_s = 5.0;
  std::uint64_t seed = 1;

  // Throws std::invalid_argument if rows do not sum to 1 (tol 1e-12),
  // a coherence length or the speed is non-positive, no state has positive
  // rate, or the handover outage is not shorter than the handover spacing.
  void validate() const;
};

// Default four-state ladder (outage/bad/mid/good) with a nearest-neighbor
// transition matrix: move to an adjacent state with probability 0.5 each,
// reflecting at the ends.
MarkovVehicularModel default_vehicular_model();
std::vector<std::vector<double>> nearest_neighbor_matrix(int n_states);

// Samples one realization of the state process as a piecewise trace.
// Deterministic in (model, horizon): the same seed yields a byte-identical
// trace. Draw order per path: initial state (uniform), then per sojourn one
// dwell draw and one transition draw. The path is extended past `horizon`
// until it rests in a positive-rate state, so transfers begun near the end
// of a session still terminate.
PiecewiseTrace realize_markov_path(const MarkovVehicularModel& model, double horizon_s);

}  // namespace dashsim
