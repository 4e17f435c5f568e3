#include "dashsim/engine.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "dashsim/text.hpp"

namespace dashsim {

namespace {

// Media seconds consumed by wall-clock time t, from the recorded play
// starts. Playback proceeds at rate 1 within each segment and is frozen
// between a segment's end and the next segment's (possibly stalled) start.
double played_at(const std::vector<PlaybackEvent>& playback, double tau, double t) {
  double total = 0.0;
  for (const PlaybackEvent& ev : playback) {
    if (t <= ev.play_start_s) break;
    total += std::min(t - ev.play_start_s, tau);
  }
  return total;
}

// Earliest wall-clock time at which `target` media seconds have been
// consumed. Only called for targets covered by the recorded events.
double inverse_played(const std::vector<PlaybackEvent>& playback, double tau, double target) {
  double before = 0.0;
  for (const PlaybackEvent& ev : playback) {
    if (target <= before + tau) return ev.play_start_s + (target - before);
    before += tau;
  }
  return playback.empty() ? 0.0 : playback.back().play_start_s + tau;
}

}  // namespace

SessionTrace run_session(const VideoManifest& manifest, const PiecewiseTrace& channel,
                         Adapter& adapter, const SessionConfig& config) {
  if (!(config.duration_limit_s > 0.0))
    throw std::invalid_argument("duration_limit_s must be > 0");
  if (!(config.buffer_cap_s > 0.0)) throw std::invalid_argument("buffer_cap_s must be > 0");
  adapter.reset();

  const double tau = manifest.segment_duration_s();
  const int n = manifest.segment_count();
  const double limit = config.duration_limit_s;

  SessionTrace trace{{}, {}, {}, manifest, config, std::string(adapter.name()), limit};
  std::vector<CompletedSegment> history;
  history.reserve(static_cast<size_t>(n));

  int current_rep = 0;
  double prev_end = 0.0;

  for (int k = 0; k < n; ++k) {
    AdapterDecision decision{0, prev_end};
    if (k > 0) {
      AdapterInputs in;
      in.now_s = prev_end;
      in.history = {history.data(), history.size()};
      in.buffer_s = k * tau - played_at(trace.playback, tau, prev_end);
      in.current_rep = current_rep;
      in.manifest = &manifest;
      decision = adapter.decide(in);
      if (decision.rep < 0 || decision.rep >= manifest.ladder_size())
        throw std::runtime_error("adapter '" + std::string(adapter.name()) +
                                 "' returned invalid representation index " +
                                 std::to_string(decision.rep));
    }

    double t_req = std::max(prev_end, decision.earliest_request_s);
    if (k > 0) {
      // Deferral is evaluated at request time: wait until the buffer is back
      // down at the cap before asking for more.
      double level = k * tau - played_at(trace.playback, tau, t_req);
      if (level > config.buffer_cap_s)
        t_req = inverse_played(trace.playback, tau, k * tau - config.buffer_cap_s);
    }
    if (t_req >= limit) break;

    double bits = segment_size_bits(manifest, decision.rep);
    double end = t_req + channel.transfer_time(bits, t_req);
    trace.downloads.push_back({k, decision.rep, t_req, t_req, end, bits});

    double play_start;
    if (k == 0) {
      play_start = end;
      trace.stalls.push_back({0.0, end, StallKind::initial_startup});
    } else {
      double prev_play_end = trace.playback.back().play_start_s + tau;
      if (end > prev_play_end)
        trace.stalls.push_back({prev_play_end, end, StallKind::mid_stream});
      play_start = std::max(prev_play_end, end);
    }
    trace.playback.push_back({k, play_start, play_start - end});
    history.push_back({trace.downloads.back(), play_start - end});
    current_rep = decision.rep;
    prev_end = end;
  }

  // The session ends when the last segment finishes playing or at the
  // duration limit, whichever is first. Events past the end are discarded;
  // a stall that was still in progress is clipped.
  double session_end = limit;
  if (static_cast<int>(trace.playback.size()) == n) {
    double media_end = trace.playback.back().play_start_s + tau;
    if (media_end <= limit) session_end = media_end;
  }
  trace.session_end_s = session_end;

  std::erase_if(trace.playback,
                [&](const PlaybackEvent& ev) { return ev.play_start_s >= session_end; });
  if (trace.playback.empty()) {
    trace.stalls.clear();
  } else {
    std::erase_if(trace.stalls,
                  [&](const StallEpisode& st) { return st.start_s >= session_end; });
    for (StallEpisode& st : trace.stalls) st.end_s = std::min(st.end_s, session_end);
  }
  return trace;
}

double buffer_level(const SessionTrace& trace, double t) {
  const double tau = trace.manifest.segment_duration_s();
  double downloaded = 0.0;
  for (const DownloadRecord& dl : trace.downloads)
    if (dl.end_time_s <= t) downloaded += tau;
  double level = downloaded - played_at(trace.playback, tau, t);
  return std::max(level, 0.0);
}

std::string serialize_trace(const SessionTrace& trace) {
  std::string out;
  for (const DownloadRecord& dl : trace.downloads) {
    out += "DL " + std::to_string(dl.segment_index) + " " + std::to_string(dl.rep) + " " +
           format_double(dl.request_time_s) + " " + format_double(dl.begin_time_s) + " " +
           format_double(dl.end_time_s) + " " + format_double(dl.bits) + "\n";
  }
  for (const PlaybackEvent& ev : trace.playback) {
    out += "PLAY " + std::to_string(ev.segment_index) + " " + format_double(ev.play_start_s) +
           " " + format_double(ev.buffering_s) + "\n";
  }
  for (const StallEpisode& st : trace.stalls) {
    out += "STALL " + format_double(st.start_s) + " " + format_double(st.end_s) + " " +
           (st.kind == StallKind::initial_startup ? "initial-startup" : "mid-stream");
    out += "\n";
  }
  return out;
}

SessionTrace parse_trace(const std::string& text, const VideoManifest& manifest) {
  SessionTrace trace{{}, {}, {}, manifest, SessionConfig{}, "", 0.0};
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = trim(line);
    if (body.empty()) continue;
    std::istringstream fields{std::string(body)};
    std::string tag;
    fields >> tag;
    try {
      if (tag == "DL") {
        std::string seg, rep, req, begin, end, bits;
        fields >> seg >> rep >> req >> begin >> end >> bits;
        trace.downloads.push_back({static_cast<int>(parse_int(seg)),
                                   static_cast<int>(parse_int(rep)), parse_double(req),
                                   parse_double(begin), parse_double(end),
                                   parse_double(bits)});
      } else if (tag == "PLAY") {
        std::string seg, start, buffering;
        fields >> seg >> start >> buffering;
        trace.playback.push_back({static_cast<int>(parse_int(seg)), parse_double(start),
                                  parse_double(buffering)});
      } else if (tag == "STALL") {
        std::string start, end, kind;
        fields >> start >> end >> kind;
        if (kind != "initial-startup" && kind != "mid-stream")
          throw std::invalid_argument("unknown stall kind '" + kind + "'");
        trace.stalls.push_back({parse_double(start), parse_double(end),
                                kind == "initial-startup" ? StallKind::initial_startup
                                                          : StallKind::mid_stream});
      } else {
        throw std::invalid_argument("unknown event tag '" + tag + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("trace line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  for (const PlaybackEvent& ev : trace.playback)
    trace.session_end_s = std::max(trace.session_end_s, ev.play_start_s +
                                                             manifest.segment_duration_s());
  for (const StallEpisode& st : trace.stalls)
    trace.session_end_s = std::max(trace.session_end_s, st.end_s);
  return trace;
}

}  // namespace dashsim
