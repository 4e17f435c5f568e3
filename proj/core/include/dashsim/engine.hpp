#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dashsim/abr.hpp"
#include "dashsim/channel.hpp"
#include "dashsim/manifest.hpp"

namespace dashsim {

enum class StallKind { initial_startup, mid_stream };

struct StallEpisode {
  double start_s = 0.0;
  double end_s = 0.0;
  StallKind kind = StallKind::mid_stream;
  double duration_s() const { return end_s - start_s; }
};

struct SessionConfig {
  double duration_limit_s = 550.0;
  double buffer_cap_s = 60.0;
  std::uint64_t seed = 0;  // echoed into the trace; the channel is realized by the caller
};

// Full event record of one streaming session.
struct SessionTrace {
  std::vector<DownloadRecord> downloads;
  std::vector<PlaybackEvent> playback;  // one per segment that started playing in-session
  std::vector<StallEpisode> stalls;
  VideoManifest manifest;
  SessionConfig config;
  std::string algorithm;
  double session_end_s = 0.0;
};

// Runs one session: segments are fetched strictly sequentially at the
// adapter-chosen representation, played back at real-time rate once segment 0
// is complete, and the session ends when all segments have played or at the
// duration limit. Segment 0 is always fetched at ladder index 0 (no
// throughput history exists yet). Requests are deferred to the later of the
// adapter's earliest-request time and the moment the buffer falls back to
// buffer_cap. A download that completes exactly when the buffer empties does
// not record a zero-length stall.
SessionTrace run_session(const VideoManifest& manifest, const PiecewiseTrace& channel,
                         Adapter& adapter, const SessionConfig& config);

// Media seconds downloaded minus media seconds played at time t, computed
// from the recorded events. A segment counts as downloaded from its end_time
// on, so immediately after a completion the buffer includes that segment.
double buffer_level(const SessionTrace& trace, double t);

// Line-oriented event log:
//   DL <seg> <rep> <t_req> <t_begin> <t_end> <bits>
//   PLAY <seg> <t_start> <t_buffering>
//   STALL <t_start> <t_end> <initial-startup|mid-stream>
std::string serialize_trace(const SessionTrace& trace);
SessionTrace parse_trace(const std::string& text, const VideoManifest& manifest);

}  // namespace dashsim
