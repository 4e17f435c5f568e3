#pragma once

#include <span>
#include <string_view>

#include "dashsim/manifest.hpp"

namespace dashsim {

// One completed, sequential segment download. begin/end bracket the wire
// transfer; request_time may precede begin_time when the request was deferred
// (it never does in the current engine, which issues requests instantly).
struct DownloadRecord {
  int segment_index = 0;
  int rep = 0;
  double request_time_s = 0.0;
  double begin_time_s = 0.0;
  double end_time_s = 0.0;
  double bits = 0.0;
  double duration_s() const { return end_time_s - begin_time_s; }
};

struct PlaybackEvent {
  int segment_index = 0;
  double play_start_s = 0.0;
  double buffering_s = 0.0;  // time the segment waited in the buffer before playing
};

struct CompletedSegment {
  DownloadRecord download;
  double buffering_s = 0.0;
};

// Everything an adaptation algorithm may look at when choosing the next
// segment's representation: the download history with per-segment buffering
// times, the live buffer level, and the manifest.
struct AdapterInputs {
  double now_s = 0.0;
  std::span<const CompletedSegment> history;  // ordered by segment index
  double buffer_s = 0.0;                      // media seconds queued at now
  int current_rep = 0;
  const VideoManifest* manifest = nullptr;
};

struct AdapterDecision {
  int rep = 0;
  double earliest_request_s = 0.0;  // >= now; later values idle the client
};

class Adapter {
 public:
  virtual ~Adapter() = default;
  virtual std::string_view name() const = 0;
  // Clears any per-session state (only SVAA carries one, its up-switch
  // persistence counter).
  virtual void reset() {}
  virtual AdapterDecision decide(const AdapterInputs& in) = 0;
};

// Per-segment throughput: bits delivered over the wire time of the download.
// Throws std::invalid_argument when the record has no positive duration.
double estimate_segment_throughput(const DownloadRecord& record);

// Mean segment throughput over downloads completing within (now-window, now].
// Falls back to the most recent download when the window is empty; throws
// std::invalid_argument when there is no history at all.
double windowed_throughput(std::span<const CompletedSegment> history, double now_s,
                           double window_s);

}  // namespace dashsim
