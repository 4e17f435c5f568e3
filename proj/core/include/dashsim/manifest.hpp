#pragma once

#include <cstddef>
#include <vector>

namespace dashsim {

// One quality level of the encoded video. Bitrates within a manifest are
// strictly increasing with index.
struct Representation {
  int index = 0;
  double bitrate_bps = 0.0;
};

// The video asset as seen by the client: a ladder of representations,
// fixed segment duration and segment count. Constant-bitrate model: every
// segment of a representation has size bitrate * segment_duration.
// Immutable after construction; safe to share between concurrent sessions.
class VideoManifest {
 public:
  // Throws std::invalid_argument if the ladder is empty, not strictly
  // ascending, contains a non-positive bitrate, or if duration/count are
  // non-positive.
  VideoManifest(double segment_duration_s, int segment_count,
                std::vector<double> ladder_bps);

  double segment_duration_s() const { return segment_duration_s_; }
  int segment_count() const { return segment_count_; }
  const std::vector<Representation>& ladder() const { return ladder_; }
  int ladder_size() const { return static_cast<int>(ladder_.size()); }

  const Representation& rep(int index) const;  // std::out_of_range on bad index
  double bitrate_bps(int index) const { return rep(index).bitrate_bps; }
  int top_index() const { return ladder_size() - 1; }

 private:
  double segment_duration_s_;
  int segment_count_;
  std::vector<Representation> ladder_;
};

// Size in bits of one segment at ladder index `rep`.
double segment_size_bits(const VideoManifest& manifest, int rep);

// Index of the highest-bitrate representation with bitrate <= candidate_bps,
// or 0 if even the lowest representation exceeds the candidate. A candidate
// exactly equal to a ladder rate selects that rate.
int quantize_to_ladder(const VideoManifest& manifest, double candidate_bps);

// {350 kbps .. 4.2 Mbps} x 2 s segments; used when a scenario does not
// declare its own manifest.
VideoManifest default_manifest(int segment_count = 275);

}  // namespace dashsim
