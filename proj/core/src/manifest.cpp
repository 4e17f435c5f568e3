#include "dashsim/manifest.hpp"

#include <stdexcept>
#include <string>

namespace dashsim {

VideoManifest::VideoManifest(double segment_duration_s, int segment_count,
                             std::vector<double> ladder_bps)
    : segment_duration_s_(segment_duration_s), segment_count_(segment_count) {
  if (!(segment_duration_s > 0.0))
    throw std::invalid_argument("segment_duration_s must be > 0");
  if (segment_count < 1) throw std::invalid_argument("segment_count must be >= 1");
  if (ladder_bps.empty()) throw std::invalid_argument("ladder must not be empty");
  ladder_.reserve(ladder_bps.size());
  for (size_t i = 0; i < ladder_bps.size(); ++i) {
    if (!(ladder_bps[i] > 0.0))
      throw std::invalid_argument("ladder bitrate must be > 0 (index " + std::to_string(i) + ")");
    if (i > 0 && !(ladder_bps[i] > ladder_bps[i - 1]))
      throw std::invalid_argument("ladder bitrates must be strictly ascending");
    ladder_.push_back({static_cast<int>(i), ladder_bps[i]});
  }
}

const Representation& VideoManifest::rep(int index) const {
  if (index < 0 || index >= ladder_size())
    throw std::out_of_range("representation index " + std::to_string(index) + " out of range");
  return ladder_[static_cast<size_t>(index)];
}

double segment_size_bits(const VideoManifest& manifest, int rep) {
  return manifest.rep(rep).bitrate_bps * manifest.segment_duration_s();
}

int quantize_to_ladder(const VideoManifest& manifest, double candidate_bps) {
  int best = 0;
  for (const Representation& r : manifest.ladder())
    if (r.bitrate_bps <= candidate_bps) best = r.index;
  return best;
}

VideoManifest default_manifest(int segment_count) {
  return VideoManifest(2.0, segment_count, {350e3, 700e3, 1.4e6, 2.8e6, 4.2e6});
}

}  // namespace dashsim
