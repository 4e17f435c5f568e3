#include "dashsim/abr.hpp"

#include <stdexcept>

namespace dashsim {

double estimate_segment_throughput(const DownloadRecord& record) {
  double duration = record.duration_s();
  if (!(duration > 0.0))
    throw std::invalid_argument("segment download has no positive duration");
  return record.bits / duration;
}

double windowed_throughput(std::span<const CompletedSegment> history, double now_s,
                           double window_s) {
  if (history.empty()) throw std::invalid_argument("no completed downloads yet");
  double sum = 0.0;
  int count = 0;
  for (const CompletedSegment& seg : history) {
    double end = seg.download.end_time_s;
    if (end > now_s - window_s && end <= now_s) {
      sum += estimate_segment_throughput(seg.download);
      ++count;
    }
  }
  if (count == 0) return estimate_segment_throughput(history.back().download);
  return sum / count;
}

}  // namespace dashsim
