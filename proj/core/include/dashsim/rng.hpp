#pragma once

#include <cmath>
#include <cstdint>

namespace dashsim {

// SplitMix64 (Steele, Lea, Flood 2014). Chosen over std::mt19937 +
// std::*_distribution because the standard distributions are not pinned by
// the standard; this generator plus the inverse-CDF sampling below yields
// bit-identical streams on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Inverse-CDF exponential draw with the given mean.
  double next_exponential(double mean) { return -mean * std::log1p(-next_double()); }

  // Uniform integer in [0, n).
  int next_index(int n) { return static_cast<int>(next_double() * n); }

 private:
  std::uint64_t state_;
};

}  // namespace dashsim
