#include "dashsim/fuzzy.hpp"

#include <algorithm>
#include <stdexcept>

namespace dashsim {

void FuzzyConfig::validate() const {
  if (!(target_s > 0.0)) throw std::invalid_argument("target_s must be > 0");
  if (!(window_s > 0.0)) throw std::invalid_argument("window_s must be > 0");
  if (!(horizon_s > 0.0)) throw std::invalid_argument("horizon_s must be > 0");
  const double w[] = {weight_reduce, weight_small_reduce, weight_no_change,
                      weight_small_increase, weight_increase};
  if (!(w[0] > 0.0)) throw std::invalid_argument("output weights must be positive");
  for (int i = 1; i < 5; ++i)
    if (!(w[i] > w[i - 1]))
      throw std::invalid_argument("output weights must be strictly increasing");
}

namespace {

// Ramp from 0 at x0 to 1 at x1 (or 1 down to 0 when x1 < x0), clamped.
double ramp(double x, double x0, double x1) {
  double v = (x - x0) / (x1 - x0);
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace

double fuzzy_factor(double t_s, double dt_s, const FuzzyConfig& cfg) {
  const double T = cfg.target_s;
  const double t = std::max(t_s, 0.0);

  const double m_short = ramp(t, T, 2.0 * T / 3.0);
  const double m_close = std::min(ramp(t, 2.0 * T / 3.0, T), ramp(t, 4.0 * T, T));
  const double m_long = ramp(t, T, 4.0 * T);

  const double m_falling = ramp(dt_s, 0.0, -2.0 * T / 3.0);
  const double m_steady = std::min(ramp(dt_s, -2.0 * T / 3.0, 0.0), ramp(dt_s, 4.0 * T, 0.0));
  const double m_rising = ramp(dt_s, 0.0, 4.0 * T);

  const double strength[9] = {
      std::min(m_short, m_falling), std::min(m_short, m_steady), std::min(m_short, m_rising),
      std::min(m_close, m_falling), std::min(m_close, m_steady), std::min(m_close, m_rising),
      std::min(m_long, m_falling),  std::min(m_long, m_steady),  std::min(m_long, m_rising)};
  const double weight[9] = {cfg.weight_reduce,         cfg.weight_small_reduce,
                            cfg.weight_no_change,      cfg.weight_small_reduce,
                            cfg.weight_no_change,      cfg.weight_small_increase,
                            cfg.weight_no_change,      cfg.weight_small_increase,
                            cfg.weight_increase};

  double num = 0.0, den = 0.0;
  for (int i = 0; i < 9; ++i) {
    num += strength[i] * weight[i];
    den += strength[i];
  }
  return num / den;
}

}  // namespace dashsim
