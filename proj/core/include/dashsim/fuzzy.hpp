#pragma once

namespace dashsim {

// Controller constants. target_s is the buffering time the controller steers
// toward, window_s the throughput-averaging window, horizon_s the
// look-ahead used by the switch-suppression rule. The five output weights
// must be strictly increasing.
struct FuzzyConfig {
  double target_s = 35.0;
  double window_s = 10.0;
  double horizon_s = 60.0;
  double weight_reduce = 0.25;
  double weight_small_reduce = 0.5;
  double weight_no_change = 1.0;
  double weight_small_increase = 1.5;
  double weight_increase = 2.0;

  void validate() const;  // std::invalid_argument on violation
};

// Mamdani-style rate factor from the buffering time t of the last received
// segment and its change dt since the previous one. Inputs are fuzzified as
// (with T = target_s)
//   t:  short  1 on [0,2T/3], linear to 0 at T
//       close  0 at 2T/3, peak 1 at T, linear to 0 at 4T
//       long   0 at T, linear to 1 at 4T, 1 beyond
//   dt: falling 1 below -2T/3, linear to 0 at 0
//       steady  0 at -2T/3, peak 1 at 0, linear to 0 at 4T
//       rising  0 at 0, linear to 1 at 4T, 1 beyond
// and combined through nine min-rules
//   short:  falling->reduce        steady->small_reduce  rising->no_change
//   close:  falling->small_reduce  steady->no_change     rising->small_increase
//   long:   falling->no_change     steady->small_increase rising->increase
// defuzzified as the strength-weighted average of the rule weights. The
// result always lies in [weight_reduce, weight_increase], equals 1 exactly
// at (T, 0), and is non-decreasing in both inputs.
double fuzzy_factor(double t_s, double dt_s, const FuzzyConfig& cfg);

}  // namespace dashsim
