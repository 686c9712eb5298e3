#pragma once

#include <array>
#include <numbers>

namespace ltlplan::model {

/// value = slope * theta + intercept on [lo, hi].
struct TrigSegment {
  double lo = 0.0;
  double hi = 0.0;
  double slope = 0.0;
  double intercept = 0.0;

  double at(double theta) const { return slope * theta + intercept; }
};

inline constexpr int kTrigSegments = 5;

/// Five-segment piecewise-linear sine and cosine over [-pi, pi].
struct TrigApprox {
  std::array<TrigSegment, kTrigSegments> sin;
  std::array<TrigSegment, kTrigSegments> cos;
};

const TrigApprox& trig_approx();

/// First segment (lowest index) whose closed interval contains theta;
/// theta is clamped to [-pi, pi].
int sin_segment(double theta);
int cos_segment(double theta);

double pw_sin(double theta);
double pw_cos(double theta);

}  // namespace ltlplan::model
