#include "ltlplan/model/trig.hpp"

#include <algorithm>

namespace ltlplan::model {

namespace {

constexpr double kPi = std::numbers::pi;

TrigApprox make() {
  TrigApprox t;
  // sin: -theta - pi, -1, theta, 1, pi - theta
  t.sin = {{
      {-kPi, 1.0 - kPi, -1.0, -kPi},
      {1.0 - kPi, -1.0, 0.0, -1.0},
      {-1.0, 1.0, 1.0, 0.0},
      {1.0, kPi - 1.0, 0.0, 1.0},
      {kPi - 1.0, kPi, -1.0, kPi},
  }};
  // cos: -1, theta + pi/2, 1, pi/2 - theta, -1
  t.cos = {{
      {-kPi, -kPi / 2 - 1.0, 0.0, -1.0},
      {-kPi / 2 - 1.0, 1.0 - kPi / 2, 1.0, kPi / 2},
      {1.0 - kPi / 2, kPi / 2 - 1.0, 0.0, 1.0},
      {kPi / 2 - 1.0, kPi / 2 + 1.0, -1.0, kPi / 2},
      {kPi / 2 + 1.0, kPi, 0.0, -1.0},
  }};
  return t;
}

int find(const std::array<TrigSegment, kTrigSegments>& segs, double theta) {
  theta = std::clamp(theta, -kPi, kPi);
  for (int l = 0; l < kTrigSegments; ++l) {
    if (theta <= segs[l].hi) return l;
  }
  return kTrigSegments - 1;
}

}  // namespace

const TrigApprox& trig_approx() {
  static const TrigApprox t = make();
  return t;
}

int sin_segment(double theta) { return find(trig_approx().sin, theta); }
int cos_segment(double theta) { return find(trig_approx().cos, theta); }

double pw_sin(double theta) {
  return trig_approx().sin[sin_segment(theta)].at(std::clamp(theta, -kPi, kPi));
}

double pw_cos(double theta) {
  return trig_approx().cos[cos_segment(theta)].at(std::clamp(theta, -kPi, kPi));
}

}  // namespace ltlplan::model
