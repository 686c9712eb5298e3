#pragma once

#include <numbers>
#include <string>
#include <vector>

#include "ltlplan/ltl/semantics.hpp"
#include "ltlplan/plan/plan.hpp"

namespace ltlplan::plan {

struct Check {
  std::string name;
  bool passed = true;
  std::string detail;  // first failure, empty when passed
};

struct VerifyReport {
  std::vector<Check> checks;
  std::vector<SpecVerdict> verdicts;
  double objective = 0.0;  // recomputed from the poses

  bool passed() const;
  std::string summary() const;
};

inline constexpr double kVerifyTolerance = 1e-6;

/// Band for s^2 + c^2 of the piecewise sine and cosine. The largest value,
/// 1 + (pi/2 - 1)^2, is reached at theta = +-1 and +-(pi - 1).
inline constexpr double kNormBandLow = 0.83;
inline constexpr double kNormBandHigh = 1.0 + (std::numbers::pi / 2 - 1.0) * (std::numbers::pi / 2 - 1.0);

/// Atom values implied by the plan: region atoms from the assigned region
/// of each step, foot atoms from the step's foot.
ltl::Trace plan_trace(const FootstepPlan& plan, const model::Scenario& s);

/// Quadratic cost of the poses in the plan.
double plan_objective(const FootstepPlan& plan, const model::Scenario& s);

/// Re-checks the plan against the scenario without looking at any solver
/// state: specifications, region membership, trig approximation, rate
/// limit, reachability in the plan's norm realization, foot alternation,
/// initial stance, objective and goal tolerance.
VerifyReport verify(const FootstepPlan& plan, const model::Scenario& s);

}  // namespace ltlplan::plan
