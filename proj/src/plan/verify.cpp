#include "ltlplan/plan/verify.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "ltlplan/ltl/parser.hpp"
#include "ltlplan/model/trig.hpp"

namespace ltlplan::plan {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTol = kVerifyTolerance;

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

/// Records the first failure only; later ones add nothing a reader needs.
struct CheckBuilder {
  Check c;
  explicit CheckBuilder(std::string name) { c.name = std::move(name); }
  void fail(const std::string& detail) {
    if (c.passed) c.detail = detail;
    c.passed = false;
  }
};

std::string step_tag(int j) { return "step " + std::to_string(j) + ": "; }

}  // namespace

bool VerifyReport::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  for (const auto& v : verdicts) {
    if (!v.satisfied) return false;
  }
  return true;
}

std::string VerifyReport::summary() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.passed) out << ": " << c.detail;
    out << "\n";
  }
  for (const auto& v : verdicts) {
    out << (v.satisfied ? "PASS " : "FAIL ") << "spec " << v.formula << "\n";
  }
  return out.str();
}

ltl::Trace plan_trace(const FootstepPlan& plan, const model::Scenario& s) {
  const int n = static_cast<int>(plan.steps.size());
  ltl::Trace::Assignment values;
  for (const auto& [name, src] : model::atom_table(s)) {
    std::vector<bool> row(n);
    for (int j = 0; j < n; ++j) {
      const PlanStep& st = plan.steps[j];
      switch (src.kind) {
        case model::AtomSource::Region:
          row[j] = st.region == src.region;
          break;
        case model::AtomSource::LeftLeg:
          row[j] = st.foot == model::Foot::Left;
          break;
        case model::AtomSource::RightLeg:
          row[j] = st.foot == model::Foot::Right;
          break;
      }
    }
    values.emplace(name, std::move(row));
  }
  return ltl::Trace(n, std::move(values));
}

double plan_objective(const FootstepPlan& plan, const model::Scenario& s) {
  auto form = [](const std::array<double, 3>& d, const model::Mat3& w) {
    double acc = 0.0;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) acc += d[a] * w[a][b] * d[b];
    }
    return acc;
  };
  if (plan.steps.empty()) return 0.0;
  const PlanStep& last = plan.steps.back();
  double total = form({last.x - s.goal.x, last.y - s.goal.y, last.theta - s.goal.theta}, s.Q);
  for (std::size_t j = 1; j < plan.steps.size(); ++j) {
    const PlanStep& a = plan.steps[j];
    const PlanStep& b = plan.steps[j - 1];
    total += form({a.x - b.x, a.y - b.y, a.theta - b.theta}, s.R);
  }
  return total;
}

VerifyReport verify(const FootstepPlan& plan, const model::Scenario& s) {
  VerifyReport rep;
  const int n = s.num_steps;

  CheckBuilder count("step count");
  if (static_cast<int>(plan.steps.size()) != n) {
    count.fail("plan has " + std::to_string(plan.steps.size()) + " steps, scenario needs " +
               std::to_string(n));
  }
  for (int j = 0; j < static_cast<int>(plan.steps.size()) && count.c.passed; ++j) {
    if (plan.steps[j].index != j + 1) count.fail("steps are not numbered 1.." + std::to_string(n));
  }
  rep.checks.push_back(count.c);
  if (!count.c.passed) return rep;

  CheckBuilder stance("initial stance");
  for (int j = 1; j <= 2; ++j) {
    const PlanStep& st = plan.steps[j - 1];
    const model::Pose& want = s.initial_stance[j - 1];
    double err = std::max({std::abs(st.x - want.x), std::abs(st.y - want.y),
                           std::abs(st.theta - want.theta)});
    if (err > kTol) stance.fail(step_tag(j) + "differs from the initial stance by " + fmt("%.3g", err));
  }
  rep.checks.push_back(stance.c);

  CheckBuilder feet("foot sequence");
  for (int j = 1; j <= n; ++j) {
    const PlanStep& st = plan.steps[j - 1];
    if (j >= 2 && st.foot == plan.steps[j - 2].foot) {
      feet.fail(step_tag(j) + "same foot as the previous step");
    } else if (st.foot != s.foot_of(j)) {
      feet.fail(step_tag(j) + std::string("expected the ") + model::to_string(s.foot_of(j)) + " foot");
    }
  }
  rep.checks.push_back(feet.c);

  CheckBuilder workspace("workspace");
  CheckBuilder regions("region membership");
  for (const auto& st : plan.steps) {
    const model::Box& w = s.workspace;
    if (st.x < w.xmin - kTol || st.x > w.xmax + kTol || st.y < w.ymin - kTol ||
        st.y > w.ymax + kTol) {
      workspace.fail(step_tag(st.index) + "outside the workspace box");
    }
    int r = s.region_index(st.region);
    if (r < 0) {
      regions.fail(step_tag(st.index) + "unknown region '" + st.region + "'");
      continue;
    }
    const model::Region& reg = s.regions[r];
    for (int q = 0; q < static_cast<int>(reg.rows().size()); ++q) {
      const model::HalfPlane& h = reg.rows()[q];
      double excess = h.ax * st.x + h.ay * st.y - h.b;
      if (excess > kTol) {
        regions.fail(step_tag(st.index) + "outside region " + st.region + ", row " +
                     std::to_string(q + 1) + " violated by " + fmt("%.6g", excess));
        break;
      }
    }
  }
  rep.checks.push_back(workspace.c);
  rep.checks.push_back(regions.c);

  CheckBuilder trig("trig approximation");
  CheckBuilder band("sin/cos norm band");
  for (const auto& st : plan.steps) {
    if (st.theta < -kPi - kTol || st.theta > kPi + kTol) {
      trig.fail(step_tag(st.index) + "heading outside [-pi, pi]");
      continue;
    }
    double es = std::abs(st.s - model::pw_sin(st.theta));
    double ec = std::abs(st.c - model::pw_cos(st.theta));
    if (es > kTol) trig.fail(step_tag(st.index) + "s differs from the piecewise sine by " + fmt("%.3g", es));
    if (ec > kTol) trig.fail(step_tag(st.index) + "c differs from the piecewise cosine by " + fmt("%.3g", ec));
    double norm2 = st.s * st.s + st.c * st.c;
    if (norm2 < kNormBandLow - kTol || norm2 > kNormBandHigh + kTol) {
      band.fail(step_tag(st.index) + "s^2 + c^2 = " + fmt("%.4f", norm2));
    }
  }
  rep.checks.push_back(trig.c);
  rep.checks.push_back(band.c);

  CheckBuilder rate("heading rate limit");
  for (int j = 2; j <= n; ++j) {
    double d = plan.steps[j - 1].theta - plan.steps[j - 2].theta;
    if (std::abs(d) > kPi / 8 + kTol) {
      rate.fail(step_tag(j) + "heading change " + fmt("%.6g", d) + " exceeds pi/8");
    }
  }
  rep.checks.push_back(rate.c);

  CheckBuilder reach("reachability");
  const int sides = plan.polygon_sides;
  if (plan.norm == model::NormRealization::Polygon && sides < 3) {
    reach.fail("polygon realization needs at least 3 sides");
  }
  auto check_disk = [&](int j, model::Point center, double radius, const std::string& what) {
    const PlanStep& cur = plan.steps[j - 1];
    const PlanStep& prev = plan.steps[j - 2];
    double dx = cur.x - prev.x - (cur.c * center.x - cur.s * center.y);
    double dy = cur.y - prev.y - (cur.s * center.x + cur.c * center.y);
    if (plan.norm == model::NormRealization::Quadratic) {
      double excess = std::hypot(dx, dy) - radius;
      if (excess > kTol) reach.fail(step_tag(j) + what + " exceeded by " + fmt("%.6g", excess));
      return;
    }
    const double rhs = radius * std::cos(kPi / sides);
    for (int q = 0; q < sides; ++q) {
      double ang = 2.0 * kPi * q / sides;
      double excess = std::cos(ang) * dx + std::sin(ang) * dy - rhs;
      if (excess > kTol) {
        reach.fail(step_tag(j) + what + " side " + std::to_string(q + 1) + " exceeded by " +
                   fmt("%.6g", excess));
        return;
      }
    }
  };
  for (int j = 3; j <= n && sides >= 3; ++j) {
    const PlanStep& st = plan.steps[j - 1];
    const auto& nom = s.reach.nominal;
    check_disk(j, model::circle_center(nom.p1, st.foot), nom.r1, "circle 1");
    check_disk(j, model::circle_center(nom.p2, st.foot), nom.r2, "circle 2");
    for (const auto& name : s.reduced_stride_regions) {
      if (name != st.region) continue;
      const auto& red = s.reach.reduced;
      check_disk(j, model::circle_center(red.p1, st.foot), red.r1, "reduced circle 1");
      check_disk(j, model::circle_center(red.p2, st.foot), red.r2, "reduced circle 2");
    }
  }
  rep.checks.push_back(reach.c);

  rep.objective = plan_objective(plan, s);
  CheckBuilder obj("objective");
  double err = std::abs(rep.objective - plan.objective);
  if (err > kTol * std::max(1.0, std::abs(rep.objective))) {
    obj.fail("recomputed " + fmt("%.10g", rep.objective) + " but plan reports " +
             fmt("%.10g", plan.objective));
  }
  rep.checks.push_back(obj.c);

  CheckBuilder goal("goal tolerance");
  const PlanStep& last = plan.steps.back();
  double pos = std::hypot(last.x - s.goal.x, last.y - s.goal.y);
  double head = std::abs(last.theta - s.goal.theta);
  if (pos > s.goal_tolerance.position) goal.fail("final step is " + fmt("%.4g", pos) + " m from the goal");
  if (head > s.goal_tolerance.theta) goal.fail("final heading is off by " + fmt("%.4g", head) + " rad");
  rep.checks.push_back(goal.c);

  CheckBuilder specs("specifications");
  ltl::Trace trace = plan_trace(plan, s);
  for (const auto& text : s.specs) {
    try {
      ltl::Formula f = ltl::parse(text);
      rep.verdicts.push_back({text, ltl::evaluate(f, trace, 1)});
    } catch (const std::exception& e) {
      specs.fail("'" + text + "': " + e.what());
      rep.verdicts.push_back({text, false});
    }
  }
  rep.checks.push_back(specs.c);
  return rep;
}

}  // namespace ltlplan::plan
