#include <numbers>
#include <sstream>

#include "doctest.h"
#include "ltlplan/plan/plan.hpp"
#include "ltlplan/plan/runner.hpp"
#include "ltlplan/plan/svg.hpp"
#include "ltlplan/plan/verify.hpp"

using namespace ltlplan;
using namespace ltlplan::plan;

namespace {

constexpr double kPi = std::numbers::pi;

std::string scenario_path(const char* name) {
  return std::string(LTLPLAN_SCENARIO_DIR) + "/" + name + ".json";
}

/// Solved corridor plan, computed once.
const RunOutcome& corridor() {
  static const RunOutcome out = [] {
    RunOptions o;
    o.scenario = scenario_path("corridor_fixed");
    o.write_files = false;
    std::ostringstream log;
    return run(o, log);
  }();
  return out;
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
  return n;
}

const Check& find_check(const VerifyReport& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.name == name) return c;
  }
  FAIL("no check named ", name);
  return r.checks.front();
}

}  // namespace

TEST_CASE("corridor plan solves and verifies") {
  const auto& out = corridor();
  REQUIRE(out.exit_code == kExitOk);
  REQUIRE(out.plan.has_value());
  REQUIRE(out.report.has_value());
  CHECK(out.report->passed());
  CHECK(out.plan->status == "optimal");
  CHECK(out.plan->steps.size() == 12);
  for (const auto& v : out.plan->verdicts) CHECK(v.satisfied);
}

TEST_CASE("plan JSON round-trips") {
  const auto& p = *corridor().plan;
  const std::string text = to_json(p);
  CHECK(text.find("\"schema\": \"footstep-plan/1\"") != std::string::npos);
  CHECK(text.back() == '\n');
  FootstepPlan back = plan_from_json(text);
  CHECK(to_json(back) == text);
  CHECK(back.steps.size() == p.steps.size());
  CHECK(back.objective == p.objective);
  CHECK_THROWS_AS(plan_from_json("{\"schema\": \"other\"}"), PlanFormatError);
  CHECK_THROWS_AS(plan_from_json("not json"), PlanFormatError);
}

TEST_CASE("verification catches a step moved out of its region") {
  auto s = model::load_scenario(scenario_path("corridor_fixed"));
  FootstepPlan p = *corridor().plan;
  p.steps[6].x += 3.0;
  auto r = verify(p, s);
  CHECK_FALSE(r.passed());
  const Check& c = find_check(r, "region membership");
  CHECK_FALSE(c.passed);
  CHECK(c.detail.find("step 7") != std::string::npos);
  CHECK(c.detail.find("row") != std::string::npos);
}

TEST_CASE("verification catches a heading jump") {
  auto s = model::load_scenario(scenario_path("corridor_fixed"));
  FootstepPlan p = *corridor().plan;
  p.steps[4].theta = p.steps[3].theta + kPi / 4;
  auto r = verify(p, s);
  CHECK_FALSE(find_check(r, "heading rate limit").passed);
  CHECK_FALSE(r.passed());
}

TEST_CASE("verification recomputes the objective and the verdicts") {
  auto s = model::load_scenario(scenario_path("corridor_fixed"));
  FootstepPlan p = *corridor().plan;
  auto r = verify(p, s);
  CHECK(r.objective == doctest::Approx(p.objective).epsilon(1e-9));
  CHECK(plan_objective(p, s) == doctest::Approx(p.objective).epsilon(1e-9));
  auto t = plan_trace(p, s);
  CHECK(t.length() == s.num_steps);
  p.objective *= 1.01;
  CHECK_FALSE(find_check(verify(p, s), "objective").passed);
}

TEST_CASE("two-step plan renders two markers and one goal") {
  auto s = model::load_scenario(scenario_path("corridor_fixed"));
  s.num_steps = 2;
  FootstepPlan p;
  p.scenario = "origin";
  p.status = "optimal";
  p.steps = {{1, model::Foot::Right, 0.0, 0.0, 0.0, 0.0, 1.0, "R1"},
             {2, model::Foot::Left, 0.0, 0.0, 0.0, 0.0, 1.0, "R1"}};
  const std::string svg = render_svg(p, s);
  CHECK(count(svg, "class=\"footstep\"") == 2);
  CHECK(count(svg, "class=\"goal\"") == 1);
  CHECK(count(svg, "class=\"region\"") == s.regions.size());
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg == render_svg(p, s));
}

TEST_CASE("rendering is deterministic") {
  auto s = model::load_scenario(scenario_path("corridor_fixed"));
  const auto& p = *corridor().plan;
  CHECK(render_svg(p, s) == render_svg(plan_from_json(to_json(p)), s));
  CHECK(count(render_svg(p, s), "class=\"footstep\"") == 12);
}

TEST_CASE("runner maps failures to exit codes") {
  std::ostringstream log;
  RunOptions o;
  o.write_files = false;
  o.scenario = scenario_path("does_not_exist");
  CHECK(run(o, log).exit_code == kExitUsage);
  o.scenario = scenario_path("probe_unreachable");
  CHECK(run(o, log).exit_code == kExitInfeasible);
}
