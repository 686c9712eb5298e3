#include "ltlplan/plan/plan.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ltlplan::plan {

using Json = nlohmann::ordered_json;

const char* to_string(model::NormRealization n) {
  return n == model::NormRealization::Polygon ? "polygon" : "quadratic";
}

FootstepPlan extract_plan(const model::Scenario& s, const model::FootstepProblem& problem,
                          const solver::SolveResult& result, const model::BuildOptions& options) {
  FootstepPlan p;
  p.scenario = s.name;
  p.status = solver::to_string(result.status);
  p.norm = options.norm;
  p.polygon_sides = options.polygon_sides;
  p.stats.nodes = result.nodes;
  p.stats.relaxations = result.relaxations;
  p.stats.bound = result.bound;
  p.stats.gap = result.gap;
  p.stats.node_limit_hit = result.node_limit_hit;
  p.warnings = problem.warnings;
  p.warnings.insert(p.warnings.end(), result.warnings.begin(), result.warnings.end());
  for (const auto& text : s.specs) p.verdicts.push_back({text, false});
  if (result.x.empty()) return p;

  p.objective = result.objective;
  const auto& v = problem.vars;
  const auto& x = result.x;
  for (int j = 1; j <= v.steps; ++j) {
    PlanStep st;
    st.index = j;
    st.x = x[v.x[j - 1]];
    st.y = x[v.y[j - 1]];
    st.theta = x[v.theta[j - 1]];
    st.s = x[v.s[j - 1]];
    st.c = x[v.c[j - 1]];
    int best = 0;
    for (int r = 1; r < static_cast<int>(v.H.size()); ++r) {
      if (x[v.H[r][j - 1]] > x[v.H[best][j - 1]]) best = r;
    }
    st.region = s.regions[best].name();
    if (s.contact_ordering) {
      st.foot = x[v.LL[j - 1]] > x[v.RL[j - 1]] ? model::Foot::Left : model::Foot::Right;
    } else {
      st.foot = s.foot_of(j);
    }
    p.steps.push_back(std::move(st));
  }
  return p;
}

namespace {

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double number_or(const Json& j, double fallback) {
  return j.is_number() ? j.get<double>() : fallback;
}

}  // namespace

std::string to_json(const FootstepPlan& plan) {
  Json j;
  j["schema"] = kPlanSchema;
  j["scenario"] = plan.scenario;
  j["status"] = plan.status;
  j["objective"] = number(plan.objective);
  j["reachability"] = {{"norm", to_string(plan.norm)}, {"polygon_sides", plan.polygon_sides}};
  Json steps = Json::array();
  for (const auto& st : plan.steps) {
    steps.push_back({{"index", st.index},
                     {"foot", st.foot == model::Foot::Left ? "L" : "R"},
                     {"x", st.x},
                     {"y", st.y},
                     {"theta", st.theta},
                     {"s", st.s},
                     {"c", st.c},
                     {"region", st.region}});
  }
  j["steps"] = std::move(steps);
  Json specs = Json::array();
  for (const auto& v : plan.verdicts) specs.push_back({{"formula", v.formula}, {"satisfied", v.satisfied}});
  j["specs"] = std::move(specs);
  j["solver"] = {{"nodes", plan.stats.nodes},
                 {"relaxations", plan.stats.relaxations},
                 {"bound", number(plan.stats.bound)},
                 {"gap", number(plan.stats.gap)},
                 {"node_limit_hit", plan.stats.node_limit_hit}};
  j["warnings"] = plan.warnings;
  return j.dump(2) + "\n";
}

FootstepPlan plan_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw PlanFormatError(std::string("plan is not valid JSON: ") + e.what());
  }
  try {
    if (j.value("schema", "") != kPlanSchema) {
      throw PlanFormatError(std::string("plan schema must be \"") + kPlanSchema + "\"");
    }
    FootstepPlan p;
    p.scenario = j.value("scenario", "");
    p.status = j.at("status").get<std::string>();
    p.objective = number_or(j.value("objective", Json()), 0.0);
    if (j.contains("reachability")) {
      const auto& r = j.at("reachability");
      std::string norm = r.value("norm", "polygon");
      if (norm == "polygon") {
        p.norm = model::NormRealization::Polygon;
      } else if (norm == "quadratic") {
        p.norm = model::NormRealization::Quadratic;
      } else {
        throw PlanFormatError("reachability.norm: unknown realization '" + norm + "'");
      }
      p.polygon_sides = r.value("polygon_sides", 8);
    }
    for (const auto& st : j.at("steps")) {
      PlanStep s;
      s.index = st.at("index").get<int>();
      std::string foot = st.at("foot").get<std::string>();
      if (foot != "L" && foot != "R") throw PlanFormatError("steps: foot must be \"L\" or \"R\"");
      s.foot = foot == "L" ? model::Foot::Left : model::Foot::Right;
      s.x = st.at("x").get<double>();
      s.y = st.at("y").get<double>();
      s.theta = st.at("theta").get<double>();
      s.s = st.at("s").get<double>();
      s.c = st.at("c").get<double>();
      s.region = st.at("region").get<std::string>();
      p.steps.push_back(std::move(s));
    }
    if (j.contains("specs")) {
      for (const auto& v : j.at("specs")) {
        p.verdicts.push_back({v.at("formula").get<std::string>(), v.at("satisfied").get<bool>()});
      }
    }
    if (j.contains("solver")) {
      const auto& sv = j.at("solver");
      p.stats.nodes = sv.value("nodes", 0L);
      p.stats.relaxations = sv.value("relaxations", 0L);
      p.stats.bound = number_or(sv.value("bound", Json()), -solver::kInf);
      p.stats.gap = number_or(sv.value("gap", Json()), solver::kInf);
      p.stats.node_limit_hit = sv.value("node_limit_hit", false);
    }
    if (j.contains("warnings")) p.warnings = j.at("warnings").get<std::vector<std::string>>();
    return p;
  } catch (const Json::exception& e) {
    throw PlanFormatError(std::string("malformed plan: ") + e.what());
  }
}

FootstepPlan load_plan(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PlanFormatError("cannot open plan file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return plan_from_json(buf.str());
}

void save_plan(const FootstepPlan& plan, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json(plan);
}

}  // namespace ltlplan::plan
