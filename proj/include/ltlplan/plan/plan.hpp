#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltlplan/model/footstep_model.hpp"
#include "ltlplan/model/scenario.hpp"
#include "ltlplan/solver/branch_and_bound.hpp"

namespace ltlplan::plan {

inline constexpr const char* kPlanSchema = "footstep-plan/1";

struct PlanStep {
  int index = 0;
  model::Foot foot = model::Foot::Right;
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
  double s = 0.0;
  double c = 0.0;
  std::string region;
};

struct SpecVerdict {
  std::string formula;
  bool satisfied = false;
};

/// Search statistics. Wall time is left out so that plan files are
/// reproducible byte for byte.
struct SolverStats {
  long nodes = 0;
  long relaxations = 0;
  double bound = 0.0;
  double gap = 0.0;
  bool node_limit_hit = false;
};

struct FootstepPlan {
  std::string scenario;
  std::string status;
  double objective = 0.0;
  model::NormRealization norm = model::NormRealization::Polygon;
  int polygon_sides = 8;
  std::vector<PlanStep> steps;
  std::vector<SpecVerdict> verdicts;
  SolverStats stats;
  std::vector<std::string> warnings;
};

class PlanFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads per-step values out of a solution vector. Each step takes the
/// region whose H binary is largest; the foot comes from LL/RL when the
/// scenario uses contact ordering and from the alternation otherwise.
FootstepPlan extract_plan(const model::Scenario& s, const model::FootstepProblem& problem,
                          const solver::SolveResult& result, const model::BuildOptions& options);

/// Plan JSON text, newline terminated.
std::string to_json(const FootstepPlan& plan);
FootstepPlan plan_from_json(const std::string& text);
FootstepPlan load_plan(const std::filesystem::path& path);
void save_plan(const FootstepPlan& plan, const std::filesystem::path& path);

const char* to_string(model::NormRealization n);

}  // namespace ltlplan::plan
