#pragma once

#include <filesystem>
#include <string>

#include "ltlplan/model/scenario.hpp"
#include "ltlplan/plan/plan.hpp"

namespace ltlplan::plan {

/// Figure with the regions, one marker group per footstep (red star for the
/// right foot, blue circle for the left, black heading arrow, step number)
/// and the goal pose. Output depends only on the inputs.
std::string render_svg(const FootstepPlan& plan, const model::Scenario& s);
void write_svg(const FootstepPlan& plan, const model::Scenario& s,
               const std::filesystem::path& path);

}  // namespace ltlplan::plan
