#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "ltlplan/plan/plan.hpp"
#include "ltlplan/plan/verify.hpp"

namespace ltlplan::plan {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInfeasible = 2,
  kExitTimeLimit = 3,
  kExitVerification = 4,
};

struct RunOptions {
  std::filesystem::path scenario;
  std::filesystem::path out_dir = ".";
  bool export_lp = false;
  int threads = 1;
  // Command-line values win over the scenario's solver block.
  std::optional<double> time_limit;
  std::optional<double> gap;
  std::optional<int> linearize_k;
  std::optional<long> node_limit;
  std::optional<std::filesystem::path> verify_only;
  bool write_files = true;
};

struct RunOutcome {
  int exit_code = kExitOk;
  std::optional<FootstepPlan> plan;
  std::optional<VerifyReport> report;
  std::filesystem::path plan_path;
  std::filesystem::path svg_path;
};

/// Loads, builds, solves, verifies and writes `<name>.plan.json` and
/// `<name>.svg` into the output directory. Diagnostics go to `log`.
RunOutcome run(const RunOptions& options, std::ostream& log);

}  // namespace ltlplan::plan
