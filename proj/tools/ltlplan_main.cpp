#include <iostream>

#include "CLI11.hpp"
#include "ltlplan/plan/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"LTL footstep planner"};
  app.require_subcommand(1);

  ltlplan::plan::RunOptions opt;
  std::string scenario;
  std::string out_dir = ".";
  std::string verify_path;
  double time_limit = 0.0;
  double gap = 0.0;
  int linearize_k = 0;
  long node_limit = 0;

  auto* plan = app.add_subcommand("plan", "Solve a scenario, verify the plan and write JSON and SVG");
  plan->add_option("scenario", scenario, "Scenario JSON file")->required();
  plan->add_option("--out", out_dir, "Output directory")->capture_default_str();
  plan->add_flag("--export-lp", opt.export_lp, "Also write the model as LP text (linear and quadratic-row variants)");
  plan->add_option("--threads", opt.threads, "Nodes evaluated in parallel; 1 is reproducible")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  auto* tl = plan->add_option("--time-limit", time_limit, "Wall-clock limit in seconds (default 300)")
                 ->check(CLI::PositiveNumber);
  auto* gp = plan->add_option("--gap", gap, "Relative optimality gap (default 1e-6)")
                 ->check(CLI::NonNegativeNumber);
  auto* lk = plan->add_option("--linearize-k", linearize_k, "Polygon sides for the reachability disks (default 8)")
                 ->check(CLI::Range(3, 1000));
  auto* nl = plan->add_option("--node-limit", node_limit, "Branch-and-bound node limit (default 1e6)")
                 ->check(CLI::PositiveNumber);
  auto* vo = plan->add_option("--verify-only", verify_path, "Check an existing plan JSON instead of solving")
                 ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ltlplan::plan::kExitUsage;
  }

  opt.scenario = scenario;
  opt.out_dir = out_dir;
  if (*tl) opt.time_limit = time_limit;
  if (*gp) opt.gap = gap;
  if (*lk) opt.linearize_k = linearize_k;
  if (*nl) opt.node_limit = node_limit;
  if (*vo) opt.verify_only = verify_path;

  auto outcome = ltlplan::plan::run(opt, std::cerr);
  if (outcome.exit_code == ltlplan::plan::kExitOk && !opt.verify_only) {
    std::cout << outcome.plan_path.string() << "\n" << outcome.svg_path.string() << "\n";
  }
  return outcome.exit_code;
}
