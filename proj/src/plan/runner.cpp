#include "ltlplan/plan/runner.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

#include "ltlplan/encoder/encoder.hpp"
#include "ltlplan/ltl/parser.hpp"
#include "ltlplan/model/footstep_model.hpp"
#include "ltlplan/plan/svg.hpp"
#include "ltlplan/solver/lp_format.hpp"

namespace ltlplan::plan {

namespace {

int verify_only(const RunOptions& opt, std::ostream& log, RunOutcome& outcome) {
  model::Scenario s = model::load_scenario(opt.scenario);
  FootstepPlan p = load_plan(*opt.verify_only);
  VerifyReport rep = verify(p, s);
  log << rep.summary();
  outcome.plan = std::move(p);
  outcome.report = rep;
  return rep.passed() ? kExitOk : kExitVerification;
}

/// Binaries in the returned solution must sit on {0, 1}.
Check integrality(const model::FootstepProblem& problem, const solver::SolveResult& res) {
  Check c{"integrality", true, ""};
  for (int v = 0; v < problem.model.num_variables(); ++v) {
    if (problem.model.variable(v).kind != solver::VarKind::Binary) continue;
    double f = std::abs(res.x[v] - std::round(res.x[v]));
    if (f > 1e-9) {
      c.passed = false;
      c.detail = problem.model.variable(v).name + " = " + std::to_string(res.x[v]);
      break;
    }
  }
  return c;
}

int solve(const RunOptions& opt, std::ostream& log, RunOutcome& outcome) {
  model::Scenario s = model::load_scenario(opt.scenario);
  model::BuildOptions build;
  build.polygon_sides = opt.linearize_k.value_or(s.solver.linearize_k.value_or(8));
  if (build.polygon_sides < 3) {
    log << "error: --linearize-k must be at least 3\n";
    return kExitUsage;
  }

  model::FootstepProblem problem;
  try {
    problem = model::build_problem(s, build);
  } catch (const ltl::ParseError& e) {
    log << "error: specification does not parse: " << e.what() << "\n";
    return kExitUsage;
  } catch (const encoder::EncodeError& e) {
    log << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  for (const auto& w : problem.warnings) log << "warning: " << w << "\n";

  const std::string stem = opt.scenario.stem().string();
  if (opt.write_files) std::filesystem::create_directories(opt.out_dir);
  if (opt.export_lp && opt.write_files) {
    auto lp = opt.out_dir / (stem + ".lp");
    solver::write_lp_file(problem.model, lp, solver::LpProfile::Linear, stem);
    model::BuildOptions qc = build;
    qc.norm = model::NormRealization::Quadratic;
    auto qp = model::build_problem(s, qc);
    auto qlp = opt.out_dir / (stem + ".qc.lp");
    solver::write_lp_file(qp.model, qlp, solver::LpProfile::Quadratic, stem);
    log << "exported " << lp.string() << " and " << qlp.string() << "\n";
  }

  solver::BnbConfig cfg;
  cfg.gap = opt.gap.value_or(s.solver.gap.value_or(cfg.gap));
  cfg.time_limit = opt.time_limit.value_or(s.solver.time_limit.value_or(cfg.time_limit));
  cfg.node_limit = opt.node_limit.value_or(s.solver.node_limit.value_or(cfg.node_limit));
  cfg.threads = std::max(1, opt.threads);
  log << "model: " << problem.model.num_variables() << " variables, "
      << problem.model.num_binaries() << " binaries, " << problem.model.num_rows() << " rows\n";

  solver::SolveResult res = solver::branch_and_bound(problem.model, cfg);
  log << "status " << solver::to_string(res.status) << std::setprecision(10) << " objective "
      << res.objective << " bound " << res.bound << " gap " << std::setprecision(3) << res.gap
      << " nodes " << res.nodes << " time " << std::fixed << std::setprecision(2)
      << res.wall_seconds << "s\n"
      << std::defaultfloat;
  for (const auto& w : res.warnings) log << "warning: " << w << "\n";

  FootstepPlan p = extract_plan(s, problem, res, build);
  outcome.plan_path = opt.out_dir / (stem + ".plan.json");
  outcome.svg_path = opt.out_dir / (stem + ".svg");
  if (res.x.empty()) {
    if (opt.write_files) save_plan(p, outcome.plan_path);
    outcome.plan = std::move(p);
    if (res.status == solver::SolveStatus::Infeasible) {
      log << "infeasible: no footstep plan satisfies the specifications\n";
      return kExitInfeasible;
    }
    log << "time limit reached without a feasible plan\n";
    return kExitTimeLimit;
  }

  VerifyReport rep = verify(p, s);
  rep.checks.push_back(integrality(problem, res));
  p.verdicts = rep.verdicts;
  if (opt.write_files) {
    save_plan(p, outcome.plan_path);
    write_svg(p, s, outcome.svg_path);
  }
  log << rep.summary();
  outcome.plan = std::move(p);
  outcome.report = rep;
  if (!rep.passed()) {
    log << "error: plan failed verification\n";
    return kExitVerification;
  }
  return res.status == solver::SolveStatus::Optimal ? kExitOk : kExitTimeLimit;
}

}  // namespace

RunOutcome run(const RunOptions& options, std::ostream& log) {
  RunOutcome outcome;
  try {
    outcome.exit_code = options.verify_only ? verify_only(options, log, outcome)
                                            : solve(options, log, outcome);
  } catch (const model::ScenarioError& e) {
    log << "error: " << e.what() << "\n";
    outcome.exit_code = kExitUsage;
  } catch (const PlanFormatError& e) {
    log << "error: " << e.what() << "\n";
    outcome.exit_code = kExitUsage;
  } catch (const model::RegionError& e) {
    log << "error: " << e.what() << "\n";
    outcome.exit_code = kExitUsage;
  }
  return outcome;
}

}  // namespace ltlplan::plan
