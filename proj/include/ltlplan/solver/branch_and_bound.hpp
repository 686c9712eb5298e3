#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ltlplan/solver/model_ir.hpp"
#include "ltlplan/solver/relaxation.hpp"

namespace ltlplan::solver {

enum class SolveStatus { Optimal, Infeasible, TimeLimitIncumbent, TimeLimitNoIncumbent };

const char* to_string(SolveStatus s);

struct BnbProgress {
  long nodes = 0;
  std::size_t open = 0;
  double incumbent = kInf;
  double bound = -kInf;
  double seconds = 0.0;
};

struct BnbConfig {
  /// Relative gap (incumbent - bound) / max(1, |incumbent|) at which the
  /// search stops.
  double gap = 1e-6;
  double time_limit = 300.0;
  long node_limit = 1000000;
  /// Nodes evaluated per batch. 1 keeps the search strictly serial.
  int threads = 1;
  double integrality_tolerance = 1e-6;
  bool dive = true;
  AdmmSettings admm;
  /// Called every `progress_interval` nodes when set.
  std::function<void(const BnbProgress&)> progress;
  long progress_interval = 1000;
};

struct SolveResult {
  SolveStatus status = SolveStatus::TimeLimitNoIncumbent;
  std::vector<double> x;
  double objective = kInf;
  double bound = -kInf;
  double gap = kInf;
  long nodes = 0;
  long relaxations = 0;
  double wall_seconds = 0.0;
  /// Set when the node limit rather than the clock ended the search.
  bool node_limit_hit = false;
  /// Largest drop of a child's relaxation value below its parent's.
  double worst_monotonicity = 0.0;
  std::vector<std::string> warnings;
};

double relative_gap(double incumbent, double bound);

/// Best-first branch-and-bound over the linear-row model with convex QP
/// relaxations. Throws std::invalid_argument for models with quadratic rows.
SolveResult branch_and_bound(const Model& model, const BnbConfig& config = {});

}  // namespace ltlplan::solver
