#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <optional>
#include <span>
#include <vector>

#include "ltlplan/solver/kernels.hpp"
#include "ltlplan/solver/model_ir.hpp"

namespace ltlplan::solver {

/// minimize 1/2 x'Px + q'x + constant  subject to  lower <= Ax <= upper.
/// P is stored with both triangles.
struct QpProblem {
  Eigen::SparseMatrix<double> P;
  Eigen::VectorXd q;
  double constant = 0.0;
  Eigen::SparseMatrix<double> A;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  int num_variables() const { return static_cast<int>(q.size()); }
  int num_rows() const { return static_cast<int>(lower.size()); }
};

struct AdmmSettings {
  double rho = 0.1;
  double sigma = 1e-6;
  double alpha = 1.6;
  /// Acceptance tolerances for the returned point.
  double eps_abs = 1e-6;
  double eps_rel = 1e-6;
  /// ADMM accuracy at which a polish attempt is made.
  double eps_polish = 1e-4;
  double eps_infeasible = 1e-7;
  int max_iter = 20000;
  int check_interval = 10;
  int adaptive_rho_interval = 50;
  int scaling_iterations = 10;
  bool polish = true;
  kernels::Backend backend = kernels::Backend::Serial;
};

enum class RelaxStatus { Solved, PrimalInfeasible, DualInfeasible, IterationLimit };

const char* to_string(RelaxStatus s);

struct QpWarmStart {
  Eigen::VectorXd x;
  Eigen::VectorXd y;
};

struct QpResult {
  RelaxStatus status = RelaxStatus::IterationLimit;
  Eigen::VectorXd x;
  /// Row multipliers: positive when the upper side is active.
  Eigen::VectorXd y;
  double objective = kInf;
  double primal_residual = kInf;
  double dual_residual = kInf;
  int iterations = 0;
  bool polished = false;
};

/// Operator-splitting (ADMM) solve with Ruiz equilibration, adaptive rho and
/// active-set polishing. Deterministic for fixed inputs.
QpResult solve_qp(const QpProblem& problem, const AdmmSettings& settings,
                  const QpWarmStart* warm = nullptr);

/// Model restricted to its free variables under the given bounds.
/// Fixed variables are substituted; rows that cannot be violated within the
/// bounds are dropped.
struct ReducedQp {
  QpProblem qp;
  std::vector<int> free_vars;
  /// Reduced row -> key; keys < num_variables are bound rows of that
  /// variable, otherwise num_variables + model row index.
  std::vector<int> row_keys;
  std::vector<double> fixed_values;
  bool trivially_infeasible = false;
};

ReducedQp reduce_model(const Model& model, std::span<const double> lower,
                       std::span<const double> upper);

std::vector<double> expand_solution(const ReducedQp& reduced,
                                    const Eigen::VectorXd& x);

struct RelaxationSolution {
  RelaxStatus status = RelaxStatus::IterationLimit;
  std::vector<double> x;
  double objective = kInf;
  double primal_residual = kInf;
  double dual_residual = kInf;
  int iterations = 0;
};

/// Continuous relaxation of a linear-row model (binaries range over [0,1]).
/// Throws std::invalid_argument when the model has quadratic rows.
RelaxationSolution solve_relaxation(const Model& model,
                                    const AdmmSettings& settings = {});

}  // namespace ltlplan::solver
