#pragma once

#include <string>
#include <vector>

#include "ltlplan/encoder/encoder.hpp"
#include "ltlplan/ltl/formula.hpp"
#include "ltlplan/model/scenario.hpp"
#include "ltlplan/solver/model_ir.hpp"

namespace ltlplan::model {

/// How each Euclidean reachability disk becomes model rows.
enum class NormRealization { Polygon, Quadratic };

struct BuildOptions {
  NormRealization norm = NormRealization::Polygon;
  /// Polygon sides; the polygon is inscribed in the disk.
  int polygon_sides = 8;
};

/// Model variable indices. Per-step vectors are indexed by step - 1.
struct FootstepVars {
  int steps = 0;
  std::vector<int> x, y, theta, s, c;
  std::vector<std::vector<int>> H;  // [region][step - 1]
  std::vector<std::vector<int>> S;  // [segment][step - 1]
  std::vector<std::vector<int>> C;
  std::vector<int> LL, RL;  // contact-ordering mode only
};

FootstepVars allocate_variables(const Scenario& s, solver::Model& model);
void build_objective(const Scenario& s, const FootstepVars& v, solver::Model& model);
void add_region_assignment(const Scenario& s, const FootstepVars& v, solver::Model& model);
void add_trig_approx(const FootstepVars& v, solver::Model& model);
void add_theta_rate_limit(const FootstepVars& v, solver::Model& model);
void add_contact_ordering(const Scenario& s, const FootstepVars& v, solver::Model& model);
void add_reachability(const Scenario& s, const FootstepVars& v, solver::Model& model,
                      const BuildOptions& options);

/// Throws encoder::EncodeError for atoms naming an unknown region or, with
/// contact ordering off, the foot atoms.
encoder::AtomBinding bind_atoms(const Scenario& s, const FootstepVars& v);

/// Circle centers for a step made by `foot`.
Point circle_center(Point p, Foot foot);

struct FootstepProblem {
  solver::Model model;
  FootstepVars vars;
  std::vector<ltl::Formula> specs;
  std::vector<std::string> warnings;
  int ltl_aux_binaries = 0;
};

/// Full assembly: variables, objective, all constraint families and the
/// encoded specifications.
FootstepProblem build_problem(const Scenario& s, const BuildOptions& options = {});

}  // namespace ltlplan::model
