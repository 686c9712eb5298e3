#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "ltlplan/model/footstep_model.hpp"
#include "ltlplan/solver/branch_and_bound.hpp"
#include "ltlplan/solver/lp_format.hpp"
#include "ltlplan/solver/propagate.hpp"
#include "ltlplan/solver/relaxation.hpp"
#include "oracles/brute_force_mip.hpp"
#include "oracles/random_instances.hpp"

using namespace ltlplan;
using namespace ltlplan::solver;

namespace {

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

double integrality(const Model& m, const std::vector<double>& x) {
  double w = 0.0;
  for (int v = 0; v < m.num_variables(); ++v) {
    if (m.variable(v).kind == VarKind::Binary) w = std::max(w, std::abs(x[v] - std::round(x[v])));
  }
  return w;
}

BnbConfig serial() {
  BnbConfig c;
  c.threads = 1;
  c.time_limit = 120.0;
  return c;
}

}  // namespace

TEST_CASE("clamped unconstrained minimum") {
  Model m;
  int x = m.add_continuous("x", 0.0, 0.5);
  m.add_objective_quad(x, x, 1.0);
  m.add_objective_linear(x, -2.0);
  m.add_objective_constant(1.0);
  m.finalize_objective();
  auto r = solve_relaxation(m);
  REQUIRE(r.status == RelaxStatus::Solved);
  CHECK(r.x[x] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(r.objective == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("tight vertex of a linear program") {
  Model m;
  int x = m.add_continuous("x", 0.0, 1.0);
  int y = m.add_continuous("y", 0.0, 1.0);
  m.add_objective_linear(x, 1.0);
  m.add_objective_linear(y, 1.0);
  m.add_row("cover", {{x, 1.0}, {y, 1.0}}, Sense::GreaterEqual, 2.0);
  m.finalize_objective();
  auto r = solve_relaxation(m);
  REQUIRE(r.status == RelaxStatus::Solved);
  CHECK(r.objective == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("infeasible relaxation is reported") {
  Model m;
  int x = m.add_continuous("x", 0.0, 1.0);
  m.add_objective_quad(x, x, 1.0);
  m.add_row("far", {{x, 1.0}}, Sense::GreaterEqual, 2.0);
  m.finalize_objective();
  CHECK(solve_relaxation(m).status == RelaxStatus::PrimalInfeasible);
}

TEST_CASE("relaxations match the dense reference on random QPs") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> size(1, 20);
  for (int t = 0; t < 100; ++t) {
    Model m = oracle::random_qp(rng, size(rng));
    auto ref = oracle::brute_force_mip(m);
    REQUIRE(ref.feasible);
    auto r = solve_relaxation(m);
    INFO("instance ", t);
    REQUIRE(r.status == RelaxStatus::Solved);
    CHECK(rel_diff(r.objective, ref.objective) <= 1e-5);
    CHECK(m.max_violation(r.x) <= 1e-6);
  }
}

TEST_CASE("both kernel backends give the same relaxation") {
  std::mt19937 rng(9);
  Model m = oracle::random_qp(rng, 15);
  AdmmSettings a;
  AdmmSettings b;
  b.backend = kernels::Backend::OpenMP;
  auto ra = solve_relaxation(m, a);
  auto rb = solve_relaxation(m, b);
  CHECK(ra.x == rb.x);
  CHECK(ra.iterations == rb.iterations);
}

TEST_CASE("branch and bound matches brute force on random mixed instances") {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> nb(3, 12);
  int feasible = 0;
  for (int t = 0; t < 30; ++t) {
    Model m = oracle::random_mip(rng, nb(rng));
    auto ref = oracle::brute_force_mip(m);
    auto r = branch_and_bound(m, serial());
    INFO("instance ", t);
    if (!ref.feasible) {
      CHECK(r.status == SolveStatus::Infeasible);
      continue;
    }
    ++feasible;
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(rel_diff(r.objective, ref.objective) <= 1e-5);
    CHECK(m.max_violation(r.x) <= 1e-6);
    CHECK(integrality(m, r.x) <= 1e-9);
    CHECK(r.worst_monotonicity <= 1e-8);
    CHECK(r.gap <= 1e-6);
  }
  CHECK(feasible >= 20);
}

TEST_CASE("fully pinned binaries reduce to a single relaxation") {
  std::mt19937 rng(5);
  Model m = oracle::random_mip(rng, 6);
  auto ref = oracle::brute_force_mip(m);
  REQUIRE(ref.feasible);
  for (int v = 0; v < m.num_variables(); ++v) {
    if (m.variable(v).kind == VarKind::Binary) m.set_bounds(v, ref.x[v], ref.x[v]);
  }
  auto r = branch_and_bound(m, serial());
  auto relax = solve_relaxation(m);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.objective == doctest::Approx(relax.objective).epsilon(1e-6));
  CHECK(r.nodes <= 1);
}

TEST_CASE("search is deterministic single-threaded and agrees across thread counts") {
  std::mt19937 rng(31);
  Model m = oracle::random_mip(rng, 12);
  auto a = branch_and_bound(m, serial());
  auto b = branch_and_bound(m, serial());
  CHECK(a.status == b.status);
  CHECK(a.x == b.x);
  CHECK(a.nodes == b.nodes);
  CHECK(a.objective == b.objective);
  CHECK(a.bound == b.bound);
  BnbConfig par = serial();
  par.threads = 4;
  auto c = branch_and_bound(m, par);
  CHECK(c.status == a.status);
  if (a.status == SolveStatus::Optimal) CHECK(rel_diff(c.objective, a.objective) <= 1e-6);
}

TEST_CASE("node limit returns the incumbent with the flag set") {
  std::mt19937 rng(12);
  Model m = oracle::random_mip(rng, 12);
  BnbConfig c = serial();
  c.node_limit = 1;
  c.dive = false;
  auto r = branch_and_bound(m, c);
  CHECK(r.node_limit_hit);
  CHECK(r.status != SolveStatus::Optimal);
}

TEST_CASE("propagation tightens and detects conflicts") {
  Model m;
  int a = m.add_binary("a");
  int b = m.add_binary("b");
  int x = m.add_continuous("x", 0.0, 10.0);
  m.add_row("pack", {{a, 1.0}, {b, 1.0}}, Sense::LessEqual, 1.0);
  m.add_row("link", {{x, 1.0}, {a, -10.0}}, Sense::LessEqual, 0.0);
  Propagator p(m);
  std::vector<double> lo{1.0, 0.0, 0.0};
  std::vector<double> hi{1.0, 1.0, 10.0};
  CHECK(p.run(lo, hi));
  CHECK(hi[b] == 0.0);
  lo = {0.0, 0.0, 2.0};
  hi = {1.0, 1.0, 10.0};
  CHECK(p.run(lo, hi));
  CHECK(lo[a] == 1.0);
  CHECK(hi[b] == 0.0);
  lo = {1.0, 1.0, 0.0};
  hi = {1.0, 1.0, 10.0};
  CHECK_FALSE(p.run(lo, hi));
}

TEST_CASE("LP files round-trip the model structure") {
  std::mt19937 rng(4);
  for (int t = 0; t < 10; ++t) {
    Model m = t % 2 ? oracle::random_qp(rng, 6) : oracle::random_mip(rng, 8);
    m.add_objective_constant(1.25);
    std::stringstream out;
    write_lp(m, out, LpProfile::Linear);
    std::stringstream in(out.str());
    Model back = read_lp(in);
    CHECK(back.same_structure(m));
    std::stringstream again;
    write_lp(back, again, LpProfile::Linear);
    CHECK(again.str() == out.str());
  }
}

TEST_CASE("empty model exports a valid file") {
  Model m;
  std::stringstream out;
  write_lp(m, out, LpProfile::Linear);
  const std::string text = out.str();
  CHECK(text.find("Subject To") != std::string::npos);
  CHECK(text.find("End") != std::string::npos);
  std::stringstream in(text);
  Model back = read_lp(in);
  CHECK(back.num_variables() == 0);
  CHECK(back.num_rows() == 0);
}

TEST_CASE("malformed LP text reports the line") {
  std::stringstream in("Minimize\n obj: x\nSubject To\n c1: x >=\nEnd\n");
  try {
    read_lp(in);
    FAIL("expected an LpFormatError");
  } catch (const LpFormatError& e) {
    CHECK(e.line() == 4);
  }
}

TEST_CASE("quadratic rows round-trip and need the quadratic profile") {
  auto s = model::load_scenario(LTLPLAN_SCENARIO_DIR "/corridor_fixed.json");
  auto p = model::build_problem(s, {model::NormRealization::Quadratic, 8});
  REQUIRE(!p.model.quadratic_rows().empty());
  std::stringstream bad;
  CHECK_THROWS_AS(write_lp(p.model, bad, LpProfile::Linear), std::invalid_argument);
  std::stringstream out;
  write_lp(p.model, out, LpProfile::Quadratic);
  std::stringstream in(out.str());
  CHECK(read_lp(in).same_structure(p.model));
}

TEST_CASE("scenario 2 export declares one binary per H, S and C entry plus LTL auxiliaries") {
  auto s = model::load_scenario(LTLPLAN_SCENARIO_DIR "/scenario2.json");
  auto p = model::build_problem(s);
  std::stringstream out;
  write_lp(p.model, out, LpProfile::Linear);
  std::istringstream lines(out.str());
  std::string line;
  bool in_binaries = false;
  int declared = 0;
  while (std::getline(lines, line)) {
    if (line == "Binaries") {
      in_binaries = true;
    } else if (line == "End") {
      in_binaries = false;
    } else if (in_binaries) {
      ++declared;
    }
  }
  const int n = s.num_steps;
  const int regions = static_cast<int>(s.regions.size());
  CHECK(n == 13);
  CHECK(declared == n * (regions + 2 * 5) + p.ltl_aux_binaries);
  CHECK(p.ltl_aux_binaries > 0);
}
