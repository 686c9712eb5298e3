#pragma once

// Seeded random QP and mixed-binary instances for the solver checks.

#include <random>
#include <string>

#include "ltlplan/solver/model_ir.hpp"

namespace ltlplan::oracle {

/// Positive definite quadratic in `vars` plus a random linear term.
inline void random_convex_objective(solver::Model& m, const std::vector<int>& vars,
                                    std::mt19937& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const int n = static_cast<int>(vars.size());
  std::vector<std::vector<double>> L(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) L[i][j] = g(rng);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double pij = 0.0;
      for (int k = 0; k < n; ++k) pij += L[i][k] * L[j][k];
      if (i == j) pij += 0.1;
      // 1/2 x'Px: diagonal coefficient P_ii/2, off-diagonal P_ij
      m.add_objective_quad(vars[i], vars[j], i == j ? 0.5 * pij : pij);
    }
  }
  for (int v : vars) m.add_objective_linear(v, 3.0 * g(rng));
}

/// Feasible convex QP with n continuous variables in [-5, 5].
inline solver::Model random_qp(std::mt19937& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> slack(0.0, 1.0);
  solver::Model m;
  std::vector<int> vars;
  std::vector<double> x0;
  for (int i = 0; i < n; ++i) {
    vars.push_back(m.add_continuous("x" + std::to_string(i), -5.0, 5.0));
    x0.push_back(u(rng));
  }
  random_convex_objective(m, vars, rng);
  std::uniform_int_distribution<int> rows(1, n);
  const int nr = rows(rng);
  for (int r = 0; r < nr; ++r) {
    std::vector<solver::Term> terms;
    double act = 0.0;
    for (int i = 0; i < n; ++i) {
      double a = g(rng);
      terms.push_back({vars[i], a});
      act += a * x0[i];
    }
    int kind = r % 4;
    if (kind == 3 && r < n / 2) {
      m.add_row("e" + std::to_string(r), terms, solver::Sense::Equal, act);
    } else if (kind % 2 == 0) {
      m.add_row("l" + std::to_string(r), terms, solver::Sense::LessEqual, act + slack(rng));
    } else {
      m.add_row("g" + std::to_string(r), terms, solver::Sense::GreaterEqual, act - slack(rng));
    }
  }
  m.finalize_objective();
  return m;
}

/// Mixed instance: `nb` binaries (one sum-to-one group, indicator rows,
/// knapsack rows) and a few continuous variables with a convex objective.
inline solver::Model random_mip(std::mt19937& rng, int nb) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_int_distribution<int> nc_dist(2, 5);
  solver::Model m;
  const int nc = nc_dist(rng);
  std::vector<int> conts;
  for (int i = 0; i < nc; ++i) conts.push_back(m.add_continuous("x" + std::to_string(i), -4.0, 4.0));
  std::vector<int> bins;
  for (int i = 0; i < nb; ++i) bins.push_back(m.add_binary("z" + std::to_string(i)));
  random_convex_objective(m, conts, rng);
  for (int b : bins) m.add_objective_linear(b, 2.0 * g(rng));

  // One-hot group over the first few binaries, each selecting a box for x.
  const int gsize = std::min(nb, 3 + static_cast<int>(rng() % 2));
  std::vector<int> group(bins.begin(), bins.begin() + gsize);
  std::vector<solver::Term> sum;
  for (int b : group) sum.push_back({b, 1.0});
  m.add_row("onehot", sum, solver::Sense::Equal, 1.0);
  m.add_group(group);
  const double big = 20.0;
  for (int k = 0; k < gsize; ++k) {
    std::uniform_real_distribution<double> c(-3.0, 3.0);
    for (int i = 0; i < std::min(nc, 2); ++i) {
      double center = c(rng);
      // x_i <= center + 1 + M(1 - z) and x_i >= center - 1 - M(1 - z)
      m.add_row("box_hi_" + std::to_string(k) + "_" + std::to_string(i),
                {{conts[i], 1.0}, {group[k], big}}, solver::Sense::LessEqual, center + 1.0 + big);
      m.add_row("box_lo_" + std::to_string(k) + "_" + std::to_string(i),
                {{conts[i], 1.0}, {group[k], -big}}, solver::Sense::GreaterEqual, center - 1.0 - big);
    }
  }
  // Indicator rows on the remaining binaries.
  for (int k = gsize; k < nb; ++k) {
    std::vector<solver::Term> terms;
    for (int c : conts) terms.push_back({c, g(rng)});
    terms.push_back({bins[k], big});
    m.add_row("ind_" + std::to_string(k), terms, solver::Sense::LessEqual, 0.5 * g(rng) + big);
  }
  // Knapsack and cover rows over all binaries.
  std::uniform_real_distribution<double> w(0.5, 2.0);
  std::vector<solver::Term> knap;
  double total = 0.0;
  for (int b : bins) {
    double wb = w(rng);
    knap.push_back({b, wb});
    total += wb;
  }
  m.add_row("knap", knap, solver::Sense::LessEqual, 0.6 * total);
  std::vector<solver::Term> cover;
  for (int k = gsize; k < nb; ++k) cover.push_back({bins[k], 1.0});
  if (!cover.empty()) m.add_row("cover", cover, solver::Sense::GreaterEqual, 1.0);
  m.finalize_objective();
  return m;
}

}  // namespace ltlplan::oracle
