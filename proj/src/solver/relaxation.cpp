#include "ltlplan/solver/relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ltlplan::solver {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using SpMatRow = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Vec = Eigen::VectorXd;

constexpr double kBig = 1e20;

std::span<const double> view(const Vec& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}
std::span<double> view(Vec& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

double inf_norm(const Vec& v) {
  return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
}

Vec col_inf_norms(const SpMat& m) {
  Vec out = Vec::Zero(m.cols());
  for (int j = 0; j < m.outerSize(); ++j) {
    for (SpMat::InnerIterator it(m, j); it; ++it) {
      out[j] = std::max(out[j], std::abs(it.value()));
    }
  }
  return out;
}

Vec row_inf_norms(const SpMat& m) {
  Vec out = Vec::Zero(m.rows());
  for (int j = 0; j < m.outerSize(); ++j) {
    for (SpMat::InnerIterator it(m, j); it; ++it) {
      out[it.row()] = std::max(out[it.row()], std::abs(it.value()));
    }
  }
  return out;
}

double scale_factor(double norm) {
  if (norm < 1e-4) return 1.0;
  return std::clamp(1.0 / std::sqrt(norm), 1e-4, 1e4);
}

struct Scaling {
  Vec D;
  Vec Dinv;
  Vec E;
  Vec Einv;
  double c = 1.0;
  double cinv = 1.0;
};

// Modified Ruiz equilibration of the KKT matrix plus cost scaling.
Scaling equilibrate(SpMat& P, Vec& q, SpMat& A, int iterations) {
  const int n = static_cast<int>(q.size());
  const int m = static_cast<int>(A.rows());
  Scaling s;
  s.D = Vec::Ones(n);
  s.E = Vec::Ones(m);
  for (int it = 0; it < iterations; ++it) {
    Vec cn = col_inf_norms(P).cwiseMax(col_inf_norms(A));
    Vec rn = row_inf_norms(A);
    Vec d(n);
    Vec e(m);
    for (int j = 0; j < n; ++j) d[j] = scale_factor(cn[j]);
    for (int i = 0; i < m; ++i) e[i] = scale_factor(rn[i]);
    P = d.asDiagonal() * P * d.asDiagonal();
    A = e.asDiagonal() * A * d.asDiagonal();
    q = d.cwiseProduct(q);
    s.D = s.D.cwiseProduct(d);
    s.E = s.E.cwiseProduct(e);

    double mean_p = n ? col_inf_norms(P).mean() : 0.0;
    double big = std::max(mean_p, inf_norm(q));
    double gamma = big < 1e-4 ? 1.0 : std::clamp(1.0 / big, 1e-4, 1e4);
    P *= gamma;
    q *= gamma;
    s.c *= gamma;
  }
  s.Dinv = s.D.cwiseInverse();
  s.Einv = s.E.cwiseInverse();
  s.cinv = 1.0 / s.c;
  return s;
}

class AdmmSolve {
 public:
  AdmmSolve(const QpProblem& prob, const AdmmSettings& settings)
      : prob_(prob), set_(settings) {
    n_ = prob.num_variables();
    m_ = prob.num_rows();
    P_ = prob.P;
    q_ = prob.q;
    A_ = prob.A;
    sc_ = equilibrate(P_, q_, A_, set_.scaling_iterations);
    At_ = A_.transpose();
    Ar_ = A_;
    l_.resize(m_);
    u_.resize(m_);
    for (int i = 0; i < m_; ++i) {
      double lo = prob.lower[i];
      double hi = prob.upper[i];
      l_[i] = lo <= -kBig ? -kInf : sc_.E[i] * lo;
      u_[i] = hi >= kBig ? kInf : sc_.E[i] * hi;
    }
    rho_ = set_.rho;
  }

  QpResult run(const QpWarmStart* warm) {
    x_ = Vec::Zero(n_);
    z_ = Vec::Zero(m_);
    y_ = Vec::Zero(m_);
    if (warm && warm->x.size() == n_) {
      x_ = sc_.Dinv.cwiseProduct(warm->x);
      if (warm->y.size() == m_) y_ = sc_.c * sc_.Einv.cwiseProduct(warm->y);
    }
    z_ = (A_ * x_).cwiseMax(l_).cwiseMin(u_);
    build_rho_vector();
    factor(true);

    QpResult result;
    double polish_threshold = set_.eps_polish;
    bool refining = false;
    double refine = 0.1;
    int refine_start = 0;
    const int refine_budget = std::max(500, set_.max_iter / 10);
    Vec best_x;
    Vec best_y;
    Residuals best_r;
    int best_k = 0;
    Vec zt(m_);
    Vec y_prev(m_);
    Vec x_prev(n_);
    for (int k = 1; k <= set_.max_iter; ++k) {
      const bool check = k % set_.check_interval == 0 || k == set_.max_iter;
      if (check) {
        y_prev = y_;
        x_prev = x_;
      }
      Vec rhs = set_.sigma * x_ - q_ + At_ * (rho_vec_.cwiseProduct(z_) - y_);
      Vec xt = ldlt_.solve(rhs);
      zt = A_ * xt;
      x_ = set_.alpha * xt + (1.0 - set_.alpha) * x_;
      kernels::project_and_update_dual(set_.backend, view(z_), view(y_),
                                       view(zt), view(rho_vec_), view(l_),
                                       view(u_), set_.alpha);
      if (!check) continue;

      Residuals r = residuals(x_, z_, y_);
      result.iterations = k;
      if (r.converged(set_.eps_abs, set_.eps_rel)) {
        if (!set_.polish) return finish(RelaxStatus::Solved, x_, y_, r, k, false);
        // Polish failed so far: iterate on toward a tighter residual for a
        // better active-set guess, retrying after each tenfold improvement.
        if (!refining || r.converged(set_.eps_abs * refine, set_.eps_rel * refine)) {
          if (auto polished = polish(k)) return *polished;
          if (refining) refine *= 0.1;
        }
        if (!refining) {
          refining = true;
          refine_start = k;
        }
        best_x = x_;
        best_y = y_;
        best_r = r;
        best_k = k;
        if (refine < 1e-3 || k - refine_start >= refine_budget) {
          return finish(RelaxStatus::Solved, best_x, best_y, best_r, best_k, false);
        }
        if (k % set_.adaptive_rho_interval == 0) adapt_rho(r);
        continue;
      }
      if (refining) {
        if (k - refine_start >= refine_budget) {
          return finish(RelaxStatus::Solved, best_x, best_y, best_r, best_k, false);
        }
        if (k % set_.adaptive_rho_interval == 0) adapt_rho(r);
        continue;
      }
      if (set_.polish && r.converged(polish_threshold, polish_threshold)) {
        if (auto polished = polish(k)) return *polished;
        polish_threshold = std::max(polish_threshold * 0.1, set_.eps_abs);
      }
      if (primal_infeasible(y_ - y_prev)) {
        QpResult out = finish(RelaxStatus::PrimalInfeasible, x_, y_, r, k,
                              false);
        out.objective = kInf;
        return out;
      }
      if (dual_infeasible(x_ - x_prev)) {
        QpResult out = finish(RelaxStatus::DualInfeasible, x_, y_, r, k,
                              false);
        out.objective = -kInf;
        return out;
      }
      if (k % set_.adaptive_rho_interval == 0) adapt_rho(r);
    }
    if (refining) return finish(RelaxStatus::Solved, best_x, best_y, best_r, best_k, false);
    Residuals r = residuals(x_, z_, y_);
    if (set_.polish) {
      if (auto polished = polish(set_.max_iter)) return *polished;
    }
    return finish(RelaxStatus::IterationLimit, x_, y_, r, set_.max_iter,
                  false);
  }

 private:
  struct Residuals {
    double prim = 0.0;
    double prim_scale = 0.0;
    double dual = 0.0;
    double dual_scale = 0.0;
    // scaled-space norms for rho adaptation
    double prim_s = 0.0;
    double prim_s_scale = 0.0;
    double dual_s = 0.0;
    double dual_s_scale = 0.0;

    bool converged(double eps_abs, double eps_rel) const {
      return prim <= eps_abs + eps_rel * prim_scale &&
             dual <= eps_abs + eps_rel * dual_scale;
    }
  };

  Residuals residuals(const Vec& x, const Vec& z, const Vec& y) const {
    auto b = set_.backend;
    Residuals r;
    Vec ax = A_ * x;
    r.prim = kernels::weighted_diff_inf_norm(b, view(ax), view(z),
                                             view(sc_.Einv));
    r.prim_scale = std::max(kernels::weighted_inf_norm(b, view(ax),
                                                       view(sc_.Einv)),
                            kernels::weighted_inf_norm(b, view(z),
                                                       view(sc_.Einv)));
    Vec px = P_ * x;
    Vec aty = At_ * y;
    Vec grad = px + q_ + aty;
    r.dual = sc_.cinv * kernels::weighted_inf_norm(b, view(grad),
                                                   view(sc_.Dinv));
    r.dual_scale =
        sc_.cinv * std::max({kernels::weighted_inf_norm(b, view(px),
                                                        view(sc_.Dinv)),
                             kernels::weighted_inf_norm(b, view(aty),
                                                        view(sc_.Dinv)),
                             kernels::weighted_inf_norm(b, view(q_),
                                                        view(sc_.Dinv))});
    r.prim_s = kernels::weighted_diff_inf_norm(b, view(ax), view(z), {});
    r.prim_s_scale = std::max(inf_norm(ax), inf_norm(z));
    r.dual_s = inf_norm(grad);
    r.dual_s_scale = std::max({inf_norm(px), inf_norm(aty), inf_norm(q_)});
    return r;
  }

  void build_rho_vector() {
    rho_vec_.resize(m_);
    for (int i = 0; i < m_; ++i) {
      bool lo_inf = std::isinf(l_[i]);
      bool hi_inf = std::isinf(u_[i]);
      if (lo_inf && hi_inf) {
        rho_vec_[i] = 1e-6;
      } else if (prob_.lower[i] == prob_.upper[i]) {
        rho_vec_[i] = 1e3 * rho_;
      } else {
        rho_vec_[i] = rho_;
      }
    }
  }

  void factor(bool analyze) {
    SpMat k = P_ + At_ * rho_vec_.asDiagonal() * A_;
    SpMat ident(n_, n_);
    ident.setIdentity();
    k += set_.sigma * ident;
    if (analyze) ldlt_.analyzePattern(k);
    ldlt_.factorize(k);
  }

  void adapt_rho(const Residuals& r) {
    double pn = r.prim_s / std::max(r.prim_s_scale, 1e-10);
    double dn = r.dual_s / std::max(r.dual_s_scale, 1e-10);
    if (pn <= 0.0 || dn <= 0.0) return;
    double proposed = std::clamp(rho_ * std::sqrt(pn / dn), 1e-6, 1e6);
    if (proposed > 5.0 * rho_ || proposed < 0.2 * rho_) {
      rho_ = proposed;
      build_rho_vector();
      factor(false);
    }
  }

  bool primal_infeasible(const Vec& dy_scaled) const {
    Vec dy = sc_.E.cwiseProduct(dy_scaled);
    double norm = inf_norm(dy);
    if (norm < 1e-12) return false;
    double eps = set_.eps_infeasible;
    Vec atdy = sc_.Dinv.cwiseProduct(At_ * dy_scaled);
    if (inf_norm(atdy) > eps * norm) return false;
    double support = 0.0;
    for (int i = 0; i < m_; ++i) {
      double d = dy[i];
      if (d > 0.0) {
        if (prob_.upper[i] >= kBig) {
          if (d > eps * norm) return false;
          continue;
        }
        support += prob_.upper[i] * d;
      } else if (d < 0.0) {
        if (prob_.lower[i] <= -kBig) {
          if (-d > eps * norm) return false;
          continue;
        }
        support += prob_.lower[i] * d;
      }
    }
    return support < -eps * norm;
  }

  bool dual_infeasible(const Vec& dx_scaled) const {
    Vec dx = sc_.D.cwiseProduct(dx_scaled);
    double norm = inf_norm(dx);
    if (norm < 1e-12) return false;
    double eps = set_.eps_infeasible;
    Vec pdx = sc_.cinv * sc_.Dinv.cwiseProduct(P_ * dx_scaled);
    if (inf_norm(pdx) > eps * norm) return false;
    double qdx = sc_.cinv * q_.dot(dx_scaled);
    if (qdx > -eps * norm) return false;
    Vec adx = sc_.Einv.cwiseProduct(A_ * dx_scaled);
    for (int i = 0; i < m_; ++i) {
      bool lo_inf = prob_.lower[i] <= -kBig;
      bool hi_inf = prob_.upper[i] >= kBig;
      if (adx[i] > eps * norm && !hi_inf) return false;
      if (adx[i] < -eps * norm && !lo_inf) return false;
    }
    return true;
  }

  std::optional<QpResult> polish(int iterations) {
    // side: 0 inactive, -1 lower, +1 upper, 2 equality
    std::vector<int> side(m_, 0);
    for (int i = 0; i < m_; ++i) {
      if (prob_.lower[i] == prob_.upper[i]) {
        side[i] = 2;
      } else if (z_[i] - l_[i] < -y_[i]) {
        side[i] = -1;
      } else if (u_[i] - z_[i] < y_[i]) {
        side[i] = 1;
      }
    }
    // Primal-dual active-set refinement starting from the ADMM guess.
    for (int round = 0; round < 20; ++round) {
      auto solved = solve_active(side);
      if (!solved) return std::nullopt;
      auto& [x, y] = *solved;
      Vec ax = A_ * x;
      Vec y_un = sc_.cinv * sc_.E.cwiseProduct(y);
      double ytol = set_.eps_abs + set_.eps_rel * std::max(1.0, inf_norm(y_un));
      bool changed = false;
      for (int i = 0; i < m_; ++i) {
        if (side[i] != 0) continue;
        double slack_tol = 1e-9 * (1.0 + std::abs(ax[i]));
        if (ax[i] < l_[i] - slack_tol) {
          side[i] = -1;
          changed = true;
        } else if (ax[i] > u_[i] + slack_tol) {
          side[i] = 1;
          changed = true;
        }
      }
      if (!changed) {
        // Release the row whose multiplier has the worst sign.
        int worst = -1;
        double worst_v = ytol;
        for (int i = 0; i < m_; ++i) {
          double v = side[i] == -1 ? y_un[i] : side[i] == 1 ? -y_un[i] : 0.0;
          if (v > worst_v) {
            worst_v = v;
            worst = i;
          }
        }
        if (worst >= 0) {
          // Early rounds release all of them at once.
          for (int i = 0; i < m_ && round < 3; ++i) {
            double v = side[i] == -1 ? y_un[i] : side[i] == 1 ? -y_un[i] : 0.0;
            if (v > ytol) side[i] = 0;
          }
          side[worst] = 0;
          changed = true;
        }
      }
      if (changed) continue;
      Vec z = ax.cwiseMax(l_).cwiseMin(u_);
      Residuals res = residuals(x, z, y);
      if (!res.converged(set_.eps_abs, set_.eps_rel)) return std::nullopt;
      return finish(RelaxStatus::Solved, x, y, res, iterations, true);
    }
    return std::nullopt;
  }

  std::optional<std::pair<Vec, Vec>> solve_active(const std::vector<int>& side) const {
    std::vector<int> active;
    std::vector<double> target;
    for (int i = 0; i < m_; ++i) {
      if (side[i] == 0) continue;
      active.push_back(i);
      target.push_back(side[i] == 1 ? u_[i] : l_[i]);
    }
    const int na = static_cast<int>(active.size());
    const double delta = 1e-7;
    std::vector<Eigen::Triplet<double>> trip;
    for (int j = 0; j < P_.outerSize(); ++j) {
      for (SpMat::InnerIterator it(P_, j); it; ++it) {
        trip.emplace_back(it.row(), it.col(), it.value());
      }
    }
    for (int r = 0; r < na; ++r) {
      for (SpMatRow::InnerIterator it(Ar_, active[r]); it; ++it) {
        trip.emplace_back(n_ + r, it.col(), it.value());
        trip.emplace_back(it.col(), n_ + r, it.value());
      }
    }
    SpMat kkt0(n_ + na, n_ + na);
    kkt0.setFromTriplets(trip.begin(), trip.end());
    for (int j = 0; j < n_; ++j) trip.emplace_back(j, j, delta);
    for (int r = 0; r < na; ++r) trip.emplace_back(n_ + r, n_ + r, -delta);
    SpMat kkt(n_ + na, n_ + na);
    kkt.setFromTriplets(trip.begin(), trip.end());

    Eigen::SimplicialLDLT<SpMat> solver(kkt);
    if (solver.info() != Eigen::Success) return std::nullopt;
    Vec rhs(n_ + na);
    rhs.head(n_) = -q_;
    for (int r = 0; r < na; ++r) rhs[n_ + r] = target[r];
    Vec sol = solver.solve(rhs);
    for (int it = 0; it < 5; ++it) {
      Vec res = rhs - kkt0 * sol;
      if (inf_norm(res) < 1e-14) break;
      sol += solver.solve(res);
    }
    if (!sol.allFinite()) return std::nullopt;
    Vec x = sol.head(n_);
    Vec y = Vec::Zero(m_);
    for (int r = 0; r < na; ++r) y[active[r]] = sol[n_ + r];
    return std::make_pair(std::move(x), std::move(y));
  }

  QpResult finish(RelaxStatus status, const Vec& x, const Vec& y,
                  const Residuals& r, int iterations, bool polished) const {
    QpResult out;
    out.status = status;
    out.x = sc_.D.cwiseProduct(x);
    out.y = sc_.cinv * sc_.E.cwiseProduct(y);
    out.primal_residual = r.prim;
    out.dual_residual = r.dual;
    out.iterations = iterations;
    out.polished = polished;
    out.objective = 0.5 * out.x.dot(prob_.P * out.x) + prob_.q.dot(out.x) +
                    prob_.constant;
    return out;
  }

  const QpProblem& prob_;
  const AdmmSettings& set_;
  int n_ = 0;
  int m_ = 0;
  SpMat P_;
  Vec q_;
  SpMat A_;
  SpMat At_;
  SpMatRow Ar_;
  Vec l_;
  Vec u_;
  Scaling sc_;
  double rho_ = 0.1;
  Vec rho_vec_;
  Eigen::SimplicialLDLT<SpMat> ldlt_;
  Vec x_;
  Vec z_;
  Vec y_;
};

}  // namespace

const char* to_string(RelaxStatus s) {
  switch (s) {
    case RelaxStatus::Solved: return "solved";
    case RelaxStatus::PrimalInfeasible: return "primal_infeasible";
    case RelaxStatus::DualInfeasible: return "dual_infeasible";
    case RelaxStatus::IterationLimit: return "iteration_limit";
  }
  return "?";
}

QpResult solve_qp(const QpProblem& problem, const AdmmSettings& settings,
                  const QpWarmStart* warm) {
  const int n = problem.num_variables();
  const int m = problem.num_rows();
  if (problem.P.rows() != n || problem.P.cols() != n || problem.A.cols() != n ||
      problem.A.rows() != m || problem.upper.size() != m) {
    throw std::invalid_argument("inconsistent QP dimensions");
  }
  for (int i = 0; i < m; ++i) {
    if (problem.lower[i] > problem.upper[i]) {
      QpResult out;
      out.status = RelaxStatus::PrimalInfeasible;
      out.x = Vec::Zero(n);
      out.y = Vec::Zero(m);
      return out;
    }
  }
  if (n == 0) {
    QpResult out;
    out.status = RelaxStatus::Solved;
    out.x = Vec::Zero(0);
    out.y = Vec::Zero(m);
    out.objective = problem.constant;
    out.primal_residual = 0.0;
    out.dual_residual = 0.0;
    for (int i = 0; i < m; ++i) {
      double v = std::max(problem.lower[i], -problem.upper[i]);
      out.primal_residual = std::max(out.primal_residual, v);
    }
    if (out.primal_residual > settings.eps_abs) {
      out.status = RelaxStatus::PrimalInfeasible;
    }
    return out;
  }
  AdmmSolve solve(problem, settings);
  return solve.run(warm);
}

ReducedQp reduce_model(const Model& model, std::span<const double> lower,
                       std::span<const double> upper) {
  const int nv = model.num_variables();
  ReducedQp out;
  out.fixed_values.assign(nv, 0.0);
  std::vector<int> local(nv, -1);
  for (int v = 0; v < nv; ++v) {
    if (lower[v] > upper[v] + 1e-9) {
      out.trivially_infeasible = true;
    }
    if (upper[v] - lower[v] <= 1e-12) {
      out.fixed_values[v] = 0.5 * (lower[v] + upper[v]);
    } else {
      local[v] = static_cast<int>(out.free_vars.size());
      out.free_vars.push_back(v);
    }
  }
  const int n = static_cast<int>(out.free_vars.size());

  // Objective restricted to free variables.
  const auto& obj = model.objective();
  Vec q = Vec::Zero(n);
  double constant = obj.constant;
  std::vector<Eigen::Triplet<double>> ptrip;
  for (const auto& t : obj.linear) {
    if (local[t.var] >= 0) {
      q[local[t.var]] += t.coef;
    } else {
      constant += t.coef * out.fixed_values[t.var];
    }
  }
  for (const auto& t : obj.quad) {
    int a = local[t.i];
    int b = local[t.j];
    if (a >= 0 && b >= 0) {
      if (a == b) {
        ptrip.emplace_back(a, a, 2.0 * t.coef);
      } else {
        ptrip.emplace_back(a, b, t.coef);
        ptrip.emplace_back(b, a, t.coef);
      }
    } else if (a >= 0) {
      q[a] += t.coef * out.fixed_values[t.j];
    } else if (b >= 0) {
      q[b] += t.coef * out.fixed_values[t.i];
    } else {
      constant += t.coef * out.fixed_values[t.i] * out.fixed_values[t.j];
    }
  }

  std::vector<Eigen::Triplet<double>> atrip;
  std::vector<double> lo;
  std::vector<double> hi;
  int row = 0;
  for (int k = 0; k < n; ++k) {
    int v = out.free_vars[k];
    atrip.emplace_back(row, k, 1.0);
    lo.push_back(std::isinf(lower[v]) ? -kBig : lower[v]);
    hi.push_back(std::isinf(upper[v]) ? kBig : upper[v]);
    out.row_keys.push_back(v);
    ++row;
  }
  const auto rows = model.rows();
  for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
    const auto& lr = rows[r];
    double shift = 0.0;
    double amin = 0.0;
    double amax = 0.0;
    int nfree = 0;
    for (const auto& t : lr.terms) {
      if (local[t.var] < 0) {
        shift += t.coef * out.fixed_values[t.var];
      } else {
        ++nfree;
        double a = t.coef * lower[t.var];
        double b = t.coef * upper[t.var];
        amin += std::min(a, b);
        amax += std::max(a, b);
      }
    }
    double rhs = lr.rhs - shift;
    const double tol = 1e-9 * std::max(1.0, std::abs(lr.rhs));
    if (nfree == 0) {
      if (row_violation({"", {}, lr.sense, rhs}, 0.0) > tol) {
        out.trivially_infeasible = true;
      }
      continue;
    }
    bool redundant = false;
    switch (lr.sense) {
      case Sense::LessEqual:
        redundant = amax <= rhs;
        break;
      case Sense::GreaterEqual:
        redundant = amin >= rhs;
        break;
      case Sense::Equal:
        redundant = false;
        break;
    }
    if (redundant) continue;
    for (const auto& t : lr.terms) {
      if (local[t.var] >= 0) atrip.emplace_back(row, local[t.var], t.coef);
    }
    lo.push_back(lr.sense == Sense::LessEqual ? -kBig : rhs);
    hi.push_back(lr.sense == Sense::GreaterEqual ? kBig : rhs);
    out.row_keys.push_back(nv + r);
    ++row;
  }

  out.qp.P.resize(n, n);
  out.qp.P.setFromTriplets(ptrip.begin(), ptrip.end());
  out.qp.q = q;
  out.qp.constant = constant;
  out.qp.A.resize(row, n);
  out.qp.A.setFromTriplets(atrip.begin(), atrip.end());
  out.qp.lower = Eigen::Map<Vec>(lo.data(), static_cast<int>(lo.size()));
  out.qp.upper = Eigen::Map<Vec>(hi.data(), static_cast<int>(hi.size()));
  return out;
}

std::vector<double> expand_solution(const ReducedQp& reduced,
                                    const Eigen::VectorXd& x) {
  std::vector<double> full = reduced.fixed_values;
  for (std::size_t k = 0; k < reduced.free_vars.size(); ++k) {
    full[reduced.free_vars[k]] = x[static_cast<int>(k)];
  }
  return full;
}

RelaxationSolution solve_relaxation(const Model& model,
                                    const AdmmSettings& settings) {
  if (!model.quadratic_rows().empty()) {
    throw std::invalid_argument(
        "quadratic rows are not supported by the built-in relaxation; "
        "build the model with the polygonal norm realization");
  }
  std::vector<double> lo;
  std::vector<double> hi;
  for (const auto& v : model.variables()) {
    lo.push_back(v.lower);
    hi.push_back(v.upper);
  }
  ReducedQp reduced = reduce_model(model, lo, hi);
  RelaxationSolution out;
  if (reduced.trivially_infeasible) {
    out.status = RelaxStatus::PrimalInfeasible;
    out.x = reduced.fixed_values;
    return out;
  }
  QpResult r = solve_qp(reduced.qp, settings);
  out.status = r.status;
  out.x = expand_solution(reduced, r.x);
  out.objective = r.objective;
  out.primal_residual = r.primal_residual;
  out.dual_residual = r.dual_residual;
  out.iterations = r.iterations;
  return out;
}

}  // namespace ltlplan::solver
