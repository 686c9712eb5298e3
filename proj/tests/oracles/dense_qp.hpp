#pragma once

// Dense dual active-set (Goldfarb-Idnani) QP solver used only as a test
// oracle. Shares no code with the ADMM relaxation solver.
//
//   minimize 1/2 x'Px + q'x   s.t.  E x = e,  G x >= g
//
// P must be positive definite. Projections are recomputed from scratch each
// step, which is fine for the n <= 30 instances the tests use.

#include <Eigen/Dense>
#include <limits>
#include <optional>
#include <vector>

namespace ltlplan::oracle {

struct DenseQpResult {
  bool feasible = false;
  Eigen::VectorXd x;
  double objective = std::numeric_limits<double>::infinity();
};

class DenseQp {
 public:
  DenseQp(Eigen::MatrixXd P, Eigen::VectorXd q) : P_(std::move(P)), q_(std::move(q)) {}

  void add_equality(const Eigen::VectorXd& a, double b) { eq_.push_back({a, b}); }
  void add_geq(const Eigen::VectorXd& a, double b) { in_.push_back({a, b}); }
  void add_leq(const Eigen::VectorXd& a, double b) { in_.push_back({-a, -b}); }
  /// l <= a'x <= u with infinite sides skipped.
  void add_range(const Eigen::VectorXd& a, double l, double u) {
    if (l == u) {
      add_equality(a, l);
      return;
    }
    if (std::isfinite(l)) add_geq(a, l);
    if (std::isfinite(u)) add_leq(a, u);
  }

  DenseQpResult solve() const {
    const int n = static_cast<int>(q_.size());
    const Eigen::MatrixXd pinv = P_.llt().solve(Eigen::MatrixXd::Identity(n, n));
    Eigen::VectorXd x = -pinv * q_;

    // Active constraint normals (as columns) and multipliers.
    std::vector<Eigen::VectorXd> normals;
    std::vector<double> mult;
    std::vector<int> which;  // -1 for equalities, else inequality index
    std::vector<char> active(in_.size(), 0);

    auto directions = [&](const Eigen::VectorXd& np, Eigen::VectorXd& z,
                          Eigen::VectorXd& r) {
      const int k = static_cast<int>(normals.size());
      if (k == 0) {
        z = pinv * np;
        r.resize(0);
        return;
      }
      Eigen::MatrixXd N(n, k);
      for (int i = 0; i < k; ++i) N.col(i) = normals[i];
      Eigen::MatrixXd M = N.transpose() * pinv * N;
      r = M.ldlt().solve(N.transpose() * (pinv * np));
      z = pinv * (np - N * r);
    };

    // Adds constraint (np, b) with np'x >= b; equality when `equality`.
    // Returns false when the problem is infeasible.
    auto add = [&](Eigen::VectorXd np, double b, int tag, bool equality) {
      double s = np.dot(x) - b;
      if (equality && s > 0) {
        np = -np;
        b = -b;
        s = -s;
      }
      double up = 0.0;  // multiplier of the constraint being added
      for (int guard = 0; guard < 10000; ++guard) {
        Eigen::VectorXd z;
        Eigen::VectorXd r;
        directions(np, z, r);
        double t1 = kInf;
        int drop = -1;
        for (int j = 0; j < static_cast<int>(normals.size()); ++j) {
          if (which[j] < 0) continue;
          if (r[j] > 1e-12 && mult[j] / r[j] < t1) {
            t1 = mult[j] / r[j];
            drop = j;
          }
        }
        double zn = z.dot(np);
        double t2 = (z.norm() > 1e-10 && zn > 1e-14) ? -s / zn : kInf;
        if (equality && z.norm() <= 1e-10) {
          // Dependent on active equalities/inequalities.
          if (std::abs(s) <= 1e-9) return true;
        }
        double t = std::min(t1, t2);
        if (t == kInf) return false;
        if (t2 == kInf) {
          for (int j = 0; j < static_cast<int>(mult.size()); ++j) mult[j] -= t * r[j];
          up += t;
          remove(normals, mult, which, active, drop);
          continue;
        }
        x += t * z;
        for (int j = 0; j < static_cast<int>(mult.size()); ++j) mult[j] -= t * r[j];
        up += t;
        if (t == t2) {
          normals.push_back(np);
          mult.push_back(up);
          which.push_back(tag);
          if (tag >= 0) active[tag] = 1;
          return true;
        }
        remove(normals, mult, which, active, drop);
        s = np.dot(x) - b;
      }
      return false;
    };

    DenseQpResult out;
    for (const auto& [a, b] : eq_) {
      if (!add(a, b, -1, true)) return out;
    }
    for (int iter = 0; iter < 10000; ++iter) {
      int worst = -1;
      double worst_s = 0.0;
      for (int i = 0; i < static_cast<int>(in_.size()); ++i) {
        if (active[i]) continue;
        double scale = std::max(1.0, in_[i].first.lpNorm<Eigen::Infinity>());
        double s = (in_[i].first.dot(x) - in_[i].second) / scale;
        if (s < worst_s - 1e-11) {
          worst_s = s;
          worst = i;
        }
      }
      if (worst < 0) {
        out.feasible = true;
        out.x = x;
        out.objective = 0.5 * x.dot(P_ * x) + q_.dot(x);
        return out;
      }
      if (!add(in_[worst].first, in_[worst].second, worst, false)) return out;
    }
    return out;
  }

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  static void remove(std::vector<Eigen::VectorXd>& normals,
                     std::vector<double>& mult, std::vector<int>& which,
                     std::vector<char>& active, int j) {
    if (which[j] >= 0) active[which[j]] = 0;
    normals.erase(normals.begin() + j);
    mult.erase(mult.begin() + j);
    which.erase(which.begin() + j);
  }

  Eigen::MatrixXd P_;
  Eigen::VectorXd q_;
  std::vector<std::pair<Eigen::VectorXd, double>> eq_;
  std::vector<std::pair<Eigen::VectorXd, double>> in_;
};

}  // namespace ltlplan::oracle
