#pragma once

// Exhaustive 0-1 feasibility search with bound propagation. Independent of
// the solver module's propagator and branch-and-bound; used to decide
// feasibility of pure-binary encodings exactly.

#include <cmath>
#include <vector>

#include "ltlplan/solver/model_ir.hpp"

namespace ltlplan::oracle {

class BinarySearch {
 public:
  explicit BinarySearch(const solver::Model& m) : n_(m.num_variables()) {
    for (const auto& row : m.rows()) {
      Row r;
      for (const auto& t : row.terms) r.terms.push_back({t.var, t.coef});
      r.lo = row.sense == solver::Sense::LessEqual ? -solver::kInf : row.rhs;
      r.hi = row.sense == solver::Sense::GreaterEqual ? solver::kInf : row.rhs;
      rows_.push_back(std::move(r));
    }
    for (int v = 0; v < n_; ++v) {
      lo_.push_back(std::round(m.variable(v).lower));
      hi_.push_back(std::round(m.variable(v).upper));
    }
  }

  /// Pins variable v to value for the next call to feasible(); a value
  /// outside the variable's bounds makes the search infeasible.
  void pin(int v, int value) {
    if (value < lo_[v] || value > hi_[v]) conflict_ = true;
    lo_[v] = hi_[v] = value;
  }

  bool feasible() {
    nodes_ = 0;
    if (conflict_) return false;
    std::vector<double> lo = lo_;
    std::vector<double> hi = hi_;
    return search(lo, hi);
  }

  long nodes() const { return nodes_; }

 private:
  struct Row {
    std::vector<std::pair<int, double>> terms;
    double lo;
    double hi;
  };

  static constexpr double kEps = 1e-9;

  bool propagate(std::vector<double>& lo, std::vector<double>& hi) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& r : rows_) {
        double amin = 0.0;
        double amax = 0.0;
        for (auto [v, a] : r.terms) {
          amin += a > 0 ? a * lo[v] : a * hi[v];
          amax += a > 0 ? a * hi[v] : a * lo[v];
        }
        if (amin > r.hi + kEps || amax < r.lo - kEps) return false;
        for (auto [v, a] : r.terms) {
          if (lo[v] == hi[v]) continue;
          // Setting v to the value that raises the activity by |a|.
          double span = std::abs(a);
          if (amin + span > r.hi + kEps) {
            // v must take the value keeping the activity low
            double val = a > 0 ? 0.0 : 1.0;
            lo[v] = hi[v] = val;
            changed = true;
          } else if (amax - span < r.lo - kEps) {
            double val = a > 0 ? 1.0 : 0.0;
            lo[v] = hi[v] = val;
            changed = true;
          }
          if (changed) break;
        }
        if (changed) break;
      }
    }
    return true;
  }

  bool search(std::vector<double>& lo, std::vector<double>& hi) {
    ++nodes_;
    if (!propagate(lo, hi)) return false;
    int pick = -1;
    for (int v = 0; v < n_; ++v) {
      if (lo[v] < hi[v]) {
        pick = v;
        break;
      }
    }
    if (pick < 0) return true;
    for (double val : {0.0, 1.0}) {
      std::vector<double> l2 = lo;
      std::vector<double> h2 = hi;
      l2[pick] = h2[pick] = val;
      if (search(l2, h2)) return true;
    }
    return false;
  }

  int n_;
  std::vector<Row> rows_;
  std::vector<double> lo_;
  std::vector<double> hi_;
  bool conflict_ = false;
  long nodes_ = 0;
};

}  // namespace ltlplan::oracle
