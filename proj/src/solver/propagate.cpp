#include "ltlplan/solver/propagate.hpp"

#include <cmath>
#include <deque>

namespace ltlplan::solver {

namespace {

constexpr double kFeasTol = 1e-9;
constexpr int kMaxRowVisits = 25;

struct Activity {
  double min = 0.0;  // finite part
  double max = 0.0;
  int min_inf = 0;  // number of infinite contributions
  int max_inf = 0;
};

Activity activity(const LinearRow& row, const std::vector<double>& lo,
                  const std::vector<double>& hi) {
  Activity a;
  for (const auto& t : row.terms) {
    double l = lo[t.var];
    double u = hi[t.var];
    double cmin = t.coef > 0 ? t.coef * l : t.coef * u;
    double cmax = t.coef > 0 ? t.coef * u : t.coef * l;
    if (std::isinf(cmin)) {
      ++a.min_inf;
    } else {
      a.min += cmin;
    }
    if (std::isinf(cmax)) {
      ++a.max_inf;
    } else {
      a.max += cmax;
    }
  }
  return a;
}

}  // namespace

Propagator::Propagator(const Model& model) : model_(model) {
  rows_of_var_.resize(model.num_variables());
  const auto rows = model.rows();
  for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
    for (const auto& t : rows[r].terms) rows_of_var_[t.var].push_back(r);
  }
}

bool Propagator::run(std::vector<double>& lo, std::vector<double>& hi) const {
  const auto rows = model_.rows();
  const auto vars = model_.variables();
  const int nr = static_cast<int>(rows.size());
  std::vector<char> queued(nr, 1);
  std::vector<int> visits(nr, 0);
  std::deque<int> work;
  for (int r = 0; r < nr; ++r) work.push_back(r);

  auto tighten = [&](int v, double new_lo, double new_hi) -> int {
    // Returns -1 on infeasibility, 1 when a bound changed, 0 otherwise.
    bool binary = vars[v].kind == VarKind::Binary;
    bool changed = false;
    if (binary) {
      new_lo = std::ceil(new_lo - 1e-6);
      new_hi = std::floor(new_hi + 1e-6);
      if (new_lo > lo[v]) {
        lo[v] = new_lo;
        changed = true;
      }
      if (new_hi < hi[v]) {
        hi[v] = new_hi;
        changed = true;
      }
    } else {
      double range = hi[v] - lo[v];
      double sig = std::isfinite(range) ? std::max(1e-6, 1e-3 * range) : 0.0;
      if (new_lo > lo[v] + sig || (std::isinf(lo[v]) && std::isfinite(new_lo))) {
        lo[v] = new_lo - 1e-9 * (1.0 + std::abs(new_lo));
        changed = true;
      }
      if (new_hi < hi[v] - sig || (std::isinf(hi[v]) && std::isfinite(new_hi))) {
        hi[v] = new_hi + 1e-9 * (1.0 + std::abs(new_hi));
        changed = true;
      }
    }
    if (lo[v] > hi[v]) {
      double gap = lo[v] - hi[v];
      if (gap > 1e-7 * (1.0 + std::abs(lo[v]))) return -1;
      double mid = 0.5 * (lo[v] + hi[v]);
      lo[v] = hi[v] = mid;
    }
    return changed ? 1 : 0;
  };

  while (!work.empty()) {
    int r = work.front();
    work.pop_front();
    queued[r] = 0;
    if (++visits[r] > kMaxRowVisits) continue;
    const auto& row = rows[r];
    Activity a = activity(row, lo, hi);
    const double tol = kFeasTol * (1.0 + std::abs(row.rhs));
    const bool upper_side = row.sense != Sense::GreaterEqual;  // act <= rhs
    const bool lower_side = row.sense != Sense::LessEqual;     // act >= rhs
    if (upper_side && a.min_inf == 0 && a.min > row.rhs + tol) return false;
    if (lower_side && a.max_inf == 0 && a.max < row.rhs - tol) return false;

    for (const auto& t : row.terms) {
      const int v = t.var;
      const double c = t.coef;
      double new_lo = lo[v];
      double new_hi = hi[v];
      if (upper_side) {
        double cmin = c > 0 ? c * lo[v] : c * hi[v];
        bool self_inf = std::isinf(cmin);
        int others_inf = a.min_inf - (self_inf ? 1 : 0);
        if (others_inf == 0) {
          double rest = a.min - (self_inf ? 0.0 : cmin);
          double bound = (row.rhs - rest) / c;
          if (c > 0) {
            new_hi = std::min(new_hi, bound);
          } else {
            new_lo = std::max(new_lo, bound);
          }
        }
      }
      if (lower_side) {
        double cmax = c > 0 ? c * hi[v] : c * lo[v];
        bool self_inf = std::isinf(cmax);
        int others_inf = a.max_inf - (self_inf ? 1 : 0);
        if (others_inf == 0) {
          double rest = a.max - (self_inf ? 0.0 : cmax);
          double bound = (row.rhs - rest) / c;
          if (c > 0) {
            new_lo = std::max(new_lo, bound);
          } else {
            new_hi = std::min(new_hi, bound);
          }
        }
      }
      if (new_lo <= lo[v] && new_hi >= hi[v]) continue;
      int status = tighten(v, new_lo, new_hi);
      if (status < 0) return false;
      if (status > 0) {
        for (int other : rows_of_var_[v]) {
          if (!queued[other]) {
            queued[other] = 1;
            work.push_back(other);
          }
        }
        a = activity(row, lo, hi);
      }
    }
  }
  return true;
}

}  // namespace ltlplan::solver
