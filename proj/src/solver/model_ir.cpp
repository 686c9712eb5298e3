#include "ltlplan/solver/model_ir.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ltlplan::solver {

AffineExpr& AffineExpr::add(const AffineExpr& other, double scale) {
  for (const auto& t : other.terms) terms.push_back({t.var, scale * t.coef});
  constant += scale * other.constant;
  return *this;
}

std::vector<Term> canonical_terms(std::vector<Term> terms) {
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term& a, const Term& b) { return a.var < b.var; });
  std::vector<Term> out;
  for (const auto& t : terms) {
    if (!out.empty() && out.back().var == t.var) {
      out.back().coef += t.coef;
    } else {
      out.push_back(t);
    }
  }
  std::erase_if(out, [](const Term& t) { return t.coef == 0.0; });
  return out;
}

std::vector<QuadTerm> canonical_quad(std::vector<QuadTerm> terms) {
  for (auto& t : terms) {
    if (t.i > t.j) std::swap(t.i, t.j);
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const QuadTerm& a, const QuadTerm& b) {
                     return a.i != b.i ? a.i < b.i : a.j < b.j;
                   });
  std::vector<QuadTerm> out;
  for (const auto& t : terms) {
    if (!out.empty() && out.back().i == t.i && out.back().j == t.j) {
      out.back().coef += t.coef;
    } else {
      out.push_back(t);
    }
  }
  std::erase_if(out, [](const QuadTerm& t) { return t.coef == 0.0; });
  return out;
}

int Model::add_variable(std::string name, VarKind kind, double lower,
                        double upper) {
  if (by_name_.count(name)) {
    throw std::invalid_argument("duplicate variable name '" + name + "'");
  }
  int idx = num_variables();
  by_name_.emplace(name, idx);
  vars_.push_back({std::move(name), kind, lower, upper});
  return idx;
}

int Model::add_row(std::string name, std::vector<Term> terms, Sense sense,
                   double rhs) {
  for (const auto& t : terms) {
    if (t.var < 0 || t.var >= num_variables()) {
      throw std::out_of_range("row '" + name + "' references variable " +
                              std::to_string(t.var));
    }
  }
  rows_.push_back({std::move(name), canonical_terms(std::move(terms)), sense,
                   rhs});
  return num_rows() - 1;
}

int Model::add_row(std::string name, const AffineExpr& expr, Sense sense,
                   double rhs) {
  return add_row(std::move(name), expr.terms, sense, rhs - expr.constant);
}

int Model::add_quadratic_row(QuadraticRow row) {
  row.quad = canonical_quad(std::move(row.quad));
  row.linear = canonical_terms(std::move(row.linear));
  qrows_.push_back(std::move(row));
  return static_cast<int>(qrows_.size()) - 1;
}

void Model::add_group(std::vector<int> members) {
  for (int m : members) {
    if (variable(m).kind != VarKind::Binary) {
      throw std::invalid_argument("group member '" + variable(m).name +
                                  "' is not binary");
    }
  }
  groups_.push_back(std::move(members));
}

void Model::set_bounds(int var, double lower, double upper) {
  vars_.at(var).lower = lower;
  vars_.at(var).upper = upper;
}

void Model::set_objective(Objective obj) {
  objective_ = std::move(obj);
  finalize_objective();
}

void Model::add_objective_quad(int i, int j, double coef) {
  objective_.quad.push_back({std::min(i, j), std::max(i, j), coef});
}

void Model::add_objective_linear(int var, double coef) {
  objective_.linear.push_back({var, coef});
}

void Model::finalize_objective() {
  objective_.quad = canonical_quad(std::move(objective_.quad));
  objective_.linear = canonical_terms(std::move(objective_.linear));
}

std::optional<int> Model::find_variable(std::string_view name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

int Model::num_binaries() const {
  return static_cast<int>(std::count_if(vars_.begin(), vars_.end(),
                                        [](const Variable& v) {
                                          return v.kind == VarKind::Binary;
                                        }));
}

void Model::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  for (const auto& v : vars_) {
    if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower > v.upper) {
      throw std::invalid_argument("variable '" + v.name + "' has bad bounds");
    }
    if (v.kind == VarKind::Binary && (v.lower < 0.0 || v.upper > 1.0)) {
      throw std::invalid_argument("binary '" + v.name +
                                  "' has bounds outside [0,1]");
    }
  }
  for (const auto& r : rows_) {
    if (!finite(r.rhs)) {
      throw std::invalid_argument("row '" + r.name + "' has non-finite rhs");
    }
    for (const auto& t : r.terms) {
      if (!finite(t.coef)) {
        throw std::invalid_argument("row '" + r.name +
                                    "' has a non-finite coefficient");
      }
    }
  }
  for (const auto& q : qrows_) {
    if (!finite(q.rhs)) {
      throw std::invalid_argument("quadratic row '" + q.name +
                                  "' has non-finite rhs");
    }
  }
  const auto& obj = objective_;
  if (!finite(obj.constant)) {
    throw std::invalid_argument("objective constant is not finite");
  }
  for (const auto& t : obj.linear) {
    if (!finite(t.coef)) throw std::invalid_argument("objective not finite");
  }
  if (obj.quad.empty()) return;

  // PSD check on the submatrix touched by the quadratic form.
  std::vector<int> touched;
  for (const auto& t : obj.quad) {
    if (!finite(t.coef)) throw std::invalid_argument("objective not finite");
    touched.push_back(t.i);
    touched.push_back(t.j);
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  auto local = [&](int v) {
    return static_cast<int>(
        std::lower_bound(touched.begin(), touched.end(), v) - touched.begin());
  };
  const int n = static_cast<int>(touched.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (const auto& t : obj.quad) {
    int a = local(t.i);
    int b = local(t.j);
    if (a == b) {
      h(a, a) += 2.0 * t.coef;
    } else {
      h(a, b) += t.coef;
      h(b, a) += t.coef;
    }
  }
  Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
  double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (ldlt.info() != Eigen::Success ||
      ldlt.vectorD().minCoeff() < -1e-9 * scale) {
    throw std::invalid_argument("objective quadratic form is not PSD");
  }
}

double Model::objective_value(std::span<const double> x) const {
  double v = objective_.constant;
  for (const auto& t : objective_.linear) v += t.coef * x[t.var];
  for (const auto& t : objective_.quad) v += t.coef * x[t.i] * x[t.j];
  return v;
}

double Model::row_activity(int row, std::span<const double> x) const {
  double a = 0.0;
  for (const auto& t : rows_.at(row).terms) a += t.coef * x[t.var];
  return a;
}

double row_violation(const LinearRow& row, double activity) {
  switch (row.sense) {
    case Sense::LessEqual:
      return std::max(0.0, activity - row.rhs);
    case Sense::GreaterEqual:
      return std::max(0.0, row.rhs - activity);
    case Sense::Equal:
      return std::abs(activity - row.rhs);
  }
  return 0.0;
}

double Model::max_violation(std::span<const double> x) const {
  double worst = 0.0;
  for (int i = 0; i < num_variables(); ++i) {
    worst = std::max(worst, vars_[i].lower - x[i]);
    worst = std::max(worst, x[i] - vars_[i].upper);
  }
  for (int r = 0; r < num_rows(); ++r) {
    worst = std::max(worst, row_violation(rows_[r], row_activity(r, x)));
  }
  for (const auto& q : qrows_) {
    double a = 0.0;
    for (const auto& t : q.linear) a += t.coef * x[t.var];
    for (const auto& t : q.quad) a += t.coef * x[t.i] * x[t.j];
    worst = std::max(worst, a - q.rhs);
  }
  return worst;
}

bool Model::same_structure(const Model& other) const {
  return vars_ == other.vars_ && rows_ == other.rows_ &&
         qrows_ == other.qrows_ && objective_ == other.objective_;
}

}  // namespace ltlplan::solver
