#pragma once

#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ltlplan::solver {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarKind { Continuous, Binary };
enum class Sense { LessEqual, Equal, GreaterEqual };

struct Variable {
  std::string name;
  VarKind kind = VarKind::Continuous;
  double lower = -kInf;
  double upper = kInf;

  friend bool operator==(const Variable&, const Variable&) = default;
};

struct Term {
  int var = 0;
  double coef = 0.0;

  friend bool operator==(const Term&, const Term&) = default;
};

struct LinearRow {
  std::string name;
  std::vector<Term> terms;  // sorted by var, merged, no zero coefficients
  Sense sense = Sense::LessEqual;
  double rhs = 0.0;

  friend bool operator==(const LinearRow&, const LinearRow&) = default;
};

/// coef * x_i * x_j with i <= j.
struct QuadTerm {
  int i = 0;
  int j = 0;
  double coef = 0.0;

  friend bool operator==(const QuadTerm&, const QuadTerm&) = default;
};

/// sum(quad) + sum(linear) <= rhs. Only produced on the quadratic-row path;
/// the built-in branch-and-bound rejects models that contain them.
struct QuadraticRow {
  std::string name;
  std::vector<QuadTerm> quad;
  std::vector<Term> linear;
  double rhs = 0.0;

  friend bool operator==(const QuadraticRow&, const QuadraticRow&) = default;
};

/// sum(quad) + sum(linear) + constant, minimized.
struct Objective {
  std::vector<QuadTerm> quad;
  std::vector<Term> linear;
  double constant = 0.0;

  friend bool operator==(const Objective&, const Objective&) = default;
};

/// Sparse linear expression with a constant, used by model builders.
struct AffineExpr {
  std::vector<Term> terms;
  double constant = 0.0;

  AffineExpr& add(int var, double coef) {
    terms.push_back({var, coef});
    return *this;
  }
  AffineExpr& add(const AffineExpr& other, double scale = 1.0);
};

/// Sort by variable, merge duplicates and drop exact zeros.
std::vector<Term> canonical_terms(std::vector<Term> terms);
std::vector<QuadTerm> canonical_quad(std::vector<QuadTerm> terms);

/// Solver-agnostic mixed-integer model.
class Model {
 public:
  int add_variable(std::string name, VarKind kind, double lower, double upper);
  int add_continuous(std::string name, double lower, double upper) {
    return add_variable(std::move(name), VarKind::Continuous, lower, upper);
  }
  int add_binary(std::string name) {
    return add_variable(std::move(name), VarKind::Binary, 0.0, 1.0);
  }

  int add_row(std::string name, std::vector<Term> terms, Sense sense,
              double rhs);
  /// Row `expr sense rhs` with the expression constant moved to the rhs.
  int add_row(std::string name, const AffineExpr& expr, Sense sense,
              double rhs);
  int add_quadratic_row(QuadraticRow row);

  /// Declares a set of binaries that sum to one; used as a branching hint.
  void add_group(std::vector<int> members);

  void set_bounds(int var, double lower, double upper);
  void set_objective(Objective obj);
  void add_objective_quad(int i, int j, double coef);
  void add_objective_linear(int var, double coef);
  void add_objective_constant(double c) { objective_.constant += c; }
  /// Canonicalizes objective term lists.
  void finalize_objective();

  std::span<const Variable> variables() const { return vars_; }
  const Variable& variable(int i) const { return vars_.at(i); }
  int num_variables() const { return static_cast<int>(vars_.size()); }
  std::span<const LinearRow> rows() const { return rows_; }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  std::span<const QuadraticRow> quadratic_rows() const { return qrows_; }
  std::span<const std::vector<int>> groups() const { return groups_; }
  const Objective& objective() const { return objective_; }
  std::optional<int> find_variable(std::string_view name) const;

  int num_binaries() const;

  /// Throws std::invalid_argument when a coefficient is not finite, a
  /// binary has bounds outside [0,1], or the objective is not PSD.
  void validate() const;

  double objective_value(std::span<const double> x) const;
  /// Largest violation over linear rows, quadratic rows and variable bounds.
  double max_violation(std::span<const double> x) const;
  double row_activity(int row, std::span<const double> x) const;

  /// Equal variables, rows, quadratic rows and objective. Branching
  /// groups are solver hints and are not compared.
  bool same_structure(const Model& other) const;

 private:
  std::vector<Variable> vars_;
  std::vector<LinearRow> rows_;
  std::vector<QuadraticRow> qrows_;
  std::vector<std::vector<int>> groups_;
  Objective objective_;
  std::map<std::string, int, std::less<>> by_name_;
};

double row_violation(const LinearRow& row, double activity);

}  // namespace ltlplan::solver
