#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace ltlplan::ltl {

enum class Op {
  True,
  Atom,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Next,
  Until,
  Eventually,
  Always,
  AlwaysEventually,
  EventuallyAlways,
};

/// Inclusive step window [lo, hi], 1-based.
struct TimeBound {
  int lo = 1;
  int hi = 1;

  friend bool operator==(const TimeBound&, const TimeBound&) = default;
};

/// Immutable LTL abstract syntax tree node.
///
/// Construct through the named factories; they enforce arity and bound
/// invariants and throw std::invalid_argument on violation.
class Formula {
 public:
  static Formula truth();
  static Formula falsity();  // encoded as !true
  static Formula atom(std::string name);
  static Formula negation(Formula f);
  static Formula conjunction(std::vector<Formula> children);
  static Formula disjunction(std::vector<Formula> children);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula iff(Formula lhs, Formula rhs);
  static Formula next(Formula f);
  static Formula until(Formula lhs, Formula rhs);
  static Formula eventually(Formula f, std::optional<TimeBound> bound = {});
  static Formula always(Formula f, std::optional<TimeBound> bound = {});
  static Formula always_eventually(Formula f);
  static Formula eventually_always(Formula f);

  Op op() const { return op_; }
  const std::string& name() const { return name_; }
  std::span<const Formula> children() const { return children_; }
  const Formula& child(std::size_t i) const { return children_.at(i); }
  const std::optional<TimeBound>& bound() const { return bound_; }

  bool is_atom() const { return op_ == Op::Atom; }
  /// Atom or negated atom.
  bool is_literal() const;

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  Formula(Op op, std::string name, std::vector<Formula> children,
          std::optional<TimeBound> bound);

  Op op_ = Op::True;
  std::string name_;
  std::vector<Formula> children_;
  std::optional<TimeBound> bound_;
};

/// Canonical concrete syntax; parse(to_string(f)) == f for parser-produced
/// and factory-built trees alike.
std::string to_string(const Formula& f);

std::set<std::string> atoms(const Formula& f);

int depth(const Formula& f);

const char* op_name(Op op);

}  // namespace ltlplan::ltl
