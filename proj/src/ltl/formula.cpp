#include "ltlplan/ltl/formula.hpp"

#include <algorithm>
#include <stdexcept>

namespace ltlplan::ltl {

namespace {

void require_arity(Op op, std::size_t n) {
  switch (op) {
    case Op::True:
    case Op::Atom:
      if (n != 0) throw std::invalid_argument("leaf node cannot have children");
      break;
    case Op::And:
    case Op::Or:
      if (n < 2) {
        throw std::invalid_argument(std::string(op_name(op)) +
                                    " needs at least 2 children");
      }
      break;
    case Op::Implies:
    case Op::Iff:
    case Op::Until:
      if (n != 2) {
        throw std::invalid_argument(std::string(op_name(op)) +
                                    " needs exactly 2 children");
      }
      break;
    default:
      if (n != 1) {
        throw std::invalid_argument(std::string(op_name(op)) +
                                    " needs exactly 1 child");
      }
  }
}

bool is_leaf(const Formula& f) {
  return f.op() == Op::True || f.op() == Op::Atom;
}

std::string wrap(const Formula& f) {
  if (is_leaf(f)) return to_string(f);
  return "(" + to_string(f) + ")";
}

std::string join(std::span<const Formula> children, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (i) out += sep;
    out += wrap(children[i]);
  }
  return out;
}

std::string bound_suffix(const std::optional<TimeBound>& b) {
  if (!b) return "";
  return "[" + std::to_string(b->lo) + "," + std::to_string(b->hi) + "]";
}

void collect_atoms(const Formula& f, std::set<std::string>& out) {
  if (f.op() == Op::Atom) out.insert(f.name());
  for (const auto& c : f.children()) collect_atoms(c, out);
}

}  // namespace

Formula::Formula(Op op, std::string name, std::vector<Formula> children,
                 std::optional<TimeBound> bound)
    : op_(op),
      name_(std::move(name)),
      children_(std::move(children)),
      bound_(bound) {
  require_arity(op_, children_.size());
  if (bound_) {
    if (op_ != Op::Always && op_ != Op::Eventually) {
      throw std::invalid_argument("time bounds only apply to F and G");
    }
    if (bound_->lo < 1 || bound_->lo > bound_->hi) {
      throw std::invalid_argument("time bound must satisfy 1 <= a <= b");
    }
  }
}

Formula Formula::truth() { return Formula(Op::True, {}, {}, {}); }

Formula Formula::falsity() { return negation(truth()); }

Formula Formula::atom(std::string name) {
  if (name.empty()) throw std::invalid_argument("atom name must be nonempty");
  return Formula(Op::Atom, std::move(name), {}, {});
}

Formula Formula::negation(Formula f) {
  return Formula(Op::Not, {}, {std::move(f)}, {});
}

Formula Formula::conjunction(std::vector<Formula> children) {
  return Formula(Op::And, {}, std::move(children), {});
}

Formula Formula::disjunction(std::vector<Formula> children) {
  return Formula(Op::Or, {}, std::move(children), {});
}

Formula Formula::implies(Formula lhs, Formula rhs) {
  return Formula(Op::Implies, {}, {std::move(lhs), std::move(rhs)}, {});
}

Formula Formula::iff(Formula lhs, Formula rhs) {
  return Formula(Op::Iff, {}, {std::move(lhs), std::move(rhs)}, {});
}

Formula Formula::next(Formula f) {
  return Formula(Op::Next, {}, {std::move(f)}, {});
}

Formula Formula::until(Formula lhs, Formula rhs) {
  return Formula(Op::Until, {}, {std::move(lhs), std::move(rhs)}, {});
}

Formula Formula::eventually(Formula f, std::optional<TimeBound> bound) {
  return Formula(Op::Eventually, {}, {std::move(f)}, bound);
}

Formula Formula::always(Formula f, std::optional<TimeBound> bound) {
  return Formula(Op::Always, {}, {std::move(f)}, bound);
}

Formula Formula::always_eventually(Formula f) {
  return Formula(Op::AlwaysEventually, {}, {std::move(f)}, {});
}

Formula Formula::eventually_always(Formula f) {
  return Formula(Op::EventuallyAlways, {}, {std::move(f)}, {});
}

bool Formula::is_literal() const {
  return op_ == Op::Atom || (op_ == Op::Not && children_[0].op_ == Op::Atom);
}

std::string to_string(const Formula& f) {
  switch (f.op()) {
    case Op::True:
      return "true";
    case Op::Atom:
      return f.name();
    case Op::Not:
      return "!" + wrap(f.child(0));
    case Op::And:
      return join(f.children(), " & ");
    case Op::Or:
      return join(f.children(), " | ");
    case Op::Implies:
      return wrap(f.child(0)) + " -> " + wrap(f.child(1));
    case Op::Iff:
      return wrap(f.child(0)) + " <-> " + wrap(f.child(1));
    case Op::Next:
      return "X " + wrap(f.child(0));
    case Op::Until:
      return wrap(f.child(0)) + " U " + wrap(f.child(1));
    case Op::Eventually:
      return "F" + bound_suffix(f.bound()) + " " + wrap(f.child(0));
    case Op::Always:
      return "G" + bound_suffix(f.bound()) + " " + wrap(f.child(0));
    case Op::AlwaysEventually:
      return "GF " + wrap(f.child(0));
    case Op::EventuallyAlways:
      return "FG " + wrap(f.child(0));
  }
  return {};
}

std::set<std::string> atoms(const Formula& f) {
  std::set<std::string> out;
  collect_atoms(f, out);
  return out;
}

int depth(const Formula& f) {
  int d = 0;
  for (const auto& c : f.children()) d = std::max(d, depth(c));
  return d + 1;
}

const char* op_name(Op op) {
  switch (op) {
    case Op::True: return "True";
    case Op::Atom: return "Atom";
    case Op::Not: return "Not";
    case Op::And: return "And";
    case Op::Or: return "Or";
    case Op::Implies: return "Implies";
    case Op::Iff: return "Iff";
    case Op::Next: return "Next";
    case Op::Until: return "Until";
    case Op::Eventually: return "Eventually";
    case Op::Always: return "Always";
    case Op::AlwaysEventually: return "AlwaysEventually";
    case Op::EventuallyAlways: return "EventuallyAlways";
  }
  return "?";
}

}  // namespace ltlplan::ltl
