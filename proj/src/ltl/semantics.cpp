#include "ltlplan/ltl/semantics.hpp"

#include <algorithm>
#include <stdexcept>

namespace ltlplan::ltl {

Trace::Trace(int length, Assignment values)
    : length_(length), values_(std::move(values)) {
  if (length_ < 1) throw std::invalid_argument("trace length must be >= 1");
  for (const auto& [name, v] : values_) {
    if (static_cast<int>(v.size()) != length_) {
      throw std::invalid_argument("atom '" + name +
                                  "' lacks a value at some step");
    }
  }
}

bool Trace::declares(std::string_view atom) const {
  return values_.find(atom) != values_.end();
}

bool Trace::value(std::string_view atom, int step) const {
  auto it = values_.find(atom);
  if (it == values_.end()) {
    throw std::out_of_range("atom '" + std::string(atom) +
                            "' is not declared in the trace");
  }
  if (step < 1 || step > length_) {
    throw std::out_of_range("step " + std::to_string(step) +
                            " outside 1.." + std::to_string(length_));
  }
  return it->second[step - 1];
}

namespace {

struct Window {
  int lo;
  int hi;  // empty when lo > hi
};

Window window(const Formula& f, int k, int n) {
  if (const auto& b = f.bound()) return {std::max(k, b->lo), std::min(n, b->hi)};
  return {k, n};
}

bool eval(const Formula& f, const Trace& t, int k) {
  const int n = t.length();
  switch (f.op()) {
    case Op::True:
      return true;
    case Op::Atom:
      return t.value(f.name(), k);
    case Op::Not:
      return !eval(f.child(0), t, k);
    case Op::And:
      return std::all_of(f.children().begin(), f.children().end(),
                         [&](const Formula& c) { return eval(c, t, k); });
    case Op::Or:
      return std::any_of(f.children().begin(), f.children().end(),
                         [&](const Formula& c) { return eval(c, t, k); });
    case Op::Implies:
      return !eval(f.child(0), t, k) || eval(f.child(1), t, k);
    case Op::Iff:
      return eval(f.child(0), t, k) == eval(f.child(1), t, k);
    case Op::Next:
      return k < n && eval(f.child(0), t, k + 1);
    case Op::Until:
      for (int j = k; j <= n; ++j) {
        if (eval(f.child(1), t, j)) return true;
        if (!eval(f.child(0), t, j)) return false;
      }
      return false;
    case Op::Eventually: {
      auto w = window(f, k, n);
      for (int i = w.lo; i <= w.hi; ++i) {
        if (eval(f.child(0), t, i)) return true;
      }
      return false;
    }
    case Op::Always: {
      auto w = window(f, k, n);
      for (int i = w.lo; i <= w.hi; ++i) {
        if (!eval(f.child(0), t, i)) return false;
      }
      return true;
    }
    case Op::AlwaysEventually:
      for (int j = k; j <= n; ++j) {
        bool seen = false;
        for (int i = j; i <= n && !seen; ++i) seen = eval(f.child(0), t, i);
        if (!seen) return false;
      }
      return true;
    case Op::EventuallyAlways:
      for (int j = k; j <= n; ++j) {
        bool all = true;
        for (int i = j; i <= n && all; ++i) all = eval(f.child(0), t, i);
        if (all) return true;
      }
      return false;
  }
  return false;
}

}  // namespace

bool evaluate(const Formula& f, const Trace& trace, int step) {
  if (step < 1 || step > trace.length()) {
    throw std::out_of_range("step " + std::to_string(step) + " outside 1.." +
                            std::to_string(trace.length()));
  }
  return eval(f, trace, step);
}

Formula desugar(const Formula& f) {
  std::vector<Formula> kids;
  kids.reserve(f.children().size());
  for (const auto& c : f.children()) kids.push_back(desugar(c));

  switch (f.op()) {
    case Op::True:
    case Op::Atom:
      return f;
    case Op::Not:
      return Formula::negation(std::move(kids[0]));
    case Op::And:
      return Formula::conjunction(std::move(kids));
    case Op::Or:
      return Formula::disjunction(std::move(kids));
    case Op::Implies:
      return Formula::disjunction(
          {Formula::negation(std::move(kids[0])), std::move(kids[1])});
    case Op::Iff: {
      const Formula& a = kids[0];
      const Formula& b = kids[1];
      return Formula::conjunction(
          {Formula::disjunction({Formula::negation(a), b}),
           Formula::disjunction({Formula::negation(b), a})});
    }
    case Op::Next:
      return Formula::next(std::move(kids[0]));
    case Op::Until:
      return Formula::until(std::move(kids[0]), std::move(kids[1]));
    case Op::Eventually:
      return Formula::eventually(std::move(kids[0]), f.bound());
    case Op::Always:
      return Formula::always(std::move(kids[0]), f.bound());
    case Op::AlwaysEventually:
      return Formula::always_eventually(std::move(kids[0]));
    case Op::EventuallyAlways:
      return Formula::eventually_always(std::move(kids[0]));
  }
  return f;
}

}  // namespace ltlplan::ltl
