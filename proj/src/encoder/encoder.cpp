#include "ltlplan/encoder/encoder.hpp"

#include <algorithm>

#include "ltlplan/ltl/semantics.hpp"

namespace ltlplan::encoder {

using ltl::Formula;
using ltl::Op;
using solver::AffineExpr;
using solver::Sense;

void AtomBinding::bind(std::string atom, std::vector<int> vars) {
  map_[std::move(atom)] = std::move(vars);
}

const std::vector<int>& AtomBinding::at(std::string_view atom) const {
  auto it = map_.find(atom);
  if (it == map_.end()) {
    throw EncodeError("unbound atom '" + std::string(atom) + "'");
  }
  return it->second;
}

Encoder::Encoder(solver::Model& model, const AtomBinding& binding, EncodingContext& context)
    : model_(model), binding_(binding), ctx_(context) {
  if (ctx_.horizon < 1) throw EncodeError("horizon must be >= 1");
  if (!(ctx_.small_m > 0.0 && ctx_.small_m <= 1.0)) {
    throw EncodeError("small m must lie in (0, 1]");
  }
  if (ctx_.big_m < ctx_.horizon + 1) throw EncodeError("big M must be at least N + 1");
  for (const auto& [name, vars] : binding_.all()) {
    if (static_cast<int>(vars.size()) != ctx_.horizon) {
      throw EncodeError("atom '" + name + "' is bound to " + std::to_string(vars.size()) +
                        " variables, expected " + std::to_string(ctx_.horizon));
    }
  }
}

void Encoder::check_step(int k) const {
  if (k < 1 || k > horizon()) {
    throw EncodeError("step " + std::to_string(k) + " outside 1.." + std::to_string(horizon()));
  }
}

int Encoder::new_aux() {
  ++aux_binaries_;
  return model_.add_binary("aux_" + std::to_string(ctx_.next_aux++));
}

int Encoder::constant(bool value) {
  int& slot = value ? true_var_ : false_var_;
  if (slot < 0) {
    slot = new_aux();
    model_.set_bounds(slot, value ? 1.0 : 0.0, value ? 1.0 : 0.0);
  }
  return slot;
}

void Encoder::add_row(const AffineExpr& e, Sense s, double rhs) {
  model_.add_row("ltl_" + std::to_string(ctx_.next_row++), e, s, rhs);
}

void Encoder::add_infeasible(const std::string& why) {
  warnings_.push_back(why);
  add_row(AffineExpr{}, Sense::Equal, 1.0);
}

void Encoder::link(int z, const std::vector<AffineExpr>& kids, double threshold) {
  const double big = std::max(ctx_.big_m, 2.0 * static_cast<double>(kids.size()));
  AffineExpr sum;
  for (const auto& k : kids) sum.add(k);
  // sum >= t - M(1 - z)
  AffineExpr lower = sum;
  lower.add(z, -big);
  add_row(lower, Sense::GreaterEqual, threshold - big);
  // sum <= t - m + M z
  AffineExpr upper = sum;
  upper.add(z, -big);
  add_row(upper, Sense::LessEqual, threshold - ctx_.small_m);
}

AffineExpr Encoder::literal(const Formula& f, int k) {
  AffineExpr e;
  if (f.op() == Op::Atom) {
    e.add(binding_.at(f.name())[k - 1], 1.0);
  } else if (f.op() == Op::True) {
    e.constant = 1.0;
  } else if (f.op() == Op::Not && f.child(0).op() == Op::Atom) {
    e.add(binding_.at(f.child(0).name())[k - 1], -1.0);
    e.constant = 1.0;
  } else if (f.op() == Op::Not && f.child(0).op() == Op::True) {
    e.constant = 0.0;
  } else {
    e.add(reify_desugared(f, k), 1.0);
  }
  return e;
}

int Encoder::reify(const Formula& f, int k) {
  check_step(k);
  return reify_desugared(ltl::desugar(f), k);
}

int Encoder::reify_desugared(const Formula& f, int k) {
  const int n = horizon();
  if (f.op() == Op::Atom) return binding_.at(f.name())[k - 1];
  if (f.op() == Op::True) return constant(true);

  auto key = std::make_pair(ltl::to_string(f), k);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  int z = -1;
  switch (f.op()) {
    case Op::Not: {
      int c = reify_desugared(f.child(0), k);
      z = new_aux();
      add_row(AffineExpr{}.add(z, 1.0).add(c, 1.0), Sense::Equal, 1.0);
      break;
    }
    case Op::And:
    case Op::Or: {
      std::vector<AffineExpr> kids;
      for (const auto& c : f.children()) kids.push_back(AffineExpr{}.add(reify_desugared(c, k), 1.0));
      z = new_aux();
      link(z, kids, f.op() == Op::And ? static_cast<double>(kids.size()) : 1.0);
      break;
    }
    case Op::Next:
      z = k < n ? reify_desugared(f.child(0), k + 1) : constant(false);
      break;
    case Op::Until:
      z = encode_until(f.child(0), f.child(1), k, false).front();
      break;
    case Op::Eventually:
    case Op::Always: {
      int lo = k;
      int hi = n;
      if (const auto& b = f.bound()) {
        lo = std::max(k, b->lo);
        hi = std::min(n, b->hi);
      }
      const bool always = f.op() == Op::Always;
      if (lo > hi) {
        z = constant(always);
        break;
      }
      std::vector<AffineExpr> kids;
      for (int i = lo; i <= hi; ++i) kids.push_back(AffineExpr{}.add(reify_desugared(f.child(0), i), 1.0));
      z = new_aux();
      link(z, kids, always ? static_cast<double>(kids.size()) : 1.0);
      break;
    }
    case Op::AlwaysEventually: {
      // Every suffix j..N holds the body somewhere.
      std::vector<AffineExpr> kids;
      Formula ev = Formula::eventually(f.child(0));
      for (int j = k; j <= n; ++j) kids.push_back(AffineExpr{}.add(reify_desugared(ev, j), 1.0));
      z = new_aux();
      link(z, kids, static_cast<double>(kids.size()));
      break;
    }
    case Op::EventuallyAlways: {
      std::vector<AffineExpr> kids;
      Formula al = Formula::always(f.child(0));
      for (int j = k; j <= n; ++j) kids.push_back(AffineExpr{}.add(reify_desugared(al, j), 1.0));
      z = new_aux();
      link(z, kids, 1.0);
      break;
    }
    default:
      throw EncodeError(std::string("cannot reify operator ") + ltl::op_name(f.op()));
  }
  memo_[key] = z;
  return z;
}

std::vector<int> Encoder::encode_until(const Formula& lhs_in, const Formula& rhs_in, int k,
                                       bool pin) {
  check_step(k);
  const int n = horizon();
  Formula lhs = ltl::desugar(lhs_in);
  Formula rhs = ltl::desugar(rhs_in);
  const std::string text = ltl::to_string(Formula::until(lhs, rhs));

  std::vector<int> t(n - k + 1);
  for (auto& v : t) v = new_aux();
  std::vector<int> b(n - k);
  for (auto& v : b) v = new_aux();
  auto T = [&](int i) { return t[i - k]; };
  auto B = [&](int i) { return b[i - k]; };

  // T^N = rhs at N.
  int last = reify_desugared(rhs, n);
  add_row(AffineExpr{}.add(T(n), 1.0).add(last, -1.0), Sense::Equal, 0.0);
  for (int i = n - 1; i >= k; --i) {
    int a = reify_desugared(lhs, i);
    link(B(i), {AffineExpr{}.add(a, 1.0), AffineExpr{}.add(T(i + 1), 1.0)}, 2.0);
    int r = reify_desugared(rhs, i);
    link(T(i), {AffineExpr{}.add(r, 1.0), AffineExpr{}.add(B(i), 1.0)}, 1.0);
  }
  for (int i = k; i <= n; ++i) memo_.try_emplace({text, i}, T(i));
  if (pin) add_row(AffineExpr{}.add(T(k), 1.0), Sense::Equal, 1.0);
  return t;
}

void Encoder::encode_satisfaction(const Formula& f, int k) {
  check_step(k);
  encode(ltl::desugar(f), k);
}

void Encoder::encode(const Formula& f, int k) {
  const int n = horizon();
  switch (f.op()) {
    case Op::True:
      return;
    case Op::Atom:
      add_row(literal(f, k), Sense::Equal, 1.0);
      return;
    case Op::Not: {
      const Formula& c = f.child(0);
      if (c.op() == Op::True) {
        add_infeasible("specification contains 'false' at step " + std::to_string(k));
      } else {
        AffineExpr e = c.op() == Op::Atom ? literal(c, k) : AffineExpr{}.add(reify_desugared(c, k), 1.0);
        add_row(e, Sense::Equal, 0.0);
      }
      return;
    }
    case Op::And: {
      bool all_literals = std::all_of(f.children().begin(), f.children().end(),
                                      [](const Formula& c) { return c.is_literal(); });
      if (all_literals) {
        AffineExpr sum;
        for (const auto& c : f.children()) sum.add(literal(c, k));
        add_row(sum, Sense::Equal, static_cast<double>(f.children().size()));
      } else {
        for (const auto& c : f.children()) encode(c, k);
      }
      return;
    }
    case Op::Or: {
      AffineExpr sum;
      for (const auto& c : f.children()) sum.add(literal(c, k));
      add_row(sum, Sense::GreaterEqual, 1.0);
      return;
    }
    case Op::Next:
      if (k < n) {
        encode(f.child(0), k + 1);
      } else {
        add_infeasible("next at the final step " + std::to_string(n) + " is unsatisfiable");
      }
      return;
    case Op::Until:
      encode_until(f.child(0), f.child(1), k, true);
      return;
    case Op::Eventually:
    case Op::Always:
    case Op::AlwaysEventually:
    case Op::EventuallyAlways:
      encode_pattern(f, k);
      return;
    default:
      throw EncodeError(std::string("unexpected operator ") + ltl::op_name(f.op()));
  }
}

void Encoder::encode_pattern(const Formula& f_in, int k) {
  check_step(k);
  Formula f = ltl::desugar(f_in);
  const int n = horizon();
  const Formula& body = f.child(0);

  // Per-step expression for the body: literals directly, a disjunction of
  // literals as its plain sum (only valid under a >= 1 requirement),
  // otherwise the reified binary.
  auto step_expr = [&](int i, bool sum_ok) {
    if (sum_ok && body.op() == Op::Or &&
        std::all_of(body.children().begin(), body.children().end(),
                    [](const Formula& c) { return c.is_literal(); })) {
      AffineExpr e;
      for (const auto& c : body.children()) e.add(literal(c, i));
      return e;
    }
    if (body.is_literal() || body.op() == Op::True) return literal(body, i);
    return AffineExpr{}.add(reify_desugared(body, i), 1.0);
  };

  switch (f.op()) {
    case Op::Always:
    case Op::Eventually: {
      int lo = k;
      int hi = n;
      if (const auto& b = f.bound()) {
        lo = std::max(k, b->lo);
        hi = std::min(n, b->hi);
      }
      const bool always = f.op() == Op::Always;
      if (lo > hi) {
        std::string w = "time window of '" + ltl::to_string(f) + "' is empty within 1.." +
                        std::to_string(n);
        if (always) {
          warnings_.push_back(w + "; the requirement holds vacuously");
        } else {
          add_infeasible(w + "; the specification is unsatisfiable");
        }
        return;
      }
      if (always && !body.is_literal() && body.op() != Op::True) {
        for (int i = lo; i <= hi; ++i) encode(body, i);
        return;
      }
      AffineExpr sum;
      for (int i = lo; i <= hi; ++i) sum.add(step_expr(i, !always));
      add_row(sum, Sense::GreaterEqual, always ? static_cast<double>(hi - lo + 1) : 1.0);
      return;
    }
    case Op::AlwaysEventually: {
      std::vector<AffineExpr> per_step(n + 1);
      for (int i = k; i <= n; ++i) per_step[i] = step_expr(i, true);
      for (int j = k; j <= n; ++j) {
        AffineExpr sum;
        for (int i = j; i <= n; ++i) sum.add(per_step[i]);
        add_row(sum, Sense::GreaterEqual, 1.0);
      }
      return;
    }
    case Op::EventuallyAlways: {
      std::vector<AffineExpr> per_step(n + 1);
      for (int i = k; i <= n; ++i) per_step[i] = step_expr(i, false);
      AffineExpr any;
      for (int j = k; j <= n; ++j) {
        int d = new_aux();
        AffineExpr sum;
        for (int i = j; i <= n; ++i) sum.add(per_step[i]);
        sum.add(d, -static_cast<double>(n - j + 1));
        add_row(sum, Sense::GreaterEqual, 0.0);
        any.add(d, 1.0);
      }
      add_row(any, Sense::GreaterEqual, 1.0);
      return;
    }
    default:
      throw EncodeError(std::string("encode_pattern expects a temporal pattern, got ") +
                        ltl::op_name(f.op()));
  }
}

}  // namespace ltlplan::encoder
