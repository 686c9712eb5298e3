#include <random>

#include "doctest.h"
#include "ltlplan/ltl/formula.hpp"
#include "ltlplan/ltl/parser.hpp"
#include "ltlplan/ltl/semantics.hpp"
#include "oracles/formula_gen.hpp"

using namespace ltlplan::ltl;

namespace {

Formula A(const char* n) { return Formula::atom(n); }

Trace trace1(std::vector<bool> p) {
  int n = static_cast<int>(p.size());
  return Trace(n, {{"p", std::move(p)}});
}

Trace trace2(std::vector<bool> p, std::vector<bool> q) {
  int n = static_cast<int>(p.size());
  return Trace(n, {{"p", std::move(p)}, {"q", std::move(q)}});
}

/// All traces over the given atoms with length n.
std::vector<Trace> all_traces(const std::vector<std::string>& atoms, int n) {
  std::vector<Trace> out;
  const unsigned total = 1u << (atoms.size() * n);
  for (unsigned bits = 0; bits < total; ++bits) {
    Trace::Assignment a;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      std::vector<bool> row(n);
      for (int k = 0; k < n; ++k) row[k] = (bits >> (i * n + k)) & 1u;
      a.emplace(atoms[i], row);
    }
    out.emplace_back(n, std::move(a));
  }
  return out;
}

Formula random_formula(std::mt19937& rng, int depth, const std::vector<std::string>& atoms) {
  std::uniform_int_distribution<int> leaf(0, static_cast<int>(atoms.size()));
  if (depth <= 1) {
    int l = leaf(rng);
    return l == 0 ? Formula::truth() : Formula::atom(atoms[l - 1]);
  }
  std::uniform_int_distribution<int> op(0, 14);
  auto sub = [&] { return random_formula(rng, depth - 1, atoms); };
  switch (op(rng)) {
    case 0: return Formula::negation(sub());
    case 1: return Formula::next(sub());
    case 2: return Formula::eventually(sub());
    case 3: return Formula::always(sub());
    case 4: return Formula::always_eventually(sub());
    case 5: return Formula::eventually_always(sub());
    case 6: return Formula::eventually(sub(), TimeBound{2, 4});
    case 7: return Formula::always(sub(), TimeBound{1, 3});
    case 8: return Formula::conjunction({sub(), sub()});
    case 9: return Formula::disjunction({sub(), sub(), sub()});
    case 10: return Formula::implies(sub(), sub());
    case 11: return Formula::iff(sub(), sub());
    case 12: return Formula::until(sub(), sub());
    case 13: return Formula::disjunction({sub(), sub()});
    default: return sub();
  }
}

}  // namespace

TEST_CASE("parser builds the corpus formulas") {
  CHECK(parse("F (p_R3 | p_R4)") ==
        Formula::eventually(Formula::disjunction({A("p_R3"), A("p_R4")})));
  CHECK(parse("(p_R1 | p_R2) U p_R3") ==
        Formula::until(Formula::disjunction({A("p_R1"), A("p_R2")}), A("p_R3")));
  Formula g = parse("G[7,15] p_R2");
  CHECK(g == Formula::always(A("p_R2"), TimeBound{7, 15}));
  REQUIRE(g.bound().has_value());
  CHECK(g.bound()->lo == 7);
  CHECK(g.bound()->hi == 15);
  CHECK(parse("true") == Formula::truth());
  CHECK(parse("false") == Formula::negation(Formula::truth()));
}

TEST_CASE("operator precedence and associativity") {
  CHECK(parse("a & b | c") == Formula::disjunction({Formula::conjunction({A("a"), A("b")}), A("c")}));
  CHECK(parse("a | b & c") == Formula::disjunction({A("a"), Formula::conjunction({A("b"), A("c")})}));
  CHECK(parse("a U b U c") == Formula::until(A("a"), Formula::until(A("b"), A("c"))));
  CHECK(parse("a -> b -> c") == Formula::implies(A("a"), Formula::implies(A("b"), A("c"))));
  CHECK(parse("a <-> b <-> c") == Formula::iff(Formula::iff(A("a"), A("b")), A("c")));
  CHECK(parse("!a U b") == Formula::until(Formula::negation(A("a")), A("b")));
  CHECK(parse("a U b & c") == Formula::conjunction({Formula::until(A("a"), A("b")), A("c")}));
  CHECK(parse("X F a") == Formula::next(Formula::eventually(A("a"))));
  CHECK(parse("GF a") == Formula::always_eventually(A("a")));
  CHECK(parse("FG a") == Formula::eventually_always(A("a")));
  CHECK(parse("a & b & c") == Formula::conjunction({A("a"), A("b"), A("c")}));
  CHECK(parse("a -> b <-> c") == Formula::iff(Formula::implies(A("a"), A("b")), A("c")));
  CHECK(parse("Fa_1") == A("Fa_1"));
}

TEST_CASE("syntax errors carry position and expected tokens") {
  try {
    parse("a &\n  & b");
    FAIL("expected a ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
    CHECK(!e.expected().empty());
  }
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("(a | b"), ParseError);
  CHECK_THROWS_AS(parse("a b"), ParseError);
  CHECK_THROWS_AS(parse("G[3,2] a"), ParseError);
  CHECK_THROWS_AS(parse("F[0,2] a"), ParseError);
  CHECK_THROWS_AS(parse("a U"), ParseError);
  CHECK_THROWS_AS(parse("a $ b"), ParseError);
}

TEST_CASE("factories enforce arity and bounds") {
  CHECK_THROWS_AS(Formula::conjunction({A("a")}), std::invalid_argument);
  CHECK_THROWS_AS(Formula::disjunction({}), std::invalid_argument);
  CHECK_THROWS_AS(Formula::atom(""), std::invalid_argument);
  CHECK_THROWS_AS(Formula::always(A("a"), TimeBound{0, 3}), std::invalid_argument);
  CHECK_THROWS_AS(Formula::eventually(A("a"), TimeBound{4, 3}), std::invalid_argument);
}

TEST_CASE("pretty printing round-trips") {
  for (const char* s : {"F (p_R3 | p_R4)", "(p_R1 | p_R2) U p_R3", "G[7,15] p_R2", "true",
                        "G (p_lleg | p_rleg)", "F[1,5] p_R2", "!(a -> b) <-> X c", "GF a & FG !b"}) {
    Formula f = parse(s);
    CHECK(parse(to_string(f)) == f);
  }
  for (const auto& f : ltlplan::oracle::depth_two({"a", "b"})) {
    CHECK(parse(to_string(f)) == f);
  }
  std::mt19937 rng(7);
  for (int i = 0; i < 300; ++i) {
    Formula f = random_formula(rng, 4, {"a", "b", "c"});
    CHECK(parse(to_string(f)) == f);
  }
}

TEST_CASE("desugar eliminates implication and equivalence") {
  CHECK(desugar(Formula::implies(A("a"), A("b"))) ==
        Formula::disjunction({Formula::negation(A("a")), A("b")}));
  CHECK(desugar(Formula::iff(A("a"), A("b"))) ==
        Formula::conjunction({Formula::disjunction({Formula::negation(A("a")), A("b")}),
                              Formula::disjunction({Formula::negation(A("b")), A("a")})}));
  Formula orf = Formula::disjunction({A("a"), A("b")});
  CHECK(desugar(orf) == orf);
}

TEST_CASE("evaluate follows the finite-trace semantics") {
  CHECK(evaluate(Formula::always(A("p")), trace1({true, true, true}), 1));
  CHECK(evaluate(Formula::until(A("p"), A("q")), trace2({true, true, false}, {false, false, true}), 1));
  CHECK_FALSE(evaluate(Formula::next(A("p")), trace1({true, true, true}), 3));
  CHECK(evaluate(Formula::next(A("p")), trace1({false, true, true}), 1));
  CHECK(evaluate(Formula::eventually_always(A("p")), trace1({false, true, true}), 1));
  CHECK_FALSE(evaluate(Formula::eventually_always(A("p")), trace1({true, true, false}), 1));
  CHECK(evaluate(Formula::always(A("p"), TimeBound{2, 3}), trace1({false, true, true, false}), 1));
  CHECK_FALSE(evaluate(Formula::eventually(A("p"), TimeBound{2, 3}), trace1({true, false, false, true}), 1));
  // empty windows
  CHECK(evaluate(Formula::always(A("p"), TimeBound{5, 7}), trace1({false, false}), 1));
  CHECK_FALSE(evaluate(Formula::eventually(A("p"), TimeBound{5, 7}), trace1({true, true}), 1));
  // windows start at max(k, a)
  CHECK(evaluate(Formula::eventually(A("p"), TimeBound{1, 4}), trace1({true, false, false, true}), 3));
  CHECK_FALSE(evaluate(Formula::eventually(A("p"), TimeBound{1, 3}), trace1({true, false, false, true}), 2));
  CHECK_THROWS_AS(evaluate(A("p"), trace1({true}), 2), std::out_of_range);
  CHECK_THROWS_AS(evaluate(A("p"), trace1({true}), 0), std::out_of_range);
  CHECK_THROWS_AS(evaluate(A("r"), trace1({true}), 1), std::out_of_range);
}

TEST_CASE("desugar preserves semantics on random formulas") {
  std::mt19937 rng(11);
  const std::vector<std::string> atoms{"a", "b", "c"};
  for (int i = 0; i < 150; ++i) {
    Formula f = random_formula(rng, 4, atoms);
    Formula d = desugar(f);
    for (int n = 1; n <= 3; ++n) {
      for (const auto& t : all_traces(atoms, n)) {
        for (int k = 1; k <= n; ++k) REQUIRE(evaluate(f, t, k) == evaluate(d, t, k));
      }
    }
  }
  // longer traces on fewer atoms
  for (int i = 0; i < 100; ++i) {
    Formula f = random_formula(rng, 4, {"a", "b"});
    Formula d = desugar(f);
    for (int n = 4; n <= 5; ++n) {
      for (const auto& t : all_traces({"a", "b", "c"}, n)) {
        if (t.assignment().at("c") != std::vector<bool>(n, false)) continue;
        for (int k = 1; k <= n; ++k) REQUIRE(evaluate(f, t, k) == evaluate(d, t, k));
      }
    }
  }
}

TEST_CASE("temporal identities hold at the oracle level") {
  const Formula a = A("p");
  const Formula b = A("q");
  for (int n = 1; n <= 5; ++n) {
    for (const auto& t : all_traces({"p", "q"}, n)) {
      for (int k = 1; k <= n; ++k) {
        // duality
        CHECK(evaluate(Formula::always(a), t, k) ==
              evaluate(Formula::negation(Formula::eventually(Formula::negation(a))), t, k));
        // expansion law
        Formula u = Formula::until(a, b);
        if (k < n) {
          Formula expanded = Formula::disjunction({b, Formula::conjunction({a, Formula::next(u)})});
          CHECK(evaluate(u, t, k) == evaluate(expanded, t, k));
        } else {
          CHECK(evaluate(u, t, k) == evaluate(b, t, n));
        }
        // GF on a finite run is "true at the last step"
        CHECK(evaluate(Formula::always_eventually(a), t, k) == t.value("p", n));
      }
    }
  }
}

TEST_CASE("trace construction checks") {
  CHECK_THROWS_AS(Trace(0, {}), std::invalid_argument);
  CHECK_THROWS_AS(Trace(2, {{"p", {true}}}), std::invalid_argument);
  Trace t(2, {{"p", {true, false}}});
  CHECK(t.declares("p"));
  CHECK_FALSE(t.declares("q"));
  CHECK(t.value("p", 1));
  CHECK_FALSE(t.value("p", 2));
}
