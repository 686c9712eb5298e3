#include <algorithm>

#include "doctest.h"
#include "ltlplan/encoder/encoder.hpp"
#include "ltlplan/ltl/parser.hpp"
#include "ltlplan/ltl/semantics.hpp"
#include "oracles/binary_search.hpp"
#include "oracles/equivalence.hpp"
#include "oracles/formula_gen.hpp"

using namespace ltlplan;
using encoder::AtomBinding;
using encoder::EncodingContext;
using encoder::Encoder;
using ltl::Formula;
using solver::Sense;

namespace {

struct Bench {
  solver::Model model;
  AtomBinding binding;
  std::map<std::string, std::vector<int>> vars;
  EncodingContext ctx;
  Encoder enc;

  Bench(const std::vector<std::string>& atoms, int n) : ctx(n), enc(model, binding, ctx) {
    for (const auto& a : atoms) {
      std::vector<int> row;
      for (int k = 1; k <= n; ++k) row.push_back(model.add_binary(a + "_" + std::to_string(k)));
      binding.bind(a, row);
      vars[a] = row;
    }
  }
  int var(const std::string& a, int k) const { return vars.at(a)[k - 1]; }
};

std::vector<int> term_vars(const solver::LinearRow& r) {
  std::vector<int> out;
  for (const auto& t : r.terms) out.push_back(t.var);
  return out;
}

bool all_coefs(const solver::LinearRow& r, double c) {
  return std::all_of(r.terms.begin(), r.terms.end(), [c](const auto& t) { return t.coef == c; });
}

void expect_equivalent(const Formula& f, const std::vector<std::string>& atoms, int n) {
  auto bad = oracle::check_equivalence(f, atoms, n);
  INFO(ltl::to_string(f), " at N=", n);
  CHECK(bad.empty());
}

}  // namespace

TEST_CASE("eventually over a disjunction of atoms is one summed row") {
  Bench b({"p_R3", "p_R4"}, 10);
  b.enc.encode_satisfaction(ltl::parse("F (p_R3 | p_R4)"));
  REQUIRE(b.model.num_rows() == 1);
  const auto& r = b.model.rows()[0];
  CHECK(r.sense == Sense::GreaterEqual);
  CHECK(r.rhs == 1.0);
  CHECK(r.terms.size() == 20);
  CHECK(all_coefs(r, 1.0));
  CHECK(b.enc.aux_binaries() == 0);
}

TEST_CASE("atoms and negated atoms pin their binary") {
  Bench b({"p"}, 3);
  b.enc.encode_satisfaction(Formula::atom("p"), 2);
  b.enc.encode_satisfaction(Formula::negation(Formula::atom("p")), 1);
  REQUIRE(b.model.num_rows() == 2);
  CHECK(term_vars(b.model.rows()[0]) == std::vector<int>{b.var("p", 2)});
  CHECK(b.model.rows()[0].sense == Sense::Equal);
  CHECK(b.model.rows()[0].rhs == 1.0);
  const auto& r = b.model.rows()[1];
  CHECK(term_vars(r) == std::vector<int>{b.var("p", 1)});
  CHECK(r.terms[0].coef == 1.0);
  CHECK(r.sense == Sense::Equal);
  CHECK(r.rhs == 0.0);
}

TEST_CASE("reified disjunction is the two-sided big-M biconditional") {
  Bench b({"p_R1", "p_R2"}, 4);
  int z = b.enc.reify(ltl::parse("p_R1 | p_R2"), 3);
  REQUIRE(b.model.num_rows() == 2);
  const double big = b.ctx.big_m;
  const auto& lo = b.model.rows()[0];
  const auto& hi = b.model.rows()[1];
  CHECK(lo.sense == Sense::GreaterEqual);
  CHECK(lo.rhs == doctest::Approx(1.0 - big));
  CHECK(hi.sense == Sense::LessEqual);
  CHECK(hi.rhs == doctest::Approx(1.0 - b.ctx.small_m));
  for (const auto* r : {&lo, &hi}) {
    for (const auto& t : r->terms) {
      if (t.var == z) {
        CHECK(t.coef == -big);
      } else {
        CHECK((t.var == b.var("p_R1", 3) || t.var == b.var("p_R2", 3)));
        CHECK(t.coef == 1.0);
      }
    }
  }
  CHECK(b.enc.reify(ltl::parse("p_R1 | p_R2"), 3) == z);
  CHECK(b.model.num_rows() == 2);
}

TEST_CASE("reifying an atom returns its binary and adds nothing") {
  Bench b({"p"}, 4);
  CHECK(b.enc.reify(Formula::atom("p"), 3) == b.var("p", 3));
  CHECK(b.model.num_rows() == 0);
  CHECK(b.enc.aux_binaries() == 0);
}

TEST_CASE("reified conjunction with M=10 admits only z=1 when both children are 1") {
  Bench b({"x1", "x2"}, 1);
  b.ctx.big_m = 10.0;
  int z = b.enc.reify(ltl::parse("x1 & x2"), 1);
  int x1 = b.var("x1", 1);
  int x2 = b.var("x2", 1);
  for (int bits = 0; bits < 8; ++bits) {
    std::vector<double> x(b.model.num_variables(), 0.0);
    x[x1] = bits & 1;
    x[x2] = (bits >> 1) & 1;
    x[z] = (bits >> 2) & 1;
    bool feasible = b.model.max_violation(x) <= 1e-12;
    CHECK(feasible == (x[z] == (x[x1] == 1 && x[x2] == 1)));
  }
}

TEST_CASE("until allocates T and B vectors plus reification children") {
  for (int n : {1, 2, 5, 13}) {
    for (int k = 1; k <= n; ++k) {
      Bench b({"a", "c"}, n);
      b.enc.encode_until(Formula::atom("a"), Formula::atom("c"), k, true);
      CHECK(b.enc.aux_binaries() == (n - k + 1) + (n - k));
    }
  }
  // a disjunctive left side reifies one child per recursion step
  Bench b({"p_R1", "p_R2", "p_R3"}, 13);
  auto t = b.enc.encode_until(ltl::parse("p_R1 | p_R2"), Formula::atom("p_R3"), 1, true);
  CHECK(t.size() == 13);
  CHECK(b.enc.aux_binaries() == 13 + 12 + 12);
  bool base = false;
  bool pinned = false;
  for (const auto& r : b.model.rows()) {
    auto v = term_vars(r);
    if (r.sense == Sense::Equal && r.rhs == 0.0 && v.size() == 2 &&
        std::count(v.begin(), v.end(), t.back()) == 1 &&
        std::count(v.begin(), v.end(), b.var("p_R3", 13)) == 1) {
      base = true;
    }
    if (r.sense == Sense::Equal && r.rhs == 1.0 && v == std::vector<int>{t.front()}) pinned = true;
  }
  CHECK(base);
  CHECK(pinned);
}

TEST_CASE("until is satisfied immediately when the right side holds") {
  Bench b({"a", "c"}, 4);
  b.enc.encode_satisfaction(ltl::parse("a U c"), 2);
  oracle::BinarySearch s(b.model);
  s.pin(b.var("c", 2), 1);
  s.pin(b.var("a", 2), 0);
  s.pin(b.var("a", 3), 0);
  s.pin(b.var("a", 4), 0);
  CHECK(s.feasible());
}

TEST_CASE("until matches the oracle on every length-4 trace") {
  expect_equivalent(ltl::parse("a U c"), {"a", "c"}, 4);
  expect_equivalent(ltl::parse("(a | c) U !a"), {"a", "c"}, 4);
}

TEST_CASE("bounded safety over the window sums to its length") {
  Bench b({"p_R2"}, 18);
  b.enc.encode_satisfaction(ltl::parse("G[7,15] p_R2"));
  REQUIRE(b.model.num_rows() == 1);
  const auto& r = b.model.rows()[0];
  CHECK(r.sense == Sense::GreaterEqual);
  CHECK(r.rhs == 9.0);
  std::vector<int> want;
  for (int j = 7; j <= 15; ++j) want.push_back(b.var("p_R2", j));
  CHECK(term_vars(r) == want);
}

TEST_CASE("eventually at a one-step horizon forces the only step") {
  Bench b({"p"}, 1);
  b.enc.encode_satisfaction(ltl::parse("F p"));
  REQUIRE(b.model.num_rows() == 1);
  CHECK(term_vars(b.model.rows()[0]) == std::vector<int>{b.var("p", 1)});
  CHECK(b.model.rows()[0].rhs == 1.0);
  CHECK(b.model.rows()[0].sense == Sense::GreaterEqual);
}

TEST_CASE("repeated eventually adds one suffix row per step") {
  Bench b({"p"}, 3);
  b.enc.encode_satisfaction(ltl::parse("GF p"));
  REQUIRE(b.model.num_rows() == 3);
  CHECK(term_vars(b.model.rows()[2]) == std::vector<int>{b.var("p", 3)});
  expect_equivalent(ltl::parse("GF p"), {"p"}, 3);
}

TEST_CASE("persistence uses one indicator per suffix") {
  Bench b({"p"}, 4);
  b.enc.encode_satisfaction(ltl::parse("FG p"));
  CHECK(b.enc.aux_binaries() == 4);
  CHECK(b.model.num_rows() == 5);
  for (int n = 1; n <= 5; ++n) expect_equivalent(ltl::parse("FG p"), {"p"}, n);
}

TEST_CASE("safety as >= and as = admit the same binary assignments") {
  for (int n = 1; n <= 5; ++n) {
    for (int lo = 1; lo <= n; ++lo) {
      for (int hi = lo; hi <= n; ++hi) {
        for (unsigned bits = 0; bits < (1u << n); ++bits) {
          int sum = 0;
          for (int i = lo; i <= hi; ++i) sum += (bits >> (i - 1)) & 1u;
          CHECK((sum >= hi - lo + 1) == (sum == hi - lo + 1));
        }
      }
    }
  }
}

TEST_CASE("trivially unsatisfiable requirements produce warnings") {
  {
    Bench b({"p"}, 3);
    b.enc.encode_satisfaction(ltl::parse("X p"), 3);
    CHECK(b.enc.warnings().size() == 1);
    oracle::BinarySearch s(b.model);
    CHECK_FALSE(s.feasible());
  }
  {
    Bench b({"p"}, 3);
    b.enc.encode_satisfaction(ltl::parse("F[5,7] p"));
    CHECK(b.enc.warnings().size() == 1);
    oracle::BinarySearch s(b.model);
    CHECK_FALSE(s.feasible());
  }
  {
    Bench b({"p"}, 3);
    b.enc.encode_satisfaction(ltl::parse("G[5,7] p"));
    CHECK(b.enc.warnings().size() == 1);
    oracle::BinarySearch s(b.model);
    CHECK(s.feasible());
  }
}

TEST_CASE("encoding errors") {
  Bench b({"p"}, 3);
  CHECK_THROWS_AS(b.enc.encode_satisfaction(ltl::parse("q")), encoder::EncodeError);
  CHECK_THROWS_AS(b.enc.encode_satisfaction(ltl::parse("p"), 4), encoder::EncodeError);
  CHECK_THROWS_AS(b.enc.encode_satisfaction(ltl::parse("p"), 0), encoder::EncodeError);
  CHECK_THROWS_AS(b.enc.reify(ltl::parse("p"), 4), encoder::EncodeError);
  AtomBinding short_binding;
  short_binding.bind("p", {0});
  CHECK_THROWS_AS(short_binding.at("q"), encoder::EncodeError);
}

TEST_CASE("reified binaries equal the oracle value in every feasible completion") {
  const std::vector<std::string> atoms{"a", "b"};
  const int n = 3;
  for (const auto& f : oracle::depth_two(atoms)) {
    for (int k = 1; k <= n; ++k) {
      for (unsigned bits = 0; bits < (1u << (atoms.size() * n)); ++bits) {
        Bench bench(atoms, n);
        int z = bench.enc.reify(f, k);
        ltl::Trace::Assignment values;
        std::vector<std::pair<int, int>> pins;
        for (std::size_t a = 0; a < atoms.size(); ++a) {
          std::vector<bool> row(n);
          for (int i = 0; i < n; ++i) {
            row[i] = (bits >> (a * n + i)) & 1u;
            pins.emplace_back(bench.var(atoms[a], i + 1), row[i] ? 1 : 0);
          }
          values.emplace(atoms[a], row);
        }
        bool want = ltl::evaluate(f, ltl::Trace(n, values), k);
        for (int zv : {0, 1}) {
          oracle::BinarySearch s(bench.model);
          for (auto [v, x] : pins) s.pin(v, x);
          s.pin(z, zv);
          INFO(ltl::to_string(f), " k=", k, " bits=", bits, " z=", zv);
          REQUIRE(s.feasible() == (zv == static_cast<int>(want)));
        }
      }
    }
  }
}

TEST_CASE("depth-two family agrees with the oracle up to N=3") {
  for (const auto& f : oracle::depth_two({"a", "b"})) {
    for (int n = 1; n <= 3; ++n) expect_equivalent(f, {"a", "b"}, n);
  }
}
