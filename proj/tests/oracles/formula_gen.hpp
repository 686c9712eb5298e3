#pragma once

// Formula families for encoder/oracle equivalence checks.

#include <random>
#include <string>
#include <vector>

#include "ltlplan/ltl/formula.hpp"

namespace ltlplan::oracle {

using ltl::Formula;
using ltl::TimeBound;

inline std::vector<Formula> leaves(const std::vector<std::string>& atoms) {
  std::vector<Formula> out{Formula::truth()};
  for (const auto& a : atoms) out.push_back(Formula::atom(a));
  return out;
}

inline std::vector<TimeBound> sample_bounds() { return {{1, 2}, {2, 3}, {2, 5}, {4, 6}}; }

/// Every unary operator applied to f, bounded variants once per sample bound.
inline std::vector<Formula> unary_over(const Formula& f) {
  std::vector<Formula> out{Formula::negation(f),           Formula::next(f),
                           Formula::eventually(f),         Formula::always(f),
                           Formula::always_eventually(f), Formula::eventually_always(f)};
  for (auto b : sample_bounds()) {
    out.push_back(Formula::eventually(f, b));
    out.push_back(Formula::always(f, b));
  }
  return out;
}

inline std::vector<Formula> binary_over(const Formula& a, const Formula& b) {
  return {Formula::conjunction({a, b}), Formula::disjunction({a, b}), Formula::implies(a, b),
          Formula::iff(a, b), Formula::until(a, b)};
}

/// All formulas of depth <= 2 over the atoms.
inline std::vector<Formula> depth_two(const std::vector<std::string>& atoms) {
  std::vector<Formula> base = leaves(atoms);
  std::vector<Formula> out = base;
  for (const auto& f : base) {
    for (auto& g : unary_over(f)) out.push_back(std::move(g));
  }
  for (const auto& a : base) {
    for (const auto& b : base) {
      for (auto& g : binary_over(a, b)) out.push_back(std::move(g));
    }
  }
  for (const auto& a : base) {
    for (const auto& b : base) {
      for (const auto& c : base) {
        out.push_back(Formula::conjunction({a, b, c}));
        out.push_back(Formula::disjunction({a, b, c}));
      }
    }
  }
  return out;
}

/// Depth-3 family: every unary operator over every depth-2 formula, plus
/// `binary_samples` random binary combinations of depth-2 formulas.
inline std::vector<Formula> depth_three(const std::vector<std::string>& atoms,
                                        int binary_samples, unsigned seed) {
  std::vector<Formula> two = depth_two(atoms);
  std::vector<Formula> out;
  for (const auto& f : two) {
    if (ltl::depth(f) != 2) continue;
    for (auto& g : unary_over(f)) out.push_back(std::move(g));
  }
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, two.size() - 1);
  std::uniform_int_distribution<int> op(0, 4);
  for (int added = 0; added < binary_samples;) {
    const Formula& a = two[pick(rng)];
    const Formula& b = two[pick(rng)];
    if (ltl::depth(a) < 2 && ltl::depth(b) < 2) continue;
    out.push_back(binary_over(a, b)[op(rng)]);
    ++added;
  }
  return out;
}

}  // namespace ltlplan::oracle
