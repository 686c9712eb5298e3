#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ltlplan/ltl/formula.hpp"

namespace ltlplan::ltl {

/// Finite run of N steps; every declared atom has a value at every step.
class Trace {
 public:
  using Assignment = std::map<std::string, std::vector<bool>, std::less<>>;

  Trace(int length, Assignment values);

  int length() const { return length_; }
  /// Throws std::out_of_range for an undeclared atom or step outside 1..N.
  bool value(std::string_view atom, int step) const;
  bool declares(std::string_view atom) const;
  const Assignment& assignment() const { return values_; }

 private:
  int length_;
  Assignment values_;
};

/// Whether the run starting at `step` (1-based) satisfies f under truncated
/// finite-trace semantics. Next at the last step is false.
bool evaluate(const Formula& f, const Trace& trace, int step);

/// Eliminates Implies and Iff. Every other node kind is kept; derived
/// temporal patterns stay as primitives the encoder handles directly.
Formula desugar(const Formula& f);

}  // namespace ltlplan::ltl
