#pragma once

// Encoder vs. semantics equivalence over every complete atom assignment.

#include <string>
#include <vector>

#include "binary_search.hpp"
#include "ltlplan/encoder/encoder.hpp"
#include "ltlplan/ltl/semantics.hpp"

namespace ltlplan::oracle {

struct Mismatch {
  std::string formula;
  int horizon = 0;
  unsigned assignment = 0;
  bool oracle = false;
};

/// Encodes f at step 1 over a fresh model with one binary per atom and step,
/// then checks every assignment. Returns the mismatches (empty when the
/// encoding agrees with the oracle everywhere).
inline std::vector<Mismatch> check_equivalence(const ltl::Formula& f,
                                               const std::vector<std::string>& atoms, int n,
                                               long* assignments = nullptr) {
  solver::Model m;
  encoder::AtomBinding binding;
  std::vector<int> vars;
  for (const auto& a : atoms) {
    std::vector<int> row;
    for (int k = 1; k <= n; ++k) {
      row.push_back(m.add_binary(a + "_" + std::to_string(k)));
      vars.push_back(row.back());
    }
    binding.bind(a, row);
  }
  encoder::EncodingContext ctx(n);
  encoder::Encoder enc(m, binding, ctx);
  enc.encode_satisfaction(f, 1);

  std::vector<Mismatch> out;
  const unsigned total = 1u << vars.size();
  for (unsigned bits = 0; bits < total; ++bits) {
    BinarySearch search(m);
    ltl::Trace::Assignment values;
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      std::vector<bool> row(n);
      for (int k = 0; k < n; ++k) {
        std::size_t idx = a * n + k;
        bool v = (bits >> idx) & 1u;
        row[k] = v;
        search.pin(vars[idx], v ? 1 : 0);
      }
      values.emplace(atoms[a], std::move(row));
    }
    ltl::Trace trace(n, std::move(values));
    bool want = ltl::evaluate(f, trace, 1);
    bool got = search.feasible();
    if (want != got) out.push_back({ltl::to_string(f), n, bits, want});
  }
  if (assignments) *assignments += total;
  return out;
}

}  // namespace ltlplan::oracle
