#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ltlplan/ltl/formula.hpp"
#include "ltlplan/solver/model_ir.hpp"

namespace ltlplan::encoder {

class EncodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Atom name -> binary model variable per step (index 0 is step 1).
class AtomBinding {
 public:
  void bind(std::string atom, std::vector<int> vars);
  bool contains(std::string_view atom) const { return map_.find(atom) != map_.end(); }
  /// Throws EncodeError for an unbound atom.
  const std::vector<int>& at(std::string_view atom) const;
  const std::map<std::string, std::vector<int>, std::less<>>& all() const { return map_; }

 private:
  std::map<std::string, std::vector<int>, std::less<>> map_;
};

struct EncodingContext {
  int horizon = 1;
  /// Lower bound on the big-M constant; each row uses max(big_m, 2 * terms).
  double big_m = 2.0;
  double small_m = 1.0;
  int next_aux = 1;
  int next_row = 1;

  explicit EncodingContext(int n) : horizon(n), big_m(n + 1.0) {}
};

/// Compiles LTL formulas into mixed-integer rows over a model.
/// Implies/Iff are desugared on entry.
class Encoder {
 public:
  Encoder(solver::Model& model, const AtomBinding& binding, EncodingContext& context);

  /// Adds rows forcing the run from step k to satisfy f.
  void encode_satisfaction(const ltl::Formula& f, int k = 1);

  /// Binary equal to 1 exactly when the run from step k satisfies f.
  int reify(const ltl::Formula& f, int k);

  /// T^k..T^N for lhs U rhs; pins T^k = 1 when `pin` is set.
  std::vector<int> encode_until(const ltl::Formula& lhs, const ltl::Formula& rhs, int k,
                                bool pin);

  /// Sum encodings for Always, Eventually, AlwaysEventually and
  /// EventuallyAlways at the top level.
  void encode_pattern(const ltl::Formula& f, int k);

  const std::vector<std::string>& warnings() const { return warnings_; }
  int aux_binaries() const { return aux_binaries_; }

 private:
  int horizon() const { return ctx_.horizon; }
  void check_step(int k) const;
  int new_aux();
  int constant(bool value);
  void add_row(const solver::AffineExpr& e, solver::Sense s, double rhs);
  void add_infeasible(const std::string& why);
  /// z <=> (sum of children >= threshold), children given as expressions in
  /// [0,1] over binaries.
  void link(int z, const std::vector<solver::AffineExpr>& kids, double threshold);
  solver::AffineExpr literal(const ltl::Formula& f, int k);
  void encode(const ltl::Formula& f, int k);
  int reify_desugared(const ltl::Formula& f, int k);

  solver::Model& model_;
  const AtomBinding& binding_;
  EncodingContext& ctx_;
  std::map<std::pair<std::string, int>, int> memo_;
  int true_var_ = -1;
  int false_var_ = -1;
  int aux_binaries_ = 0;
  std::vector<std::string> warnings_;
};

}  // namespace ltlplan::encoder
