#pragma once

#include <span>
#include <vector>

#include "ltlplan/solver/model_ir.hpp"

namespace ltlplan::solver {

/// Activity-based bound tightening over the linear rows of a model.
/// Binary bounds are rounded; continuous bounds are only tightened when the
/// change is significant, and are relaxed outward by a tiny margin so that
/// rounding in the derivation never cuts off a feasible point.
class Propagator {
 public:
  explicit Propagator(const Model& model);

  /// Tightens lower/upper in place. Returns false when some row cannot be
  /// satisfied within the bounds.
  bool run(std::vector<double>& lower, std::vector<double>& upper) const;

 private:
  const Model& model_;
  std::vector<std::vector<int>> rows_of_var_;
};

}  // namespace ltlplan::solver
