#pragma once

#include <vector>

#include "majorbn/network.hpp"

namespace majorbn {

// Dense table over a sorted set of variables; values are laid out row-major
// with the last scope variable varying fastest. The workhorse of variable
// elimination and belief propagation.
struct Factor {
  std::vector<int> scope;  // variable indices, strictly ascending
  std::vector<int> cards;  // cardinality per scope entry
  std::vector<double> values;

  static Factor constant(double value) {
    Factor f;
    f.values = {value};
    return f;
  }

  std::size_t size() const { return values.size(); }

  // Factor over cpt's child and parents holding the CPT entries.
  static Factor from_cpt(const Network& net, int child);

  Factor multiply(const Factor& other) const;

  // Sums `variable` out of the scope.
  Factor sum_out(int variable) const;

  // Fixes `variable` to `state` and drops it from the scope.
  Factor condition(int variable, int state) const;

  // Scales so the values sum to 1; returns false when the total is not a
  // positive finite number.
  bool normalize();
};

}  // namespace majorbn
