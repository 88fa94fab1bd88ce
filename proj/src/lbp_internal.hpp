#pragma once

#include <vector>

#include "majorbn/factor.hpp"
#include "majorbn/inference.hpp"

namespace majorbn::detail {

// Factor-graph sum-product engine over the evidence-reduced network.
// Kept out of the public interface; epis_sampling reads the converged
// messages to assemble its importance distributions.
class LbpEngine {
 public:
  LbpEngine(const Network& net, const std::vector<int>& observed);

  // Synchronous sweeps with damping until the largest message change drops
  // below tolerance. Returns the number of sweeps performed.
  int run(int max_iterations, double damping, double tolerance);

  bool converged() const { return converged_; }

  // Normalized product of all factor-to-variable messages into `var`.
  std::vector<double> belief(int var) const;

  // Same product but skipping the variable's own CPT factor: the evidence
  // weight arriving from below, used to reweight sampling CPT rows.
  std::vector<double> lambda(int var) const;

 private:
  struct EdgeRef {
    int factor;
    int position;  // index into the factor's scope
  };

  std::vector<double> product_into(int var, int skip_factor) const;

  const Network& net_;
  std::vector<Factor> factors_;                 // factors_[i] from CPT of i
  std::vector<std::vector<EdgeRef>> var_edges_;  // per variable
  // messages_[f][k]: factor f -> its k-th scope variable, normalized.
  std::vector<std::vector<std::vector<double>>> messages_;
  bool converged_ = false;
};

}  // namespace majorbn::detail
