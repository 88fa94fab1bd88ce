#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "majorbn/error.hpp"

namespace majorbn {

// A categorical random variable. State order is significant: CPT columns,
// inverse-CDF draws and argmax tie-breaking all follow it.
struct Variable {
  std::string name;
  std::vector<std::string> states;

  int cardinality() const { return static_cast<int>(states.size()); }

  // Index of `label`, or -1.
  int state_index(std::string_view label) const {
    for (int i = 0; i < static_cast<int>(states.size()); ++i)
      if (states[i] == label) return i;
    return -1;
  }
};

// The questionnaire's four-level response scale. The weight of a state is
// its 1-based position: very_low=1, low=2, much=3, very_much=4.
namespace quad_scale {

inline const std::vector<std::string>& states() {
  static const std::vector<std::string> kStates = {"very_low", "low", "much",
                                                   "very_much"};
  return kStates;
}

inline constexpr int kCardinality = 4;

inline int weight(int state_index) { return state_index + 1; }

inline bool matches(const std::vector<std::string>& candidate) {
  return candidate == states();
}

}  // namespace quad_scale

// Conditional probability table of one variable. `rows` holds one
// distribution over the child's states per parent-state configuration;
// configurations are enumerated row-major over the parent state indices,
// the last parent varying fastest.
struct Cpt {
  int child = -1;
  std::vector<int> parents;
  std::vector<std::vector<double>> rows;
};

// Observed variable -> observed state label. May be empty.
using Evidence = std::map<std::string, std::string>;

// One state index per variable, in network variable order.
using Assignment = std::vector<int>;

using Edge = std::pair<std::string, std::string>;  // parent name, child name

// Immutable validated DAG of categorical variables with one CPT each.
// Construction goes through build(); afterwards the network is safe to
// share across threads.
class Network {
 public:
  // Validates and assembles a network. Throws DuplicateName,
  // InvalidVariable, CycleDetected, CptShapeMismatch or UnnormalizedRow.
  // Rows whose sum deviates from 1 by at most 1e-9 are renormalized;
  // larger deviations are rejected.
  static Network build(std::vector<Variable> variables,
                       const std::vector<Edge>& edges, std::vector<Cpt> cpts,
                       std::string name = "network");

  static constexpr double kRowSumTolerance = 1e-9;

  const std::string& name() const { return name_; }
  int variable_count() const { return static_cast<int>(variables_.size()); }
  const std::vector<Variable>& variables() const { return variables_; }
  const Variable& variable(int index) const { return variables_[index]; }

  // Index of the variable called `name`, or -1.
  int variable_index(std::string_view name) const;
  // Same, but throws UnknownVariable.
  int require_variable(std::string_view name) const;

  // CPT of variable `index`.
  const Cpt& cpt(int index) const { return cpts_[index]; }
  const std::vector<Cpt>& cpts() const { return cpts_; }

  // Edges as (parent index, child index), sorted.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  int total_cpt_rows() const;

  // Every parent precedes its children; ties broken by declaration order.
  const std::vector<int>& topological_order() const { return topo_order_; }

  // Row index into cpt(child).rows for the parent states in `assignment`.
  int cpt_row_index(int child, const Assignment& assignment) const;

  // Chain-rule joint: product over variables of the matching CPT entry.
  double joint_probability(const Assignment& assignment) const;

  // Expands evidence to a per-variable state vector (-1 = unobserved).
  // Throws UnknownVariable / UnknownState.
  std::vector<int> evidence_states(const Evidence& evidence) const;

 private:
  Network() = default;

  std::string name_;
  std::vector<Variable> variables_;
  std::vector<Cpt> cpts_;
  std::vector<std::pair<int, int>> edges_;
  std::unordered_map<std::string, int> index_by_name_;
  std::vector<int> topo_order_;
};

}  // namespace majorbn
