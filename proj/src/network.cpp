#include "majorbn/network.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace majorbn {

namespace {

bool valid_identifier(const std::string& text) {
  if (text.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(text[0])) || text[0] == '_'))
    return false;
  for (char c : text)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
      return false;
  return true;
}

}  // namespace

Network Network::build(std::vector<Variable> variables,
                       const std::vector<Edge>& edges, std::vector<Cpt> cpts,
                       std::string name) {
  Network net;
  net.name_ = std::move(name);
  net.variables_ = std::move(variables);

  const int n = net.variable_count();
  for (int i = 0; i < n; ++i) {
    const Variable& var = net.variables_[i];
    if (!valid_identifier(var.name))
      fail(ErrorCode::InvalidVariable,
           "variable name '" + var.name + "' is not an identifier");
    if (var.cardinality() < 2)
      fail(ErrorCode::InvalidVariable,
           "variable '" + var.name + "' needs at least 2 states");
    std::set<std::string> seen;
    for (const std::string& state : var.states) {
      if (!valid_identifier(state))
        fail(ErrorCode::InvalidVariable, "state label '" + state + "' of '" +
                                             var.name +
                                             "' is not an identifier");
      if (!seen.insert(state).second)
        fail(ErrorCode::DuplicateName,
             "duplicate state '" + state + "' in variable '" + var.name + "'");
    }
    if (!net.index_by_name_.emplace(var.name, i).second)
      fail(ErrorCode::DuplicateName, "duplicate variable '" + var.name + "'");
  }

  std::set<std::pair<int, int>> edge_set;
  for (const Edge& edge : edges) {
    int parent = net.require_variable(edge.first);
    int child = net.require_variable(edge.second);
    if (parent == child)
      fail(ErrorCode::CycleDetected, "self edge on '" + edge.first + "'");
    edge_set.emplace(parent, child);
  }
  net.edges_.assign(edge_set.begin(), edge_set.end());

  // The CPT parent lists must reproduce the edge set exactly.
  if (static_cast<int>(cpts.size()) != n)
    fail(ErrorCode::CptShapeMismatch,
         "expected " + std::to_string(n) + " CPTs, got " +
             std::to_string(cpts.size()));
  net.cpts_.resize(n);
  std::vector<bool> have_cpt(n, false);
  for (Cpt& cpt : cpts) {
    if (cpt.child < 0 || cpt.child >= n)
      fail(ErrorCode::CptShapeMismatch, "CPT references unknown child");
    if (have_cpt[cpt.child])
      fail(ErrorCode::CptShapeMismatch,
           "two CPTs for '" + net.variables_[cpt.child].name + "'");
    have_cpt[cpt.child] = true;
    net.cpts_[cpt.child] = std::move(cpt);
  }

  for (int child = 0; child < n; ++child) {
    const Cpt& cpt = net.cpts_[child];
    const std::string& child_name = net.variables_[child].name;

    std::set<int> parent_set(cpt.parents.begin(), cpt.parents.end());
    if (parent_set.size() != cpt.parents.size())
      fail(ErrorCode::CptShapeMismatch,
           "repeated parent in CPT of '" + child_name + "'");
    std::set<int> in_edges;
    for (const auto& [parent, target] : net.edges_)
      if (target == child) in_edges.insert(parent);
    if (parent_set != in_edges)
      fail(ErrorCode::CptShapeMismatch,
           "CPT parents of '" + child_name + "' do not match its in-edges");

    std::size_t expected_rows = 1;
    for (int parent : cpt.parents)
      expected_rows *= static_cast<std::size_t>(
          net.variables_[parent].cardinality());
    if (cpt.rows.size() != expected_rows)
      fail(ErrorCode::CptShapeMismatch,
           "CPT of '" + child_name + "' has " + std::to_string(cpt.rows.size()) +
               " rows, expected " + std::to_string(expected_rows));

    const int card = net.variables_[child].cardinality();
    for (std::size_t r = 0; r < cpt.rows.size(); ++r) {
      std::vector<double>& row = net.cpts_[child].rows[r];
      if (static_cast<int>(row.size()) != card)
        fail(ErrorCode::CptShapeMismatch,
             "CPT row " + std::to_string(r) + " of '" + child_name + "' has " +
                 std::to_string(row.size()) + " entries, expected " +
                 std::to_string(card));
      double sum = 0.0;
      for (double p : row) {
        if (!(p >= 0.0 && p <= 1.0) || std::isnan(p))
          fail(ErrorCode::UnnormalizedRow,
               "probability outside [0,1] in CPT of '" + child_name + "'");
        sum += p;
      }
      if (std::abs(sum - 1.0) > kRowSumTolerance)
        fail(ErrorCode::UnnormalizedRow,
             "CPT row " + std::to_string(r) + " of '" + child_name +
                 "' sums to " + std::to_string(sum));
      for (double& p : row) p /= sum;
    }
  }

  // Kahn's algorithm; the ready set is drained in declaration order, which
  // both fixes the topological order and detects cycles.
  std::vector<int> in_degree(n, 0);
  std::vector<std::vector<int>> children(n);
  for (const auto& [parent, child] : net.edges_) {
    ++in_degree[child];
    children[parent].push_back(child);
  }
  std::set<int> ready;
  for (int i = 0; i < n; ++i)
    if (in_degree[i] == 0) ready.insert(i);
  while (!ready.empty()) {
    int next = *ready.begin();
    ready.erase(ready.begin());
    net.topo_order_.push_back(next);
    for (int child : children[next])
      if (--in_degree[child] == 0) ready.insert(child);
  }
  if (static_cast<int>(net.topo_order_.size()) != n)
    fail(ErrorCode::CycleDetected, "edge set contains a directed cycle");

  return net;
}

int Network::variable_index(std::string_view name) const {
  auto it = index_by_name_.find(std::string(name));
  return it == index_by_name_.end() ? -1 : it->second;
}

int Network::require_variable(std::string_view name) const {
  int index = variable_index(name);
  if (index < 0)
    fail(ErrorCode::UnknownVariable, "no variable '" + std::string(name) + "'");
  return index;
}

int Network::total_cpt_rows() const {
  int total = 0;
  for (const Cpt& cpt : cpts_) total += static_cast<int>(cpt.rows.size());
  return total;
}

int Network::cpt_row_index(int child, const Assignment& assignment) const {
  const Cpt& cpt = cpts_[child];
  int row = 0;
  for (int parent : cpt.parents)
    row = row * variables_[parent].cardinality() + assignment[parent];
  return row;
}

double Network::joint_probability(const Assignment& assignment) const {
  double product = 1.0;
  for (int i = 0; i < variable_count(); ++i)
    product *= cpts_[i].rows[cpt_row_index(i, assignment)][assignment[i]];
  return product;
}

std::vector<int> Network::evidence_states(const Evidence& evidence) const {
  std::vector<int> states(variable_count(), -1);
  for (const auto& [name, label] : evidence) {
    int var = require_variable(name);
    int state = variables_[var].state_index(label);
    if (state < 0)
      fail(ErrorCode::UnknownState,
           "variable '" + name + "' has no state '" + label + "'");
    states[var] = state;
  }
  return states;
}

}  // namespace majorbn
