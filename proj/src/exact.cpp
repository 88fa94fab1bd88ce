#include <algorithm>
#include <cmath>
#include <set>

#include "majorbn/factor.hpp"
#include "majorbn/inference.hpp"

namespace majorbn {

namespace {

void check_query_unobserved(const Evidence& evidence,
                            const std::string& query) {
  if (evidence.count(query))
    fail(ErrorCode::UnknownState,
         "query variable '" + query + "' is part of the evidence");
}

}  // namespace

const char* algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::Exact: return "exact";
    case Algorithm::Logic: return "logic";
    case Algorithm::Likelihood: return "likelihood";
    case Algorithm::Epis: return "epis";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "exact") return Algorithm::Exact;
  if (name == "logic") return Algorithm::Logic;
  if (name == "likelihood") return Algorithm::Likelihood;
  if (name == "epis") return Algorithm::Epis;
  fail(ErrorCode::UnknownState, "no inference algorithm '" + name + "'");
}

int map_state_index(const Posterior& posterior) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(posterior.probabilities.size()); ++i)
    if (posterior.probabilities[i] > posterior.probabilities[best]) best = i;
  return best;
}

const std::string& map_state(const Network& net, const Posterior& posterior) {
  return net.variable(posterior.variable).states[map_state_index(posterior)];
}

Posterior enumerate_posterior(const Network& net, const Evidence& evidence,
                              const std::string& query) {
  check_query_unobserved(evidence, query);
  const int query_var = net.require_variable(query);
  const std::vector<int> observed = net.evidence_states(evidence);
  const int n = net.variable_count();

  std::vector<int> free_vars;
  double configurations = 1.0;
  for (int i = 0; i < n; ++i) {
    if (observed[i] >= 0) continue;
    free_vars.push_back(i);
    configurations *= net.variable(i).cardinality();
  }
  if (configurations > static_cast<double>(1 << 24))
    fail(ErrorCode::StateSpaceTooLarge,
         "enumeration over " + std::to_string(configurations) +
             " configurations");

  Assignment assignment(n, 0);
  for (int i = 0; i < n; ++i)
    if (observed[i] >= 0) assignment[i] = observed[i];

  Posterior posterior;
  posterior.variable = query_var;
  posterior.probabilities.assign(net.variable(query_var).cardinality(), 0.0);

  // Odometer over the unobserved variables, last one fastest.
  for (;;) {
    posterior.probabilities[assignment[query_var]] +=
        net.joint_probability(assignment);
    int k = static_cast<int>(free_vars.size()) - 1;
    for (; k >= 0; --k) {
      int var = free_vars[k];
      if (++assignment[var] < net.variable(var).cardinality()) break;
      assignment[var] = 0;
    }
    if (k < 0) break;
  }

  double total = 0.0;
  for (double p : posterior.probabilities) total += p;
  if (!(total > 0.0))
    fail(ErrorCode::ZeroProbabilityEvidence,
         "every completion of the evidence has probability 0");
  for (double& p : posterior.probabilities) p /= total;
  return posterior;
}

Posterior variable_elimination(const Network& net, const Evidence& evidence,
                               const std::string& query) {
  check_query_unobserved(evidence, query);
  const int query_var = net.require_variable(query);
  const std::vector<int> observed = net.evidence_states(evidence);
  const int n = net.variable_count();

  std::vector<Factor> factors;
  factors.reserve(n);
  for (int i = 0; i < n; ++i) {
    Factor f = Factor::from_cpt(net, i);
    for (int var : std::vector<int>(f.scope))
      if (observed[var] >= 0) f = f.condition(var, observed[var]);
    factors.push_back(std::move(f));
  }

  // Interaction graph over the unobserved non-query variables; eliminate
  // greedily by minimum degree, ties toward declaration order.
  std::vector<std::set<int>> neighbors(n);
  for (const Factor& f : factors)
    for (int a : f.scope)
      for (int b : f.scope)
        if (a != b) neighbors[a].insert(b);

  std::vector<int> pending;
  for (int i = 0; i < n; ++i)
    if (i != query_var && observed[i] < 0) pending.push_back(i);

  while (!pending.empty()) {
    int best = -1;
    std::size_t best_degree = 0;
    for (int var : pending) {
      std::size_t degree = neighbors[var].size();
      if (best < 0 || degree < best_degree) {
        best = var;
        best_degree = degree;
      }
    }
    pending.erase(std::find(pending.begin(), pending.end(), best));

    Factor product = Factor::constant(1.0);
    std::vector<Factor> rest;
    rest.reserve(factors.size());
    for (Factor& f : factors) {
      if (std::binary_search(f.scope.begin(), f.scope.end(), best))
        product = product.multiply(f);
      else
        rest.push_back(std::move(f));
    }
    rest.push_back(product.sum_out(best));
    factors = std::move(rest);

    for (int other : neighbors[best]) neighbors[other].erase(best);
    for (int a : neighbors[best])
      for (int b : neighbors[best])
        if (a != b) neighbors[a].insert(b);
    neighbors[best].clear();
  }

  Factor result = Factor::constant(1.0);
  for (const Factor& f : factors) result = result.multiply(f);

  Posterior posterior;
  posterior.variable = query_var;
  if (result.scope.empty()) {
    // Query variable never appeared; cannot happen since its own CPT factor
    // always contains it, but keep the guard.
    fail(ErrorCode::ZeroProbabilityEvidence, "query eliminated from model");
  }
  posterior.probabilities = std::move(result.values);
  double total = 0.0;
  for (double p : posterior.probabilities) total += p;
  if (!(total > 0.0))
    fail(ErrorCode::ZeroProbabilityEvidence,
         "evidence has probability 0 under the model");
  for (double& p : posterior.probabilities) p /= total;
  return posterior;
}

Posterior query_posterior(const Network& net, const Evidence& evidence,
                          const std::string& query, Algorithm algorithm,
                          std::uint64_t n, std::uint64_t seed,
                          double epsilon) {
  switch (algorithm) {
    case Algorithm::Exact:
      return variable_elimination(net, evidence, query);
    case Algorithm::Logic:
      return logic_sampling(net, evidence, query, n, seed).posterior;
    case Algorithm::Likelihood:
      return likelihood_weighting(net, evidence, query, n, seed).posterior;
    case Algorithm::Epis:
      return epis_sampling(net, evidence, query, n, seed, epsilon).posterior;
  }
  fail(ErrorCode::UnknownState, "bad algorithm");
}

}  // namespace majorbn
