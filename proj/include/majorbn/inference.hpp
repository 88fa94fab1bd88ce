#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "majorbn/network.hpp"

namespace majorbn {

// Normalized distribution over one variable's states, aligned with the
// variable's state order.
struct Posterior {
  int variable = -1;
  std::vector<double> probabilities;
};

// What a sampling engine did, alongside its posterior. accepted_samples is
// meaningful for logic sampling (the weighted engines use every sample);
// effective_sample_size is (sum w)^2 / sum w^2 for the weighted engines and
// the accepted count for logic sampling.
struct SamplerReport {
  Posterior posterior;
  std::uint64_t requested_samples = 0;
  std::uint64_t accepted_samples = 0;
  double effective_sample_size = 0.0;
  std::uint64_t seed = 0;
};

// Loopy belief propagation output: one marginal per network variable
// (point mass for evidence variables).
struct LbpResult {
  std::vector<Posterior> marginals;
  bool converged = false;
  int iterations = 0;
};

enum class Algorithm { Exact, Logic, Likelihood, Epis };

const char* algorithm_name(Algorithm algorithm);
// Parses "exact", "logic", "likelihood" or "epis"; throws UnknownState.
Algorithm parse_algorithm(const std::string& name);

inline constexpr double kDefaultEpsilon = 0.006;
inline constexpr std::uint64_t kDefaultSamples = 50000;

// Samples are generated in fixed blocks of this many draws; block b of root
// seed s runs on derive_seed(s, b). Sharding across threads distributes
// blocks and reduces partial results in block order, so any thread count
// reproduces the single-threaded result bit for bit.
inline constexpr std::uint64_t kSampleBlock = 8192;

// Exhaustive-summation oracle. Sums the joint over all completions of the
// evidence; the state space over unobserved variables must stay within
// 2^24 configurations. Throws StateSpaceTooLarge or ZeroProbabilityEvidence.
Posterior enumerate_posterior(const Network& net, const Evidence& evidence,
                              const std::string& query);

// Exact posterior by variable elimination (min-degree order, declaration-
// order tie-break). Throws ZeroProbabilityEvidence.
Posterior variable_elimination(const Network& net, const Evidence& evidence,
                               const std::string& query);

// Forward (prior) sampling with rejection of samples inconsistent with the
// evidence. Throws NoAcceptedSamples when nothing survives.
SamplerReport logic_sampling(const Network& net, const Evidence& evidence,
                             const std::string& query, std::uint64_t n,
                             std::uint64_t seed, int threads = 1);

// Forward sampling with evidence variables clamped; each sample carries the
// likelihood of the evidence given its sampled parents. Throws
// AllZeroWeights.
SamplerReport likelihood_weighting(const Network& net,
                                   const Evidence& evidence,
                                   const std::string& query, std::uint64_t n,
                                   std::uint64_t seed, int threads = 1);

// Sum-product message passing on the factor graph of the evidence-reduced
// network. Non-convergence is reported through the result, never thrown.
// damping in [0,1) blends each new message with the previous one.
LbpResult loopy_belief_propagation(const Network& net, const Evidence& evidence,
                                   int max_iterations = 100,
                                   double damping = 0.0,
                                   double tolerance = 1e-9);

// Importance sampling whose proposal is precomputed from loopy belief
// propagation: every non-evidence variable samples from its CPT row
// reweighted by the propagated beliefs, with entries below epsilon raised
// to epsilon and the row renormalized. Throws AllZeroWeights.
SamplerReport epis_sampling(const Network& net, const Evidence& evidence,
                            const std::string& query, std::uint64_t n,
                            std::uint64_t seed,
                            double epsilon = kDefaultEpsilon, int threads = 1);

// Dispatches on `algorithm`; exact uses variable elimination and ignores
// n / seed / epsilon.
Posterior query_posterior(const Network& net, const Evidence& evidence,
                          const std::string& query, Algorithm algorithm,
                          std::uint64_t n, std::uint64_t seed,
                          double epsilon = kDefaultEpsilon);

// Index of the most probable state; ties break toward the lowest index.
int map_state_index(const Posterior& posterior);
// Its label.
const std::string& map_state(const Network& net, const Posterior& posterior);

}  // namespace majorbn
