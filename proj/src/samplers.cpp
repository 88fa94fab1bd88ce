#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "majorbn/inference.hpp"
#include "majorbn/rng.hpp"
#include "src/lbp_internal.hpp"

namespace majorbn {

namespace {

// Partial result of one sample block. Blocks are reduced in index order,
// so the merged totals do not depend on how blocks were scheduled.
struct BlockTally {
  std::vector<double> weighted_counts;
  double sum_weights = 0.0;
  double sum_squared_weights = 0.0;
  std::uint64_t accepted = 0;
};

// Runs `body(rng, tally)` once per sample, kSampleBlock samples per block,
// block b seeded with derive_seed(seed, b). With threads > 1 the blocks are
// distributed round-robin and merged in order.
template <typename Body>
BlockTally run_sample_blocks(std::uint64_t n, std::uint64_t seed, int threads,
                             int query_cardinality, const Body& body) {
  const std::uint64_t blocks = (n + kSampleBlock - 1) / kSampleBlock;
  std::vector<BlockTally> partials(blocks);

  auto run_block = [&](std::uint64_t b) {
    BlockTally& tally = partials[b];
    tally.weighted_counts.assign(query_cardinality, 0.0);
    Rng rng(derive_seed(seed, b));
    const std::uint64_t count =
        std::min<std::uint64_t>(kSampleBlock, n - b * kSampleBlock);
    for (std::uint64_t i = 0; i < count; ++i) body(rng, tally);
  };

  if (threads <= 1 || blocks <= 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> workers;
    const int worker_count =
        static_cast<int>(std::min<std::uint64_t>(threads, blocks));
    workers.reserve(worker_count);
    for (int w = 0; w < worker_count; ++w)
      workers.emplace_back([&, w] {
        for (std::uint64_t b = w; b < blocks; b += worker_count) run_block(b);
      });
    for (std::thread& worker : workers) worker.join();
  }

  BlockTally total;
  total.weighted_counts.assign(query_cardinality, 0.0);
  for (const BlockTally& partial : partials) {
    for (int s = 0; s < query_cardinality; ++s)
      total.weighted_counts[s] += partial.weighted_counts[s];
    total.sum_weights += partial.sum_weights;
    total.sum_squared_weights += partial.sum_squared_weights;
    total.accepted += partial.accepted;
  }
  return total;
}

void check_sampler_arguments(const Evidence& evidence, const std::string& query,
                             std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("sample count must be at least 1");
  if (evidence.count(query))
    fail(ErrorCode::UnknownState,
         "query variable '" + query + "' is part of the evidence");
}

Posterior normalized_posterior(int query_var,
                               const std::vector<double>& weighted_counts,
                               double total) {
  Posterior posterior;
  posterior.variable = query_var;
  posterior.probabilities = weighted_counts;
  for (double& p : posterior.probabilities) p /= total;
  return posterior;
}

}  // namespace

SamplerReport logic_sampling(const Network& net, const Evidence& evidence,
                             const std::string& query, std::uint64_t n,
                             std::uint64_t seed, int threads) {
  check_sampler_arguments(evidence, query, n);
  const int query_var = net.require_variable(query);
  const std::vector<int> observed = net.evidence_states(evidence);
  const std::vector<int>& order = net.topological_order();
  const int query_card = net.variable(query_var).cardinality();

  BlockTally tally = run_sample_blocks(
      n, seed, threads, query_card, [&](Rng& rng, BlockTally& out) {
        Assignment sample(net.variable_count(), 0);
        for (int var : order)
          sample[var] = rng.draw_state(
              net.cpt(var).rows[net.cpt_row_index(var, sample)]);
        for (int var = 0; var < net.variable_count(); ++var)
          if (observed[var] >= 0 && sample[var] != observed[var]) return;
        out.weighted_counts[sample[query_var]] += 1.0;
        ++out.accepted;
      });

  if (tally.accepted == 0)
    fail(ErrorCode::NoAcceptedSamples,
         "no sample of " + std::to_string(n) + " matched the evidence");

  SamplerReport report;
  report.posterior = normalized_posterior(
      query_var, tally.weighted_counts, static_cast<double>(tally.accepted));
  report.requested_samples = n;
  report.accepted_samples = tally.accepted;
  report.effective_sample_size = static_cast<double>(tally.accepted);
  report.seed = seed;
  return report;
}

SamplerReport likelihood_weighting(const Network& net,
                                   const Evidence& evidence,
                                   const std::string& query, std::uint64_t n,
                                   std::uint64_t seed, int threads) {
  check_sampler_arguments(evidence, query, n);
  const int query_var = net.require_variable(query);
  const std::vector<int> observed = net.evidence_states(evidence);
  const std::vector<int>& order = net.topological_order();
  const int query_card = net.variable(query_var).cardinality();

  BlockTally tally = run_sample_blocks(
      n, seed, threads, query_card, [&](Rng& rng, BlockTally& out) {
        Assignment sample(net.variable_count(), 0);
        double weight = 1.0;
        for (int var : order) {
          const std::vector<double>& row =
              net.cpt(var).rows[net.cpt_row_index(var, sample)];
          if (observed[var] >= 0) {
            sample[var] = observed[var];
            weight *= row[observed[var]];
          } else {
            sample[var] = rng.draw_state(row);
          }
        }
        out.weighted_counts[sample[query_var]] += weight;
        out.sum_weights += weight;
        out.sum_squared_weights += weight * weight;
        ++out.accepted;
      });

  if (!(tally.sum_weights > 0.0))
    fail(ErrorCode::AllZeroWeights,
         "every sample weight is 0; evidence impossible under the model");

  SamplerReport report;
  report.posterior =
      normalized_posterior(query_var, tally.weighted_counts, tally.sum_weights);
  report.requested_samples = n;
  report.accepted_samples = n;
  report.effective_sample_size =
      tally.sum_weights * tally.sum_weights / tally.sum_squared_weights;
  report.seed = seed;
  return report;
}

SamplerReport epis_sampling(const Network& net, const Evidence& evidence,
                            const std::string& query, std::uint64_t n,
                            std::uint64_t seed, double epsilon, int threads) {
  check_sampler_arguments(evidence, query, n);
  if (!(epsilon > 0.0 && epsilon < 0.5))
    throw std::invalid_argument("epsilon must lie in (0, 0.5)");
  const int query_var = net.require_variable(query);
  const std::vector<int> observed = net.evidence_states(evidence);
  const std::vector<int>& order = net.topological_order();
  const int query_card = net.variable(query_var).cardinality();

  // Pre-propagate the evidence, then bias every sampling distribution by
  // the belief arriving from the variable's children.
  detail::LbpEngine lbp(net, observed);
  lbp.run(/*max_iterations=*/50, /*damping=*/0.0, /*tolerance=*/1e-9);

  std::vector<std::vector<std::vector<double>>> importance(
      net.variable_count());
  for (int var = 0; var < net.variable_count(); ++var) {
    if (observed[var] >= 0) continue;
    const std::vector<double> lambda = lbp.lambda(var);
    const Cpt& cpt = net.cpt(var);
    importance[var].reserve(cpt.rows.size());
    for (const std::vector<double>& row : cpt.rows) {
      std::vector<double> biased(row.size());
      double total = 0.0;
      for (std::size_t s = 0; s < row.size(); ++s) {
        biased[s] = row[s] * lambda[s];
        total += biased[s];
      }
      if (total > 0.0) {
        for (double& v : biased) v /= total;
      } else {
        std::fill(biased.begin(), biased.end(), 1.0 / biased.size());
      }
      // Epsilon cutoff: no state may be starved out of the proposal.
      double clipped_total = 0.0;
      for (double& v : biased) {
        v = std::max(v, epsilon);
        clipped_total += v;
      }
      for (double& v : biased) v /= clipped_total;
      importance[var].push_back(std::move(biased));
    }
  }

  BlockTally tally = run_sample_blocks(
      n, seed, threads, query_card, [&](Rng& rng, BlockTally& out) {
        Assignment sample(net.variable_count(), 0);
        double weight = 1.0;
        for (int var : order) {
          const int row_index = net.cpt_row_index(var, sample);
          const std::vector<double>& model_row = net.cpt(var).rows[row_index];
          if (observed[var] >= 0) {
            sample[var] = observed[var];
            weight *= model_row[observed[var]];
          } else {
            const std::vector<double>& proposal_row =
                importance[var][row_index];
            const int state = rng.draw_state(proposal_row);
            sample[var] = state;
            weight *= model_row[state] / proposal_row[state];
          }
        }
        out.weighted_counts[sample[query_var]] += weight;
        out.sum_weights += weight;
        out.sum_squared_weights += weight * weight;
        ++out.accepted;
      });

  if (!(tally.sum_weights > 0.0))
    fail(ErrorCode::AllZeroWeights,
         "every importance weight is 0; evidence impossible under the model");

  SamplerReport report;
  report.posterior =
      normalized_posterior(query_var, tally.weighted_counts, tally.sum_weights);
  report.requested_samples = n;
  report.accepted_samples = n;
  report.effective_sample_size =
      tally.sum_weights * tally.sum_weights / tally.sum_squared_weights;
  report.seed = seed;
  return report;
}

}  // namespace majorbn
