#include <algorithm>
#include <cmath>
#include <numeric>

#include "majorbn/rng.hpp"
#include "majorbn/survey.hpp"

namespace majorbn {

Network learn_cpts(const Network& structure, const SurveyDataset& dataset,
                   double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("alpha must be non-negative");

  // Map every network variable onto a dataset column with the same domain.
  std::vector<int> column_of(structure.variable_count(), -1);
  for (int var = 0; var < structure.variable_count(); ++var) {
    const Variable& variable = structure.variable(var);
    int column = dataset.column_index(variable.name);
    if (column < 0)
      fail(ErrorCode::SchemaMismatch,
           "dataset has no column '" + variable.name + "'");
    if (dataset.schema[column].states != variable.states)
      fail(ErrorCode::SchemaMismatch,
           "column '" + variable.name + "' has a different state domain");
    column_of[var] = column;
  }

  std::vector<Cpt> cpts;
  cpts.reserve(structure.variable_count());
  std::vector<Edge> edges;
  for (const auto& [parent, child] : structure.edges())
    edges.emplace_back(structure.variable(parent).name,
                       structure.variable(child).name);

  for (int child = 0; child < structure.variable_count(); ++child) {
    const Cpt& shape = structure.cpt(child);
    const int child_card = structure.variable(child).cardinality();

    Cpt learned;
    learned.child = child;
    learned.parents = shape.parents;
    learned.rows.assign(shape.rows.size(),
                        std::vector<double>(child_card, 0.0));

    std::vector<double> row_totals(shape.rows.size(), 0.0);
    for (const std::vector<std::int16_t>& record : dataset.rows) {
      if (record[column_of[child]] == SurveyDataset::kMissing) continue;
      bool usable = true;
      int row_index = 0;
      for (int parent : shape.parents) {
        const std::int16_t cell = record[column_of[parent]];
        if (cell == SurveyDataset::kMissing) {
          usable = false;
          break;
        }
        row_index =
            row_index * structure.variable(parent).cardinality() + cell;
      }
      if (!usable) continue;
      learned.rows[row_index][record[column_of[child]]] += 1.0;
      row_totals[row_index] += 1.0;
    }

    for (std::size_t r = 0; r < learned.rows.size(); ++r) {
      const double denominator = row_totals[r] + alpha * child_card;
      if (denominator > 0.0) {
        for (double& count : learned.rows[r])
          count = (count + alpha) / denominator;
      } else {
        // Unseen configuration with alpha = 0: no estimate exists.
        std::fill(learned.rows[r].begin(), learned.rows[r].end(),
                  1.0 / child_card);
      }
    }
    cpts.push_back(std::move(learned));
  }

  return Network::build(structure.variables(), edges, std::move(cpts),
                        structure.name());
}

SurveyDataset generate_synthetic(const Network& net, std::uint64_t n,
                                 std::uint64_t seed) {
  SurveyDataset dataset;
  dataset.schema = net.variables();
  dataset.rows.reserve(n);

  Rng rng(seed);
  const std::vector<int>& order = net.topological_order();
  Assignment sample(net.variable_count(), 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    for (int var : order)
      sample[var] =
          rng.draw_state(net.cpt(var).rows[net.cpt_row_index(var, sample)]);
    std::vector<std::int16_t> row(net.variable_count());
    for (int var = 0; var < net.variable_count(); ++var)
      row[var] = static_cast<std::int16_t>(sample[var]);
    dataset.rows.push_back(std::move(row));
  }
  return dataset;
}

std::pair<SurveyDataset, SurveyDataset> split_dataset(
    const SurveyDataset& dataset, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw std::invalid_argument("test_fraction must lie in (0,1)");

  const std::size_t n = dataset.row_count();
  const auto test_size = static_cast<std::size_t>(
      std::llround(static_cast<double>(n) * test_fraction));
  if (test_size == 0 || test_size >= n)
    fail(ErrorCode::DatasetTooSmall,
         std::to_string(n) + " rows cannot be split at fraction " +
             std::to_string(test_fraction));

  std::vector<std::size_t> permutation(n);
  std::iota(permutation.begin(), permutation.end(), 0);
  Rng rng(seed);
  // Fisher-Yates on our pinned generator; std::shuffle is not portable.
  for (std::size_t i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.next() % (i + 1));
    std::swap(permutation[i], permutation[j]);
  }

  SurveyDataset test;
  test.schema = dataset.schema;
  SurveyDataset train;
  train.schema = dataset.schema;
  for (std::size_t i = 0; i < n; ++i) {
    (i < test_size ? test : train)
        .rows.push_back(dataset.rows[permutation[i]]);
  }
  return {std::move(train), std::move(test)};
}

EvaluationRun evaluate_accuracy(const Network& net,
                                const SurveyDataset& test_set,
                                Algorithm algorithm,
                                std::uint64_t samples_per_query,
                                std::uint64_t seed, const std::string& target,
                                double epsilon) {
  if (test_set.row_count() == 0)
    fail(ErrorCode::EmptyTestSet, "no rows to evaluate");
  const int target_var = net.require_variable(target);
  const int target_column = test_set.column_index(target);
  if (target_column < 0)
    fail(ErrorCode::SchemaMismatch, "test set has no column '" + target + "'");
  if (test_set.schema[target_column].states != net.variable(target_var).states)
    fail(ErrorCode::SchemaMismatch,
         "target column '" + target + "' has a different state domain");

  // Columns that become evidence: present in the network, not the target.
  std::vector<std::pair<int, int>> evidence_columns;  // (column, variable)
  for (int column = 0; column < test_set.column_count(); ++column) {
    if (column == target_column) continue;
    int var = net.variable_index(test_set.schema[column].name);
    if (var >= 0) evidence_columns.emplace_back(column, var);
  }

  EvaluationRun run;
  run.algorithm = algorithm;
  run.seed = seed;
  run.samples_per_query = samples_per_query;

  for (std::size_t row_index = 0; row_index < test_set.row_count();
       ++row_index) {
    const std::vector<std::int16_t>& row = test_set.rows[row_index];
    if (row[target_column] == SurveyDataset::kMissing)
      fail(ErrorCode::SchemaMismatch,
           "row " + std::to_string(row_index) + " is missing the target");

    Evidence evidence;
    for (const auto& [column, var] : evidence_columns) {
      if (row[column] == SurveyDataset::kMissing) continue;
      evidence[net.variable(var).name] =
          net.variable(var).states[row[column]];
    }

    ++run.evaluated_rows;
    try {
      const Posterior posterior =
          query_posterior(net, evidence, target, algorithm, samples_per_query,
                          derive_seed(seed, row_index), epsilon);
      if (map_state_index(posterior) == row[target_column])
        ++run.correct_rows;
    } catch (const Error& error) {
      switch (error.code()) {
        case ErrorCode::NoAcceptedSamples:
        case ErrorCode::AllZeroWeights:
        case ErrorCode::ZeroProbabilityEvidence:
          ++run.failed_queries;  // counted as incorrect
          break;
        default:
          throw;
      }
    }
  }

  run.accuracy_percent = 100.0 * static_cast<double>(run.correct_rows) /
                         static_cast<double>(run.evaluated_rows);
  return run;
}

std::vector<EvaluationRun> run_evaluation(
    const Network& net, const SurveyDataset& dataset,
    const std::vector<Algorithm>& algorithms, int runs,
    std::uint64_t samples_per_query, std::uint64_t seed, double test_fraction,
    const std::string& target, double epsilon) {
  if (runs < 1) throw std::invalid_argument("runs must be at least 1");
  const auto [train, test] = split_dataset(dataset, test_fraction, seed);
  (void)train;  // the model under evaluation is supplied, not refit

  std::vector<EvaluationRun> table;
  table.reserve(algorithms.size() * runs);
  for (Algorithm algorithm : algorithms) {
    for (int run_index = 1; run_index <= runs; ++run_index) {
      EvaluationRun run =
          evaluate_accuracy(net, test, algorithm, samples_per_query,
                            seed + static_cast<std::uint64_t>(run_index - 1),
                            target, epsilon);
      run.run_index = run_index;
      table.push_back(run);
    }
  }
  return table;
}

}  // namespace majorbn
