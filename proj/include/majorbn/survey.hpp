#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "majorbn/inference.hpp"
#include "majorbn/network.hpp"

namespace majorbn {

// Tabular categorical records, one row per student. Cells hold state
// indices into the matching schema column; kMissing marks an empty cell.
// Immutable by convention once loaded or generated.
struct SurveyDataset {
  static constexpr std::int16_t kMissing = -1;

  std::vector<Variable> schema;  // column name + expected domain, in order
  std::vector<std::vector<std::int16_t>> rows;

  std::size_t row_count() const { return rows.size(); }
  int column_count() const { return static_cast<int>(schema.size()); }
  // Index of the column called `name`, or -1.
  int column_index(std::string_view name) const;
};

// Frequency percentages of one quad-scale factor (ordered very_low, low,
// much, very_much) and their weighted mean with weights 1..4.
struct SpectrumStats {
  std::string factor;
  std::array<double, 4> frequencies{};
  double average_effect = 0.0;
};

// Accuracy of one evaluation run of one algorithm.
struct EvaluationRun {
  int run_index = 1;
  Algorithm algorithm = Algorithm::Exact;
  double accuracy_percent = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t samples_per_query = 0;
  std::uint64_t evaluated_rows = 0;
  std::uint64_t correct_rows = 0;
  // Rows whose query failed (e.g. NoAcceptedSamples); counted as incorrect.
  std::uint64_t failed_queries = 0;
};

// Maps the 0-20 grade scale onto the quad scale: four bins, left-closed
// right-open except the last. Edges must be strictly increasing and cover
// [0,20] exactly.
struct ScoreBinning {
  std::array<double, 5> edges{0.0, 10.0, 14.0, 17.0, 20.0};

  // Throws InvalidBinning.
  void validate() const;
};

// CSV dialect: UTF-8, comma separated, header row of variable names, empty
// cell = missing, no quoting (state labels are identifier-safe).
SurveyDataset load_responses(std::istream& input,
                             const std::vector<Variable>& schema);
SurveyDataset load_responses_file(const std::string& path,
                                  const std::vector<Variable>& schema);
void write_responses(const SurveyDataset& dataset, std::ostream& output);

// Quad-scale bin of a raw 0-20 score. Throws ScoreOutOfRange.
int discretize_score(double raw_score, const ScoreBinning& binning);

// Frequency percentage of each quad level among the factor's non-missing
// cells. Throws SchemaMismatch (not a quad-scale column) or NoObservations.
std::array<double, 4> spectrum_frequency(const SurveyDataset& dataset,
                                         const std::string& factor);

// (f1*1 + f2*2 + f3*3 + f4*4) / 100 for percentages summing to 100.
// Throws BadFrequencyVector.
double average_effect(const std::array<double, 4>& frequencies);

// SpectrumStats for every quad-scale factor with data, sorted by
// descending average effect. Throws NoObservations if there is none.
std::vector<SpectrumStats> factor_report(const SurveyDataset& dataset);

// Relearns every CPT of `structure` from the dataset with additive
// smoothing `alpha`: (count + alpha) / (total + alpha * states). Rows with
// a missing cell in the child or any parent are left out of that CPT's
// counts; a parent configuration with no observations and alpha = 0 falls
// back to a uniform row. Throws SchemaMismatch.
Network learn_cpts(const Network& structure, const SurveyDataset& dataset,
                   double alpha);

// n complete records forward-sampled in topological order.
SurveyDataset generate_synthetic(const Network& net, std::uint64_t n,
                                 std::uint64_t seed);

// Seeded shuffle, then |test| = round(n * test_fraction) rows to the test
// side and the rest to train. Throws DatasetTooSmall if either side would
// be empty.
std::pair<SurveyDataset, SurveyDataset> split_dataset(
    const SurveyDataset& dataset, double test_fraction, std::uint64_t seed);

// Classifies every test row: evidence is all non-missing non-target cells,
// the prediction is the posterior argmax of `algorithm`. Per-row sampler
// seeds are derive_seed(seed, row). Rows whose query errors count as
// incorrect and are tallied in failed_queries. Throws EmptyTestSet or
// SchemaMismatch.
EvaluationRun evaluate_accuracy(const Network& net,
                                const SurveyDataset& test_set,
                                Algorithm algorithm,
                                std::uint64_t samples_per_query,
                                std::uint64_t seed, const std::string& target,
                                double epsilon = kDefaultEpsilon);

// Full evaluation experiment: one shared split of `dataset` with the
// root seed, then `runs` runs per algorithm with sampler seeds
// seed, seed+1, ... The exact engine is deterministic, so its runs repeat
// the same accuracy.
std::vector<EvaluationRun> run_evaluation(
    const Network& net, const SurveyDataset& dataset,
    const std::vector<Algorithm>& algorithms, int runs,
    std::uint64_t samples_per_query, std::uint64_t seed, double test_fraction,
    const std::string& target, double epsilon = kDefaultEpsilon);

}  // namespace majorbn
