#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "majorbn/reference.hpp"
#include "majorbn/survey.hpp"
#include "testutil.hpp"

using namespace majorbn;

namespace {

Network parentless_binary() {
  std::vector<Variable> vars = {{"A", {"t", "f"}}};
  Cpt a;
  a.child = 0;
  a.rows = {{0.5, 0.5}};
  return Network::build(vars, {}, {a});
}

}  // namespace

TEST_SUITE_BEGIN("learning");

TEST_CASE("laplace smoothing on a parentless binary variable") {
  const Network structure = parentless_binary();
  SurveyDataset dataset;
  dataset.schema = structure.variables();
  for (int i = 0; i < 90; ++i) dataset.rows.push_back({0});
  for (int i = 0; i < 10; ++i) dataset.rows.push_back({1});
  const Network learned = learn_cpts(structure, dataset, 1.0);
  CHECK(learned.cpt(0).rows[0][0] ==
        doctest::Approx(91.0 / 102.0).epsilon(1e-12));
  CHECK(learned.cpt(0).rows[0][1] ==
        doctest::Approx(11.0 / 102.0).epsilon(1e-12));
}

TEST_CASE("an empty dataset with alpha 1 learns uniform CPTs") {
  const Network structure = testutil::diamond_network();
  SurveyDataset dataset;
  dataset.schema = structure.variables();
  const Network learned = learn_cpts(structure, dataset, 1.0);
  for (int v = 0; v < learned.variable_count(); ++v)
    for (const std::vector<double>& row : learned.cpt(v).rows)
      for (double p : row)
        CHECK(p == doctest::Approx(1.0 / row.size()).epsilon(1e-12));
}

TEST_CASE("rows with missing cells are excluded per CPT") {
  const Network structure = testutil::chain_network();
  SurveyDataset dataset;
  dataset.schema = structure.variables();
  dataset.rows = {
      {0, 0},
      {0, SurveyDataset::kMissing},  // counts for A only
      {1, 1},
  };
  const Network learned = learn_cpts(structure, dataset, 0.0);
  // A: three observations (t, t, f).
  CHECK(learned.cpt(0).rows[0][0] == doctest::Approx(2.0 / 3.0));
  // B | A=t: one observation (t); the missing row is skipped.
  CHECK(learned.cpt(1).rows[0][0] == doctest::Approx(1.0));
}

TEST_CASE("unseen parent configurations with alpha 0 become uniform") {
  const Network structure = testutil::chain_network();
  SurveyDataset dataset;
  dataset.schema = structure.variables();
  dataset.rows = {{0, 0}};  // A=f never observed
  const Network learned = learn_cpts(structure, dataset, 0.0);
  CHECK(learned.cpt(1).rows[1][0] == doctest::Approx(0.5));
}

TEST_CASE("dataset schema must cover the network") {
  const Network structure = testutil::chain_network();
  SurveyDataset dataset;
  dataset.schema = {structure.variable(0)};  // column B missing
  dataset.rows = {{0}};
  try {
    learn_cpts(structure, dataset, 1.0);
    FAIL("expected SchemaMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SchemaMismatch);
  }
}

TEST_CASE("negative alpha is refused") {
  const Network structure = parentless_binary();
  SurveyDataset dataset;
  dataset.schema = structure.variables();
  CHECK_THROWS_AS(learn_cpts(structure, dataset, -0.5),
                  std::invalid_argument);
}

TEST_CASE("learning recovers the generator on sampled data") {
  const Network truth = testutil::diamond_network();
  const SurveyDataset dataset = generate_synthetic(truth, 60000, 17);

  // Count how often every parent configuration occurs.
  std::vector<std::vector<double>> config_counts(truth.variable_count());
  for (int v = 0; v < truth.variable_count(); ++v)
    config_counts[v].assign(truth.cpt(v).rows.size(), 0.0);
  for (const auto& row : dataset.rows) {
    Assignment a(row.begin(), row.end());
    for (int v = 0; v < truth.variable_count(); ++v)
      config_counts[v][truth.cpt_row_index(v, a)] += 1.0;
  }

  const Network learned = learn_cpts(truth, dataset, 1.0);
  for (int v = 0; v < truth.variable_count(); ++v)
    for (std::size_t r = 0; r < truth.cpt(v).rows.size(); ++r) {
      if (config_counts[v][r] < 1000) continue;
      CHECK(testutil::l1_distance(learned.cpt(v).rows[r],
                                  truth.cpt(v).rows[r]) < 0.02);
    }
}

TEST_CASE("learning from an exhaustively weighted assignment table is exact") {
  // Infinite-data proxy: every complete assignment appears in proportion to
  // its joint probability at 1e-6 resolution.
  const Network truth = testutil::chain_network();
  SurveyDataset dataset;
  dataset.schema = truth.variables();
  Assignment a(truth.variable_count(), 0);
  for (;;) {
    const auto copies = static_cast<long>(
        std::llround(truth.joint_probability(a) * 1e6));
    for (long i = 0; i < copies; ++i)
      dataset.rows.push_back(
          {static_cast<std::int16_t>(a[0]), static_cast<std::int16_t>(a[1])});
    int k = truth.variable_count() - 1;
    for (; k >= 0; --k) {
      if (++a[k] < truth.variable(k).cardinality()) break;
      a[k] = 0;
    }
    if (k < 0) break;
  }
  const Network learned = learn_cpts(truth, dataset, 0.0);
  for (int v = 0; v < truth.variable_count(); ++v)
    for (std::size_t r = 0; r < truth.cpt(v).rows.size(); ++r)
      CHECK(testutil::l1_distance(learned.cpt(v).rows[r],
                                  truth.cpt(v).rows[r]) < 1e-3);
}

TEST_CASE("synthetic generation basics") {
  const Network net = testutil::diamond_network();
  CHECK(generate_synthetic(net, 0, 1).row_count() == 0);

  const SurveyDataset a = generate_synthetic(net, 500, 5);
  const SurveyDataset b = generate_synthetic(net, 500, 5);
  const SurveyDataset c = generate_synthetic(net, 500, 6);
  CHECK(a.rows == b.rows);
  CHECK(a.rows != c.rows);
}

TEST_CASE("a point-mass network generates identical rows") {
  std::vector<Variable> vars = {{"A", {"t", "f"}}, {"B", {"t", "f"}}};
  Cpt a;
  a.child = 0;
  a.rows = {{0.0, 1.0}};
  Cpt b;
  b.child = 1;
  b.parents = {0};
  b.rows = {{1.0, 0.0}, {0.0, 1.0}};
  const Network net = Network::build(vars, {{"A", "B"}}, {a, b});
  const SurveyDataset dataset = generate_synthetic(net, 50, 2);
  for (const auto& row : dataset.rows) {
    CHECK(row[0] == 1);
    CHECK(row[1] == 1);
  }
}

TEST_CASE("synthetic marginals match the exact marginals") {
  const Network net = testutil::polytree_network();
  const SurveyDataset dataset = generate_synthetic(net, 100000, 29);
  for (int v = 0; v < net.variable_count(); ++v) {
    std::vector<double> empirical(net.variable(v).cardinality(), 0.0);
    for (const auto& row : dataset.rows) empirical[row[v]] += 1.0;
    for (double& p : empirical) p /= dataset.row_count();
    const Posterior exact =
        variable_elimination(net, {}, net.variable(v).name);
    CHECK(testutil::l1_distance(empirical, exact.probabilities) < 0.02);
  }
}

TEST_CASE("generate, learn, regenerate preserves marginals") {
  const Network truth = testutil::polytree_network();
  const Network relearned =
      learn_cpts(truth, generate_synthetic(truth, 100000, 3), 1.0);
  const SurveyDataset regenerated = generate_synthetic(relearned, 100000, 4);
  for (int v = 0; v < truth.variable_count(); ++v) {
    std::vector<double> empirical(truth.variable(v).cardinality(), 0.0);
    for (const auto& row : regenerated.rows) empirical[row[v]] += 1.0;
    for (double& p : empirical) p /= regenerated.row_count();
    const Posterior exact =
        variable_elimination(truth, {}, truth.variable(v).name);
    CHECK(testutil::l1_distance(empirical, exact.probabilities) < 0.03);
  }
}

TEST_CASE("split sizes follow the fraction") {
  SurveyDataset dataset;
  dataset.schema = {{"A", {"t", "f"}}};
  for (int i = 0; i < 10; ++i)
    dataset.rows.push_back({static_cast<std::int16_t>(i % 2)});
  const auto [train, test] = split_dataset(dataset, 0.3, 1);
  CHECK(train.row_count() == 7);
  CHECK(test.row_count() == 3);
}

TEST_CASE("splitting is deterministic and an exact partition") {
  const Network net = testutil::diamond_network();
  const SurveyDataset dataset = generate_synthetic(net, 101, 8);
  const auto [train1, test1] = split_dataset(dataset, 0.25, 9);
  const auto [train2, test2] = split_dataset(dataset, 0.25, 9);
  CHECK(train1.rows == train2.rows);
  CHECK(test1.rows == test2.rows);

  auto all = train1.rows;
  all.insert(all.end(), test1.rows.begin(), test1.rows.end());
  auto expected = dataset.rows;
  std::sort(all.begin(), all.end());
  std::sort(expected.begin(), expected.end());
  CHECK(all == expected);
}

TEST_CASE("degenerate splits are refused") {
  SurveyDataset dataset;
  dataset.schema = {{"A", {"t", "f"}}};
  dataset.rows = {{0}};
  try {
    split_dataset(dataset, 0.5, 1);
    FAIL("expected DatasetTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DatasetTooSmall);
  }
  CHECK_THROWS_AS(split_dataset(dataset, 1.5, 1), std::invalid_argument);
}

TEST_CASE("a point-mass model classifies its own data perfectly") {
  std::vector<Variable> vars = {{"major", {"a", "b"}}, {"f1", {"x", "y"}}};
  Cpt m;
  m.child = 0;
  m.rows = {{0.5, 0.5}};
  Cpt f;
  f.child = 1;
  f.parents = {0};
  f.rows = {{1.0, 0.0}, {0.0, 1.0}};
  const Network net = Network::build(vars, {{"major", "f1"}}, {m, f});
  const SurveyDataset data = generate_synthetic(net, 200, 3);
  const EvaluationRun run =
      evaluate_accuracy(net, data, Algorithm::Exact, 0, 1, "major");
  CHECK(run.accuracy_percent == 100.0);
  CHECK(run.failed_queries == 0);
}

TEST_CASE("an uninformative model scores at the base rate") {
  // Features carry no signal and the prior is uniform, so prediction
  // degenerates to the tie-break state; expect about 20%.
  std::vector<Variable> vars = {{"major", {"a", "b", "c", "d", "e"}},
                                {"f1", {"x", "y"}}};
  Cpt m;
  m.child = 0;
  m.rows = {{0.2, 0.2, 0.2, 0.2, 0.2}};
  Cpt f;
  f.child = 1;
  f.parents = {0};
  f.rows.assign(5, {0.5, 0.5});
  const Network net = Network::build(vars, {{"major", "f1"}}, {m, f});
  const SurveyDataset data = generate_synthetic(net, 4000, 21);
  const EvaluationRun run =
      evaluate_accuracy(net, data, Algorithm::Exact, 0, 1, "major");
  CHECK(run.accuracy_percent > 17.0);
  CHECK(run.accuracy_percent < 23.0);
}

TEST_CASE("exact evaluation ignores the seed") {
  const Network net = reference_network();
  const SurveyDataset data = generate_synthetic(net, 300, 13);
  const EvaluationRun a =
      evaluate_accuracy(net, data, Algorithm::Exact, 0, 1, "major");
  const EvaluationRun b =
      evaluate_accuracy(net, data, Algorithm::Exact, 0, 999, "major");
  CHECK(a.accuracy_percent == b.accuracy_percent);
}

TEST_CASE("an empty test set is refused") {
  const Network net = testutil::chain_network();
  SurveyDataset empty;
  empty.schema = net.variables();
  try {
    evaluate_accuracy(net, empty, Algorithm::Exact, 0, 1, "A");
    FAIL("expected EmptyTestSet");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyTestSet);
  }
}

TEST_CASE("missing feature cells are dropped from the evidence") {
  const Network net = testutil::chain_network();
  SurveyDataset data;
  data.schema = net.variables();
  data.rows = {{0, SurveyDataset::kMissing}};
  const EvaluationRun run =
      evaluate_accuracy(net, data, Algorithm::Exact, 0, 1, "A");
  // With no evidence the prior picks A=t, which matches the row.
  CHECK(run.accuracy_percent == 100.0);
}

TEST_CASE("run_evaluation keeps the exact row constant across runs") {
  const Network net = reference_network();
  const SurveyDataset data = generate_synthetic(net, 400, 19);
  const std::vector<EvaluationRun> table = run_evaluation(
      net, data, {Algorithm::Exact}, 4, 100, 1, 0.3, "major");
  REQUIRE(table.size() == 4);
  for (const EvaluationRun& run : table)
    CHECK(run.accuracy_percent == table[0].accuracy_percent);
}

TEST_SUITE_END();
