#include <doctest.h>

#include <sstream>

#include "majorbn/rng.hpp"
#include "majorbn/survey.hpp"
#include "testutil.hpp"

using namespace majorbn;

namespace {

std::vector<Variable> quad_schema(std::initializer_list<const char*> names) {
  std::vector<Variable> schema;
  for (const char* name : names) schema.push_back({name, quad_scale::states()});
  return schema;
}

// One quad column whose counts are 1 very_low, 2 low, 3 much, 4 very_much.
SurveyDataset spectrum_fixture() {
  SurveyDataset dataset;
  dataset.schema = quad_schema({"tendency"});
  for (int level = 0; level < 4; ++level)
    for (int copies = 0; copies <= level; ++copies)
      dataset.rows.push_back({static_cast<std::int16_t>(level)});
  return dataset;
}

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a majorbn::Error");
  return ErrorCode::IoError;
}

}  // namespace

TEST_SUITE_BEGIN("survey");

TEST_CASE("csv loading keeps valid rows and missing cells") {
  std::istringstream input(
      "tendency,job\n"
      "very_much,low\n"
      "much,\n"
      "low,very_low\n");
  const SurveyDataset dataset =
      load_responses(input, quad_schema({"tendency", "job"}));
  CHECK(dataset.row_count() == 3);
  CHECK(dataset.rows[0][0] == 3);
  CHECK(dataset.rows[1][1] == SurveyDataset::kMissing);
  CHECK(dataset.rows[2][1] == 0);
}

TEST_CASE("csv column order follows the file, not the schema") {
  std::istringstream input("job,tendency\nlow,very_much\n");
  const SurveyDataset dataset =
      load_responses(input, quad_schema({"tendency", "job"}));
  CHECK(dataset.schema[0].name == "job");
  CHECK(dataset.column_index("tendency") == 1);
}

TEST_CASE("csv rejects states outside the domain") {
  std::istringstream input("tendency\nmedium\n");
  CHECK(code_of([&] {
          load_responses(input, quad_schema({"tendency"}));
        }) == ErrorCode::UnknownState);
}

TEST_CASE("csv rejects rows with the wrong cell count") {
  std::istringstream input("tendency,job\nmuch\n");
  CHECK(code_of([&] {
          load_responses(input, quad_schema({"tendency", "job"}));
        }) == ErrorCode::MalformedRow);
}

TEST_CASE("csv rejects empty input") {
  std::istringstream input("");
  CHECK(code_of([&] {
          load_responses(input, quad_schema({"tendency"}));
        }) == ErrorCode::EmptyFile);
}

TEST_CASE("csv rejects unknown and repeated header columns") {
  std::istringstream unknown("nope\nmuch\n");
  CHECK(code_of([&] {
          load_responses(unknown, quad_schema({"tendency"}));
        }) == ErrorCode::UnknownVariable);
  std::istringstream repeated("tendency,tendency\nmuch,much\n");
  CHECK(code_of([&] {
          load_responses(repeated, quad_schema({"tendency"}));
        }) == ErrorCode::DuplicateName);
}

TEST_CASE("csv writing round-trips through loading") {
  const SurveyDataset dataset = spectrum_fixture();
  std::ostringstream out;
  write_responses(dataset, out);
  std::istringstream in(out.str());
  const SurveyDataset again = load_responses(in, dataset.schema);
  CHECK(again.rows == dataset.rows);
}

TEST_CASE("default binning follows the stated edges") {
  const ScoreBinning binning;
  CHECK(discretize_score(19.5, binning) == 3);   // very_much
  CHECK(discretize_score(10.0, binning) == 1);   // left-closed boundary
  CHECK(discretize_score(0.0, binning) == 0);
  CHECK(discretize_score(20.0, binning) == 3);   // last bin owns its edge
  CHECK(discretize_score(13.999, binning) == 1);
  CHECK(discretize_score(17.0, binning) == 3);
}

TEST_CASE("scores outside the scale are rejected") {
  const ScoreBinning binning;
  CHECK(code_of([&] { discretize_score(20.5, binning); }) ==
        ErrorCode::ScoreOutOfRange);
  CHECK(code_of([&] { discretize_score(-0.1, binning); }) ==
        ErrorCode::ScoreOutOfRange);
}

TEST_CASE("binning edges are validated") {
  ScoreBinning shuffled;
  shuffled.edges = {0.0, 14.0, 10.0, 17.0, 20.0};
  CHECK(code_of([&] { discretize_score(5.0, shuffled); }) ==
        ErrorCode::InvalidBinning);
  ScoreBinning shifted;
  shifted.edges = {1.0, 10.0, 14.0, 17.0, 20.0};
  CHECK(code_of([&] { discretize_score(5.0, shifted); }) ==
        ErrorCode::InvalidBinning);
}

TEST_CASE("spectrum frequencies match hand counts") {
  const SurveyDataset dataset = spectrum_fixture();
  const std::array<double, 4> freq = spectrum_frequency(dataset, "tendency");
  CHECK(freq[0] == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(freq[1] == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(freq[2] == doctest::Approx(30.0).epsilon(1e-12));
  CHECK(freq[3] == doctest::Approx(40.0).epsilon(1e-12));
}

TEST_CASE("spectrum of a constant column is a point mass") {
  SurveyDataset dataset;
  dataset.schema = quad_schema({"job"});
  for (int i = 0; i < 100; ++i) dataset.rows.push_back({3});
  const std::array<double, 4> freq = spectrum_frequency(dataset, "job");
  CHECK(freq == std::array<double, 4>{0.0, 0.0, 0.0, 100.0});
}

TEST_CASE("spectrum excludes missing cells from the denominator") {
  SurveyDataset dataset;
  dataset.schema = quad_schema({"job"});
  dataset.rows = {{0}, {SurveyDataset::kMissing}, {3}};
  const std::array<double, 4> freq = spectrum_frequency(dataset, "job");
  CHECK(freq[0] == doctest::Approx(50.0));
  CHECK(freq[3] == doctest::Approx(50.0));
}

TEST_CASE("spectrum of an all-missing column is an error") {
  SurveyDataset dataset;
  dataset.schema = quad_schema({"job"});
  dataset.rows = {{SurveyDataset::kMissing}};
  CHECK(code_of([&] { spectrum_frequency(dataset, "job"); }) ==
        ErrorCode::NoObservations);
}

TEST_CASE("spectrum requires a quad-scale column") {
  SurveyDataset dataset;
  dataset.schema = {{"major", {"a", "b", "c", "d", "e"}}};
  dataset.rows = {{0}};
  CHECK(code_of([&] { spectrum_frequency(dataset, "major"); }) ==
        ErrorCode::SchemaMismatch);
}

TEST_CASE("average effect formula values") {
  CHECK(average_effect({25.0, 25.0, 25.0, 25.0}) == 2.5);
  CHECK(average_effect({0.0, 0.0, 0.0, 100.0}) == 4.0);
  CHECK(average_effect({10.0, 20.0, 30.0, 40.0}) == 3.0);
  CHECK(average_effect({100.0, 0.0, 0.0, 0.0}) == 1.0);
}

TEST_CASE("average effect rejects bad frequency vectors") {
  CHECK(code_of([&] { average_effect({50.0, 50.0, 10.0, -10.0}); }) ==
        ErrorCode::BadFrequencyVector);
  CHECK(code_of([&] { average_effect({10.0, 10.0, 10.0, 10.0}); }) ==
        ErrorCode::BadFrequencyVector);
}

TEST_CASE("average effect is monotone under upward mass shifts") {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    std::array<double, 4> freq{};
    double total = 0.0;
    for (double& f : freq) {
      f = rng.next_unit();
      total += f;
    }
    for (double& f : freq) f *= 100.0 / total;
    const double before = average_effect(freq);

    // Move some mass from a lower weight to a strictly higher one.
    const int low = static_cast<int>(rng.next() % 3);
    const int high =
        low + 1 + static_cast<int>(rng.next() % (3 - low));
    const double moved = freq[low] * rng.next_unit();
    freq[low] -= moved;
    freq[high] += moved;
    CHECK(average_effect(freq) >= before - 1e-12);
  }
}

TEST_CASE("factor report composes frequencies and average effects") {
  const SurveyDataset dataset = spectrum_fixture();
  const std::vector<SpectrumStats> report = factor_report(dataset);
  REQUIRE(report.size() == 1);
  CHECK(report[0].factor == "tendency");
  CHECK(report[0].average_effect == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("factor report sorts by descending average effect") {
  SurveyDataset dataset;
  dataset.schema = quad_schema({"weak", "strong"});
  for (int i = 0; i < 10; ++i)
    dataset.rows.push_back({0, 3});  // weak all very_low, strong all very_much
  const std::vector<SpectrumStats> report = factor_report(dataset);
  REQUIRE(report.size() == 2);
  CHECK(report[0].factor == "strong");
  CHECK(report[1].factor == "weak");
}

TEST_CASE("uniform answers give average effect 2.5 everywhere") {
  SurveyDataset dataset;
  dataset.schema = quad_schema({"a", "b"});
  for (int level = 0; level < 4; ++level)
    dataset.rows.push_back({static_cast<std::int16_t>(level),
                            static_cast<std::int16_t>(3 - level)});
  for (const SpectrumStats& stats : factor_report(dataset))
    CHECK(stats.average_effect == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("factor report without quad columns is an error") {
  SurveyDataset dataset;
  dataset.schema = {{"major", {"a", "b", "c", "d", "e"}}};
  dataset.rows = {{0}};
  CHECK(code_of([&] { factor_report(dataset); }) ==
        ErrorCode::NoObservations);
}

TEST_CASE("spectrum frequencies always sum to 100") {
  Rng rng(1234);
  SurveyDataset dataset;
  dataset.schema = quad_schema({"f"});
  for (int i = 0; i < 500; ++i) {
    std::int16_t cell = rng.next_unit() < 0.1
                            ? SurveyDataset::kMissing
                            : static_cast<std::int16_t>(rng.next() % 4);
    dataset.rows.push_back({cell});
  }
  const std::array<double, 4> freq = spectrum_frequency(dataset, "f");
  CHECK(freq[0] + freq[1] + freq[2] + freq[3] ==
        doctest::Approx(100.0).epsilon(1e-6));
}

TEST_SUITE_END();
