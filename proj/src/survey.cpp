#include "majorbn/survey.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace majorbn {

int SurveyDataset::column_index(std::string_view name) const {
  for (int i = 0; i < column_count(); ++i)
    if (schema[i].name == name) return i;
  return -1;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (c != '\r') {
      cell.push_back(c);
    }
  }
  cells.push_back(cell);
  return cells;
}

}  // namespace

SurveyDataset load_responses(std::istream& input,
                             const std::vector<Variable>& schema) {
  std::string line;
  if (!std::getline(input, line))
    fail(ErrorCode::EmptyFile, "no header row");
  const std::vector<std::string> header = split_csv_line(line);
  if (header.size() == 1 && header[0].empty())
    fail(ErrorCode::EmptyFile, "no header row");

  SurveyDataset dataset;
  dataset.schema.reserve(header.size());
  for (const std::string& column : header) {
    auto it = std::find_if(schema.begin(), schema.end(),
                           [&](const Variable& v) { return v.name == column; });
    if (it == schema.end())
      fail(ErrorCode::UnknownVariable,
           "column '" + column + "' is not in the schema");
    if (dataset.column_index(column) >= 0)
      fail(ErrorCode::DuplicateName, "column '" + column + "' repeats");
    dataset.schema.push_back(*it);
  }

  std::size_t line_number = 1;
  while (std::getline(input, line)) {
    ++line_number;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != header.size())
      fail(ErrorCode::MalformedRow,
           "line " + std::to_string(line_number) + " has " +
               std::to_string(cells.size()) + " cells, expected " +
               std::to_string(header.size()));
    std::vector<std::int16_t> row(cells.size(), SurveyDataset::kMissing);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].empty()) continue;  // missing cell, row retained
      int state = dataset.schema[i].state_index(cells[i]);
      if (state < 0)
        fail(ErrorCode::UnknownState,
             "line " + std::to_string(line_number) + ": '" + cells[i] +
                 "' is not a state of '" + dataset.schema[i].name + "'");
      row[i] = static_cast<std::int16_t>(state);
    }
    dataset.rows.push_back(std::move(row));
  }
  return dataset;
}

SurveyDataset load_responses_file(const std::string& path,
                                  const std::vector<Variable>& schema) {
  std::ifstream input(path);
  if (!input) fail(ErrorCode::IoError, "cannot open '" + path + "'");
  return load_responses(input, schema);
}

void write_responses(const SurveyDataset& dataset, std::ostream& output) {
  for (int i = 0; i < dataset.column_count(); ++i)
    output << (i ? "," : "") << dataset.schema[i].name;
  output << '\n';
  for (const std::vector<std::int16_t>& row : dataset.rows) {
    for (int i = 0; i < dataset.column_count(); ++i) {
      if (i) output << ',';
      if (row[i] != SurveyDataset::kMissing)
        output << dataset.schema[i].states[row[i]];
    }
    output << '\n';
  }
}

void ScoreBinning::validate() const {
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (!(edges[i] > edges[i - 1]))
      fail(ErrorCode::InvalidBinning, "bin edges must be strictly increasing");
  if (edges.front() != 0.0 || edges.back() != 20.0)
    fail(ErrorCode::InvalidBinning, "bins must cover [0,20]");
}

int discretize_score(double raw_score, const ScoreBinning& binning) {
  binning.validate();
  if (!(raw_score >= binning.edges.front() &&
        raw_score <= binning.edges.back()))
    fail(ErrorCode::ScoreOutOfRange,
         "score " + std::to_string(raw_score) + " outside [0,20]");
  // Bins are left-closed right-open; the last bin also owns its upper edge.
  for (int bin = 0; bin < 4; ++bin)
    if (raw_score < binning.edges[bin + 1]) return bin;
  return 3;
}

std::array<double, 4> spectrum_frequency(const SurveyDataset& dataset,
                                         const std::string& factor) {
  const int column = dataset.column_index(factor);
  if (column < 0)
    fail(ErrorCode::UnknownVariable, "no column '" + factor + "'");
  if (!quad_scale::matches(dataset.schema[column].states))
    fail(ErrorCode::SchemaMismatch,
         "column '" + factor + "' is not quad-scale");

  std::array<std::uint64_t, 4> counts{};
  std::uint64_t observed = 0;
  for (const std::vector<std::int16_t>& row : dataset.rows) {
    if (row[column] == SurveyDataset::kMissing) continue;
    ++counts[row[column]];
    ++observed;
  }
  if (observed == 0)
    fail(ErrorCode::NoObservations,
         "column '" + factor + "' has no non-missing cells");

  std::array<double, 4> frequencies{};
  for (int level = 0; level < 4; ++level)
    frequencies[level] =
        100.0 * static_cast<double>(counts[level]) / observed;
  return frequencies;
}

double average_effect(const std::array<double, 4>& frequencies) {
  double sum = 0.0;
  for (double f : frequencies) {
    if (!(f >= 0.0) || std::isnan(f))
      fail(ErrorCode::BadFrequencyVector, "negative frequency");
    sum += f;
  }
  if (std::abs(sum - 100.0) > 1e-6)
    fail(ErrorCode::BadFrequencyVector,
         "frequencies sum to " + std::to_string(sum) + ", expected 100");
  double effect = 0.0;
  for (int level = 0; level < 4; ++level)
    effect += frequencies[level] * quad_scale::weight(level);
  return effect / 100.0;
}

std::vector<SpectrumStats> factor_report(const SurveyDataset& dataset) {
  std::vector<SpectrumStats> report;
  for (const Variable& column : dataset.schema) {
    if (!quad_scale::matches(column.states)) continue;
    SpectrumStats stats;
    stats.factor = column.name;
    try {
      stats.frequencies = spectrum_frequency(dataset, column.name);
    } catch (const Error& error) {
      if (error.code() == ErrorCode::NoObservations) continue;
      throw;
    }
    stats.average_effect = average_effect(stats.frequencies);
    report.push_back(std::move(stats));
  }
  if (report.empty())
    fail(ErrorCode::NoObservations, "no quad-scale factor has observations");
  std::stable_sort(report.begin(), report.end(),
                   [](const SpectrumStats& a, const SpectrumStats& b) {
                     return a.average_effect > b.average_effect;
                   });
  return report;
}

}  // namespace majorbn
