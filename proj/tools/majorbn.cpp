#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "majorbn/inference.hpp"
#include "majorbn/netfile.hpp"
#include "majorbn/network.hpp"
#include "majorbn/survey.hpp"

namespace {

using namespace majorbn;

struct RunConfig {
  std::string network_path;
  std::string data_path;
  std::vector<std::string> algorithms;
  std::uint64_t samples = kDefaultSamples;
  std::uint64_t seed = 1;
  double epsilon = kDefaultEpsilon;
  double alpha = 1.0;
  double test_fraction = 0.3;
  int runs = 9;
  std::string output_path;
  std::string format = "text";
  std::vector<std::string> evidence_pairs;
  std::string query;
  std::string target = "major";
};

Evidence parse_evidence(const std::vector<std::string>& pairs) {
  Evidence evidence;
  for (const std::string& pair : pairs) {
    const std::size_t eq = pair.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == pair.size())
      throw CLI::ValidationError("--evidence", "expected name=state, got '" +
                                                   pair + "'");
    evidence[pair.substr(0, eq)] = pair.substr(eq + 1);
  }
  return evidence;
}

// Writes to the output path when given, otherwise to stdout.
void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write '" + output_path + "'");
  out << text;
}

std::string format_probability(double p) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.9f", p);
  return buffer;
}

std::string posterior_block(const Network& net, const Posterior& posterior) {
  const Variable& variable = net.variable(posterior.variable);
  std::ostringstream out;
  out << "posterior " << variable.name << "\n";
  for (std::size_t s = 0; s < variable.states.size(); ++s)
    out << "  " << variable.states[s] << ' '
        << format_probability(posterior.probabilities[s]) << "\n";
  out << "map " << variable.name << ": " << map_state(net, posterior) << "\n";
  return out.str();
}

int cmd_validate(const RunConfig& config) {
  const Network net = load_network(config.network_path);
  std::cout << net.name() << ": " << net.variable_count() << " nodes, "
            << net.edge_count() << " edges, " << net.total_cpt_rows()
            << " cpt rows\n";
  return 0;
}

int cmd_infer(const RunConfig& config, const std::string& query) {
  const Network net = load_network(config.network_path);
  const Evidence evidence = parse_evidence(config.evidence_pairs);
  if (evidence.count(query))
    throw CLI::ValidationError("--query",
                               "query variable is part of the evidence");
  const Algorithm algorithm = parse_algorithm(config.algorithms.empty()
                                                  ? "exact"
                                                  : config.algorithms.front());
  std::ostringstream out;
  if (algorithm == Algorithm::Exact) {
    out << posterior_block(
        net, variable_elimination(net, evidence, query));
  } else {
    SamplerReport report;
    switch (algorithm) {
      case Algorithm::Logic:
        report = logic_sampling(net, evidence, query, config.samples,
                                config.seed);
        break;
      case Algorithm::Likelihood:
        report = likelihood_weighting(net, evidence, query, config.samples,
                                      config.seed);
        break;
      default:
        report = epis_sampling(net, evidence, query, config.samples,
                               config.seed, config.epsilon);
        break;
    }
    out << posterior_block(net, report.posterior);
    char line[160];
    std::snprintf(line, sizeof(line),
                  "samples requested=%llu accepted=%llu ess=%.3f seed=%llu\n",
                  static_cast<unsigned long long>(report.requested_samples),
                  static_cast<unsigned long long>(report.accepted_samples),
                  report.effective_sample_size,
                  static_cast<unsigned long long>(report.seed));
    out << line;
  }
  emit(out.str(), config.output_path);
  return 0;
}

int cmd_stats(const RunConfig& config) {
  const Network net = load_network(config.network_path);
  const SurveyDataset dataset =
      load_responses_file(config.data_path, net.variables());
  const std::vector<SpectrumStats> report = factor_report(dataset);

  std::ostringstream out;
  if (config.format == "csv") {
    out << "factor,very_low,low,much,very_much,average_effect\n";
    for (const SpectrumStats& stats : report) {
      char line[256];
      std::snprintf(line, sizeof(line), "%s,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                    stats.factor.c_str(), stats.frequencies[0],
                    stats.frequencies[1], stats.frequencies[2],
                    stats.frequencies[3], stats.average_effect);
      out << line;
    }
  } else {
    char line[256];
    std::snprintf(line, sizeof(line), "%-22s %9s %9s %9s %9s %9s\n", "factor",
                  "very_low", "low", "much", "very_much", "avg_effect");
    out << line;
    for (const SpectrumStats& stats : report) {
      std::snprintf(line, sizeof(line), "%-22s %8.2f%% %8.2f%% %8.2f%% %8.2f%% %9.3f\n",
                    stats.factor.c_str(), stats.frequencies[0],
                    stats.frequencies[1], stats.frequencies[2],
                    stats.frequencies[3], stats.average_effect);
      out << line;
    }
  }
  emit(out.str(), config.output_path);
  return 0;
}

int cmd_learn(const RunConfig& config) {
  const Network structure = load_network(config.network_path);
  const SurveyDataset dataset =
      load_responses_file(config.data_path, structure.variables());
  const Network learned = learn_cpts(structure, dataset, config.alpha);
  if (config.output_path.empty())
    throw CLI::ValidationError("--output", "learn needs an output path");
  save_network(learned, config.output_path);
  std::cout << "learned " << config.output_path << ": "
            << learned.variable_count() << " nodes, " << learned.edge_count()
            << " edges, from " << dataset.row_count() << " rows\n";
  return 0;
}

int cmd_generate(const RunConfig& config) {
  const Network net = load_network(config.network_path);
  const SurveyDataset dataset =
      generate_synthetic(net, config.samples, config.seed);
  std::ostringstream out;
  write_responses(dataset, out);
  emit(out.str(), config.output_path);
  return 0;
}

int cmd_import(const RunConfig& config) {
  const Network net = load_xdsl(config.network_path);
  if (config.output_path.empty())
    throw CLI::ValidationError("--output", "import needs an output path");
  save_network(net, config.output_path);
  std::cout << "imported " << net.name() << ": " << net.variable_count()
            << " nodes, " << net.edge_count() << " edges\n";
  return 0;
}

int cmd_evaluate(const RunConfig& config) {
  const Network net = load_network(config.network_path);
  const SurveyDataset dataset =
      load_responses_file(config.data_path, net.variables());

  std::vector<Algorithm> algorithms;
  if (config.algorithms.empty()) {
    algorithms = {Algorithm::Exact, Algorithm::Logic, Algorithm::Likelihood,
                  Algorithm::Epis};
  } else {
    for (const std::string& name : config.algorithms)
      algorithms.push_back(parse_algorithm(name));
  }

  const std::vector<EvaluationRun> table = run_evaluation(
      net, dataset, algorithms, config.runs, config.samples, config.seed,
      config.test_fraction, config.target, config.epsilon);

  std::ostringstream out;
  if (config.format == "csv") {
    out << "algorithm,run,seed,samples_per_query,test_rows,correct,failed,"
           "accuracy_percent\n";
    for (const EvaluationRun& run : table) {
      char line[256];
      std::snprintf(line, sizeof(line), "%s,%d,%llu,%llu,%llu,%llu,%llu,%.4f\n",
                    algorithm_name(run.algorithm), run.run_index,
                    static_cast<unsigned long long>(run.seed),
                    static_cast<unsigned long long>(run.samples_per_query),
                    static_cast<unsigned long long>(run.evaluated_rows),
                    static_cast<unsigned long long>(run.correct_rows),
                    static_cast<unsigned long long>(run.failed_queries),
                    run.accuracy_percent);
      out << line;
    }
  } else {
    char cell[64];
    std::snprintf(cell, sizeof(cell), "%-12s", "algorithm");
    out << cell;
    for (int run = 1; run <= config.runs; ++run) {
      std::snprintf(cell, sizeof(cell), " %6d", run);
      out << cell;
    }
    out << "\n";
    for (Algorithm algorithm : algorithms) {
      std::snprintf(cell, sizeof(cell), "%-12s", algorithm_name(algorithm));
      out << cell;
      for (const EvaluationRun& run : table) {
        if (run.algorithm != algorithm) continue;
        std::snprintf(cell, sizeof(cell), " %5.1f%%", run.accuracy_percent);
        out << cell;
      }
      out << "\n";
    }
  }
  emit(out.str(), config.output_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete Bayesian-network engine for academic-major counseling"};
  app.require_subcommand(1);

  RunConfig config;

  auto add_common = [&](CLI::App* sub, bool with_data) {
    sub->add_option("--network", config.network_path, "network file")
        ->required();
    if (with_data)
      sub->add_option("--data", config.data_path, "CSV dataset")->required();
    sub->add_option("--output", config.output_path, "write output here");
    return sub;
  };

  CLI::App* validate = app.add_subcommand("validate", "check a network file");
  validate->add_option("--network", config.network_path)->required();

  CLI::App* stats =
      add_common(app.add_subcommand("stats", "factor spectrum report"), true);
  stats->add_option("--format", config.format)
      ->check(CLI::IsMember({"text", "csv"}));

  CLI::App* learn = add_common(
      app.add_subcommand("learn", "estimate CPTs from data"), true);
  learn->add_option("--alpha", config.alpha, "additive smoothing")
      ->check(CLI::NonNegativeNumber);

  CLI::App* infer = add_common(
      app.add_subcommand("infer", "posterior of any variable"), false);
  infer->add_option("--query", config.query, "query variable")->required();
  infer->add_option("--evidence", config.evidence_pairs, "name=state")
      ->take_all();
  infer->add_option("--algorithm", config.algorithms)
      ->check(CLI::IsMember({"exact", "logic", "likelihood", "epis"}));
  infer->add_option("--samples", config.samples);
  infer->add_option("--seed", config.seed);
  infer->add_option("--epsilon", config.epsilon)
      ->check(CLI::Range(1e-9, 0.499999));

  CLI::App* predict = add_common(
      app.add_subcommand("predict", "posterior over the academic major"),
      false);
  predict->add_option("--evidence", config.evidence_pairs, "name=state")
      ->take_all();
  predict->add_option("--target", config.target, "class variable");
  predict->add_option("--algorithm", config.algorithms)
      ->check(CLI::IsMember({"exact", "logic", "likelihood", "epis"}));
  predict->add_option("--samples", config.samples);
  predict->add_option("--seed", config.seed);
  predict->add_option("--epsilon", config.epsilon)
      ->check(CLI::Range(1e-9, 0.499999));

  CLI::App* evaluate = add_common(
      app.add_subcommand("evaluate", "accuracy per algorithm and run"), true);
  evaluate->add_option("--algorithm", config.algorithms, "repeatable")
      ->check(CLI::IsMember({"exact", "logic", "likelihood", "epis"}));
  evaluate->add_option("--runs", config.runs)->check(CLI::PositiveNumber);
  evaluate->add_option("--samples", config.samples)
      ->check(CLI::PositiveNumber);
  evaluate->add_option("--seed", config.seed);
  evaluate->add_option("--test-fraction", config.test_fraction)
      ->check(CLI::Range(1e-9, 0.999999));
  evaluate->add_option("--target", config.target, "class variable");
  evaluate->add_option("--epsilon", config.epsilon)
      ->check(CLI::Range(1e-9, 0.499999));
  evaluate->add_option("--format", config.format)
      ->check(CLI::IsMember({"text", "csv"}));

  CLI::App* generate = add_common(
      app.add_subcommand("generate", "forward-sample a synthetic dataset"),
      false);
  generate->add_option("--samples", config.samples, "rows to generate");
  generate->add_option("--seed", config.seed);

  CLI::App* import_cmd = add_common(
      app.add_subcommand("import", "convert a GeNIe XDSL file"), false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(config);
    if (stats->parsed()) return cmd_stats(config);
    if (learn->parsed()) return cmd_learn(config);
    if (infer->parsed()) return cmd_infer(config, config.query);
    if (predict->parsed()) return cmd_infer(config, config.target);
    if (evaluate->parsed()) return cmd_evaluate(config);
    if (generate->parsed()) return cmd_generate(config);
    if (import_cmd->parsed()) return cmd_import(config);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return error_exit_code(e.code());
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
