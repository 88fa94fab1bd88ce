#include <doctest.h>

#include "majorbn/inference.hpp"
#include "majorbn/rng.hpp"
#include "testutil.hpp"

using namespace majorbn;
using testutil::kChainPosteriorAT;

namespace {

Network independent_binaries(int count) {
  std::vector<Variable> vars;
  std::vector<Cpt> cpts;
  for (int i = 0; i < count; ++i) {
    vars.push_back({"b" + std::to_string(i), {"t", "f"}});
    Cpt cpt;
    cpt.child = i;
    cpt.rows = {{0.5, 0.5}};
    cpts.push_back(cpt);
  }
  return Network::build(std::move(vars), {}, std::move(cpts));
}

}  // namespace

TEST_SUITE_BEGIN("inference");

TEST_CASE("enumeration of a root with empty evidence returns its prior") {
  const Network net = testutil::diamond_network();
  const Posterior p = enumerate_posterior(net, {}, "A");
  CHECK(p.probabilities[0] == doctest::Approx(0.35).epsilon(1e-12));
  CHECK(p.probabilities[1] == doctest::Approx(0.65).epsilon(1e-12));
}

TEST_CASE("enumeration solves the chain example") {
  const Network net = testutil::chain_network();
  const Posterior p = enumerate_posterior(net, {{"B", "t"}}, "A");
  CHECK(p.probabilities[0] == doctest::Approx(kChainPosteriorAT).epsilon(1e-6));
  CHECK(p.probabilities[0] == doctest::Approx(0.870968).epsilon(1e-5));
}

TEST_CASE("evidence contradicting a point-mass CPT has zero probability") {
  std::vector<Variable> vars = {{"A", {"t", "f"}}, {"B", {"t", "f"}}};
  Cpt a;
  a.child = 0;
  a.rows = {{1.0, 0.0}};
  Cpt b;
  b.child = 1;
  b.parents = {0};
  b.rows = {{1.0, 0.0}, {0.0, 1.0}};
  const Network net = Network::build(vars, {{"A", "B"}}, {a, b});
  try {
    enumerate_posterior(net, {{"B", "f"}}, "A");
    FAIL("expected ZeroProbabilityEvidence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroProbabilityEvidence);
  }
  try {
    variable_elimination(net, {{"B", "f"}}, "A");
    FAIL("expected ZeroProbabilityEvidence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroProbabilityEvidence);
  }
}

TEST_CASE("enumeration refuses oversized state spaces") {
  const Network net = independent_binaries(25);
  try {
    enumerate_posterior(net, {}, "b0");
    FAIL("expected StateSpaceTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StateSpaceTooLarge);
  }
}

TEST_CASE("querying an evidence variable is refused") {
  const Network net = testutil::chain_network();
  CHECK_THROWS_AS(enumerate_posterior(net, {{"A", "t"}}, "A"), Error);
  CHECK_THROWS_AS(variable_elimination(net, {{"A", "t"}}, "A"), Error);
}

TEST_CASE("variable elimination solves the chain example") {
  const Network net = testutil::chain_network();
  const Posterior p = variable_elimination(net, {{"B", "t"}}, "A");
  CHECK(p.probabilities[0] == doctest::Approx(kChainPosteriorAT).epsilon(1e-9));
}

TEST_CASE("variable elimination of a disconnected query returns its marginal") {
  std::vector<Variable> vars = {{"A", {"t", "f"}}, {"B", {"t", "f"}},
                                {"solo", {"x", "y", "z"}}};
  Cpt a;
  a.child = 0;
  a.rows = {{0.6, 0.4}};
  Cpt b;
  b.child = 1;
  b.parents = {0};
  b.rows = {{0.9, 0.1}, {0.2, 0.8}};
  Cpt solo;
  solo.child = 2;
  solo.rows = {{0.5, 0.3, 0.2}};
  const Network net = Network::build(vars, {{"A", "B"}}, {a, b, solo});
  const Posterior p = variable_elimination(net, {{"B", "t"}}, "solo");
  CHECK(p.probabilities[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p.probabilities[1] == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("variable elimination matches enumeration on random networks") {
  Rng rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    const Network net = testutil::random_network(rng, 2 + trial % 9);
    Evidence evidence;
    const int observed =
        static_cast<int>(rng.next() % 3) % net.variable_count();
    for (int i = 0; i < observed; ++i) {
      const int var =
          static_cast<int>(rng.next() % net.variable_count());
      const Variable& v = net.variable(var);
      evidence[v.name] = v.states[rng.next() % v.states.size()];
    }
    for (int q = 0; q < net.variable_count(); ++q) {
      const std::string& name = net.variable(q).name;
      if (evidence.count(name)) continue;
      const Posterior exact = enumerate_posterior(net, evidence, name);
      const Posterior ve = variable_elimination(net, evidence, name);
      CHECK(testutil::max_abs_diff(exact.probabilities, ve.probabilities) <=
            1e-9);
    }
  }
}

TEST_CASE("posteriors are normalized") {
  Rng rng(4242);
  for (int trial = 0; trial < 20; ++trial) {
    const Network net = testutil::random_network(rng, 2 + trial % 6);
    const Posterior p = variable_elimination(net, {}, net.variable(0).name);
    double total = 0.0;
    for (double value : p.probabilities) {
      CHECK(value >= 0.0);
      CHECK(value <= 1.0);
      total += value;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("map state takes the unique maximum") {
  Posterior p;
  p.probabilities = {0.1, 0.7, 0.2};
  CHECK(map_state_index(p) == 1);
}

TEST_CASE("map state breaks ties toward the lowest index") {
  Posterior p;
  p.probabilities = {0.5, 0.5};
  CHECK(map_state_index(p) == 0);
}

TEST_CASE("map state of a point mass is its state") {
  Posterior p;
  p.probabilities = {0.0, 0.0, 1.0, 0.0};
  CHECK(map_state_index(p) == 2);
  const Network net = testutil::diamond_network();
  Posterior q = variable_elimination(net, {}, "B");
  q.probabilities = {0.0, 1.0, 0.0};
  CHECK(map_state(net, q) == "b1");
}

TEST_CASE("algorithm names round-trip") {
  CHECK(parse_algorithm("exact") == Algorithm::Exact);
  CHECK(parse_algorithm("logic") == Algorithm::Logic);
  CHECK(parse_algorithm("likelihood") == Algorithm::Likelihood);
  CHECK(parse_algorithm("epis") == Algorithm::Epis);
  CHECK_THROWS_AS(parse_algorithm("gibbs"), Error);
  CHECK(std::string(algorithm_name(Algorithm::Epis)) == "epis");
}

TEST_SUITE_END();
