#include "src/lbp_internal.hpp"

#include <algorithm>
#include <cmath>

namespace majorbn {

namespace detail {

namespace {

void normalize_message(std::vector<double>& message) {
  double total = 0.0;
  for (double v : message) total += v;
  if (total > 0.0) {
    for (double& v : message) v /= total;
  } else {
    std::fill(message.begin(), message.end(), 1.0 / message.size());
  }
}

}  // namespace

LbpEngine::LbpEngine(const Network& net, const std::vector<int>& observed)
    : net_(net) {
  const int n = net.variable_count();
  factors_.reserve(n);
  var_edges_.resize(n);
  messages_.resize(n);

  for (int i = 0; i < n; ++i) {
    Factor f = Factor::from_cpt(net, i);
    for (int var : std::vector<int>(f.scope))
      if (observed[var] >= 0) f = f.condition(var, observed[var]);
    for (std::size_t k = 0; k < f.scope.size(); ++k)
      var_edges_[f.scope[k]].push_back({i, static_cast<int>(k)});
    messages_[i].resize(f.scope.size());
    factors_.push_back(std::move(f));
  }

  // Messages start as the single-pass marginals of each factor, i.e. the
  // result of one sweep from uniform variable messages.
  for (int f = 0; f < n; ++f) {
    for (std::size_t k = 0; k < factors_[f].scope.size(); ++k) {
      Factor marg = factors_[f];
      for (std::size_t j = 0; j < factors_[f].scope.size(); ++j)
        if (j != k) marg = marg.sum_out(factors_[f].scope[j]);
      messages_[f][k] = std::move(marg.values);
      normalize_message(messages_[f][k]);
    }
  }
}

int LbpEngine::run(int max_iterations, double damping, double tolerance) {
  int iterations = 0;
  converged_ = false;
  while (iterations < max_iterations) {
    ++iterations;
    double max_change = 0.0;

    // Variable -> factor messages from the current factor -> variable set.
    std::vector<std::vector<std::vector<double>>> incoming(messages_.size());
    for (std::size_t f = 0; f < factors_.size(); ++f) {
      incoming[f].resize(factors_[f].scope.size());
      for (std::size_t k = 0; k < factors_[f].scope.size(); ++k) {
        incoming[f][k] =
            product_into(factors_[f].scope[k], static_cast<int>(f));
        normalize_message(incoming[f][k]);
      }
    }

    for (std::size_t f = 0; f < factors_.size(); ++f) {
      const Factor& factor = factors_[f];
      for (std::size_t k = 0; k < factor.scope.size(); ++k) {
        Factor message = factor;
        for (std::size_t j = 0; j < factor.scope.size(); ++j) {
          if (j == k) continue;
          Factor in;
          in.scope = {factor.scope[j]};
          in.cards = {factor.cards[j]};
          in.values = incoming[f][j];
          message = message.multiply(in).sum_out(factor.scope[j]);
        }
        normalize_message(message.values);
        std::vector<double>& old = messages_[f][k];
        for (std::size_t s = 0; s < old.size(); ++s) {
          double next = damping * old[s] + (1.0 - damping) * message.values[s];
          max_change = std::max(max_change, std::abs(next - old[s]));
          old[s] = next;
        }
      }
    }

    if (max_change < tolerance) {
      converged_ = true;
      break;
    }
  }
  return iterations;
}

std::vector<double> LbpEngine::product_into(int var, int skip_factor) const {
  std::vector<double> product(net_.variable(var).cardinality(), 1.0);
  for (const EdgeRef& edge : var_edges_[var]) {
    if (edge.factor == skip_factor) continue;
    const std::vector<double>& message = messages_[edge.factor][edge.position];
    for (std::size_t s = 0; s < product.size(); ++s) product[s] *= message[s];
  }
  return product;
}

std::vector<double> LbpEngine::belief(int var) const {
  std::vector<double> b = product_into(var, -1);
  normalize_message(b);
  return b;
}

std::vector<double> LbpEngine::lambda(int var) const {
  std::vector<double> l = product_into(var, var);
  normalize_message(l);
  return l;
}

}  // namespace detail

LbpResult loopy_belief_propagation(const Network& net, const Evidence& evidence,
                                   int max_iterations, double damping,
                                   double tolerance) {
  if (max_iterations < 1)
    throw std::invalid_argument("max_iterations must be at least 1");
  if (!(damping >= 0.0 && damping < 1.0))
    throw std::invalid_argument("damping must lie in [0,1)");
  if (!(tolerance > 0.0))
    throw std::invalid_argument("tolerance must be positive");

  const std::vector<int> observed = net.evidence_states(evidence);
  detail::LbpEngine engine(net, observed);

  LbpResult result;
  result.iterations = engine.run(max_iterations, damping, tolerance);
  result.converged = engine.converged();
  result.marginals.reserve(net.variable_count());
  for (int i = 0; i < net.variable_count(); ++i) {
    Posterior marginal;
    marginal.variable = i;
    if (observed[i] >= 0) {
      marginal.probabilities.assign(net.variable(i).cardinality(), 0.0);
      marginal.probabilities[observed[i]] = 1.0;
    } else {
      marginal.probabilities = engine.belief(i);
    }
    result.marginals.push_back(std::move(marginal));
  }
  return result;
}

}  // namespace majorbn
