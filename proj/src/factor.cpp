#include "majorbn/factor.hpp"

#include <algorithm>
#include <cmath>

namespace majorbn {

namespace {

std::size_t table_size(const std::vector<int>& cards) {
  std::size_t size = 1;
  for (int card : cards) size *= static_cast<std::size_t>(card);
  return size;
}

}  // namespace

Factor Factor::from_cpt(const Network& net, int child) {
  const Cpt& cpt = net.cpt(child);

  Factor f;
  f.scope = cpt.parents;
  f.scope.push_back(child);
  std::sort(f.scope.begin(), f.scope.end());
  f.cards.reserve(f.scope.size());
  for (int var : f.scope) f.cards.push_back(net.variable(var).cardinality());
  f.values.assign(table_size(f.cards), 0.0);

  // Walk the CPT in its own order and scatter into the sorted layout.
  std::vector<int> position(net.variable_count(), -1);
  for (std::size_t i = 0; i < f.scope.size(); ++i) position[f.scope[i]] = i;

  std::vector<int> states(f.scope.size(), 0);
  const int child_card = net.variable(child).cardinality();
  for (std::size_t row = 0; row < cpt.rows.size(); ++row) {
    // Decode the row into parent states, last parent fastest.
    std::size_t rest = row;
    for (int p = static_cast<int>(cpt.parents.size()) - 1; p >= 0; --p) {
      int card = net.variable(cpt.parents[p]).cardinality();
      states[position[cpt.parents[p]]] = static_cast<int>(rest % card);
      rest /= card;
    }
    for (int c = 0; c < child_card; ++c) {
      states[position[child]] = c;
      std::size_t index = 0;
      for (std::size_t k = 0; k < f.scope.size(); ++k)
        index = index * f.cards[k] + states[k];
      f.values[index] = cpt.rows[row][c];
    }
  }
  return f;
}

Factor Factor::multiply(const Factor& other) const {
  Factor out;
  std::set_union(scope.begin(), scope.end(), other.scope.begin(),
                 other.scope.end(), std::back_inserter(out.scope));

  std::vector<int> stride_a(out.scope.size(), 0);
  std::vector<int> stride_b(out.scope.size(), 0);
  out.cards.resize(out.scope.size());
  {
    int sa = 1, sb = 1;
    // Strides accumulate right-to-left because the last variable is fastest.
    for (int k = static_cast<int>(out.scope.size()) - 1; k >= 0; --k) {
      int var = out.scope[k];
      auto ia = std::find(scope.begin(), scope.end(), var);
      auto ib = std::find(other.scope.begin(), other.scope.end(), var);
      int card = ia != scope.end() ? cards[ia - scope.begin()]
                                   : other.cards[ib - other.scope.begin()];
      out.cards[k] = card;
      if (ia != scope.end()) {
        stride_a[k] = sa;
        sa *= card;
      }
      if (ib != other.scope.end()) {
        stride_b[k] = sb;
        sb *= card;
      }
    }
  }

  out.values.assign(table_size(out.cards), 0.0);
  std::vector<int> states(out.scope.size(), 0);
  std::size_t ia = 0, ib = 0;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = values[ia] * other.values[ib];
    for (int k = static_cast<int>(out.scope.size()) - 1; k >= 0; --k) {
      ia += stride_a[k];
      ib += stride_b[k];
      if (++states[k] < out.cards[k]) break;
      ia -= static_cast<std::size_t>(stride_a[k]) * out.cards[k];
      ib -= static_cast<std::size_t>(stride_b[k]) * out.cards[k];
      states[k] = 0;
    }
  }
  return out;
}

Factor Factor::sum_out(int variable) const {
  auto it = std::find(scope.begin(), scope.end(), variable);
  if (it == scope.end()) return *this;
  const std::size_t pos = it - scope.begin();

  Factor out;
  out.scope = scope;
  out.scope.erase(out.scope.begin() + pos);
  out.cards = cards;
  out.cards.erase(out.cards.begin() + pos);
  out.values.assign(table_size(out.cards), 0.0);

  std::size_t inner = 1;  // combined cardinality right of `pos`
  for (std::size_t k = pos + 1; k < cards.size(); ++k) inner *= cards[k];
  const int card = cards[pos];

  std::size_t src = 0;
  const std::size_t outer = values.size() / (inner * card);
  for (std::size_t o = 0; o < outer; ++o)
    for (int s = 0; s < card; ++s)
      for (std::size_t i = 0; i < inner; ++i)
        out.values[o * inner + i] += values[src++];
  return out;
}

Factor Factor::condition(int variable, int state) const {
  auto it = std::find(scope.begin(), scope.end(), variable);
  if (it == scope.end()) return *this;
  const std::size_t pos = it - scope.begin();

  Factor out;
  out.scope = scope;
  out.scope.erase(out.scope.begin() + pos);
  out.cards = cards;
  out.cards.erase(out.cards.begin() + pos);
  out.values.reserve(table_size(out.cards));

  std::size_t inner = 1;
  for (std::size_t k = pos + 1; k < cards.size(); ++k) inner *= cards[k];
  const int card = cards[pos];

  const std::size_t outer = values.size() / (inner * card);
  for (std::size_t o = 0; o < outer; ++o) {
    const std::size_t base = (o * card + state) * inner;
    for (std::size_t i = 0; i < inner; ++i)
      out.values.push_back(values[base + i]);
  }
  return out;
}

bool Factor::normalize() {
  double total = 0.0;
  for (double v : values) total += v;
  if (!(total > 0.0) || !std::isfinite(total)) return false;
  for (double& v : values) v /= total;
  return true;
}

}  // namespace majorbn
