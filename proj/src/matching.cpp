// Copyright 2026 The chanred Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "chanred/matching.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "chanred/weave.hpp"

namespace chanred::matching {

WeightedBipartiteGraph::WeightedBipartiteGraph(std::size_t n)
    : WeightedBipartiteGraph(n, std::vector<BigInt>(n * n, BigInt(0))) {}

WeightedBipartiteGraph::WeightedBipartiteGraph(std::size_t n, std::vector<BigInt> weights)
    : n_(n), weights_(std::move(weights)) {
  if (n_ == 0) throw std::invalid_argument("bipartite graph needs at least one vertex per side");
  if (weights_.size() != n_ * n_) throw std::invalid_argument("weight table is not n x n");
  for (const BigInt& w : weights_)
    if (w < 0) throw std::invalid_argument("weights must be nonnegative");
}

WeightedBipartiteGraph WeightedBipartiteGraph::from_rows(
    const std::vector<std::vector<BigInt>>& rows) {
  std::vector<BigInt> weights;
  for (const auto& row : rows) {
    if (row.size() != rows.size()) throw std::invalid_argument("weight table is not square");
    weights.insert(weights.end(), row.begin(), row.end());
  }
  return WeightedBipartiteGraph(rows.size(), std::move(weights));
}

void WeightedBipartiteGraph::set_weight(std::size_t left, std::size_t right, BigInt value) {
  if (value < 0) throw std::invalid_argument("weights must be nonnegative");
  weights_.at(left * n_ + right) = std::move(value);
}

BigInt WeightedBipartiteGraph::max_weight() const {
  return *std::max_element(weights_.begin(), weights_.end());
}

BigInt matching_weight(const WeightedBipartiteGraph& g, const Permutation& perm) {
  if (perm.size() != g.size() || !is_permutation(perm))
    throw std::invalid_argument("not a permutation of the graph's vertices");
  BigInt total = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) total += g.weight(i, perm[i]);
  return total;
}

namespace {

void check_budget(const WeightedBipartiteGraph& g, Budget budget) {
  if (saturating_factorial(g.size()) > budget.states)
    throw BudgetExceeded(BudgetKind::oracle, "matching enumeration needs " +
                                                 std::to_string(g.size()) +
                                                 "! permutations, budget is " +
                                                 std::to_string(budget.states));
}

// Depth-first permutation enumeration with running sums, starting from a
// fixed prefix. Visit returns true to stop the walk.
template <class Value>
class PermutationWalk {
 public:
  explicit PermutationWalk(const WeightedBipartiteGraph& g) : n_(g.size()), w_(n_ * n_) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) w_[i * n_ + j] = static_cast<Value>(g.weight(i, j));
  }

  template <class Visit>
  bool run(const Permutation& prefix, Visit&& visit) const {
    Permutation perm(prefix);
    perm.resize(n_);
    std::vector<bool> used(n_, false);
    Value sum = 0;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      used[prefix[i]] = true;
      sum += w_[i * n_ + prefix[i]];
    }
    return step(prefix.size(), sum, perm, used, visit);
  }

 private:
  template <class Visit>
  bool step(std::size_t depth, const Value& sum, Permutation& perm, std::vector<bool>& used,
            Visit& visit) const {
    if (depth == n_) return visit(sum, perm);
    for (std::size_t j = 0; j < n_; ++j) {
      if (used[j]) continue;
      used[j] = true;
      perm[depth] = j;
      const bool stop = step(depth + 1, Value(sum + w_[depth * n_ + j]), perm, used, visit);
      used[j] = false;
      if (stop) return true;
    }
    return false;
  }

  std::size_t n_;
  std::vector<Value> w_;
};

template <class Value>
void compact(std::vector<Value>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

template <class Value>
std::vector<Value> collect_sums(const WeightedBipartiteGraph& g, Exec exec) {
  const PermutationWalk<Value> walk(g);
  const std::size_t n = g.size();
  constexpr std::size_t kCompactAt = std::size_t{1} << 16;

  auto gather = [&](const Permutation& prefix, std::vector<Value>& out) {
    walk.run(prefix, [&](const Value& sum, const Permutation&) {
      out.push_back(sum);
      if (out.size() >= kCompactAt) compact(out);
      return false;
    });
    compact(out);
  };

  if (exec == Exec::serial || n < 3) {
    std::vector<Value> out;
    gather({}, out);
    return out;
  }

  std::vector<Permutation> prefixes;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b) prefixes.push_back({a, b});
  std::vector<std::vector<Value>> parts(prefixes.size());
  const auto count = static_cast<long>(prefixes.size());
#pragma omp parallel for schedule(dynamic)
  for (long t = 0; t < count; ++t) gather(prefixes[static_cast<std::size_t>(t)], parts[t]);

  std::vector<Value> out;
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  compact(out);
  return out;
}

// Exact int64 arithmetic is used whenever it cannot overflow.
bool small_weights(const WeightedBipartiteGraph& g) {
  const BigInt bound = g.max_weight() * g.size();
  return fits_int64(bound);
}

}  // namespace

WeightSet matching_weight_set(const WeightedBipartiteGraph& g, Budget budget, Exec exec) {
  check_budget(g, budget);
  std::vector<BigInt> values;
  if (small_weights(g)) {
    for (std::int64_t v : collect_sums<std::int64_t>(g, exec)) values.emplace_back(v);
  } else {
    values = collect_sums<BigInt>(g, exec);
  }
  return WeightSet(std::move(values));
}

std::optional<Permutation> find_matching(const WeightedBipartiteGraph& g, const BigInt& value,
                                         Budget budget) {
  check_budget(g, budget);
  std::optional<Permutation> found;
  const PermutationWalk<BigInt> walk(g);
  walk.run({}, [&](const BigInt& sum, const Permutation& perm) {
    if (sum != value) return false;
    found = perm;
    return true;
  });
  return found;
}

std::optional<CmwWitness> cmw_oracle(const WeightedBipartiteGraph& g1,
                                     const WeightedBipartiteGraph& g2, Budget budget,
                                     Exec exec) {
  check_budget(g1, budget);
  check_budget(g2, budget);
  const auto common =
      matching_weight_set(g1, budget, exec).smallest_common(matching_weight_set(g2, budget, exec));
  if (!common) return std::nullopt;
  return CmwWitness{*common, *find_matching(g1, *common, budget),
                    *find_matching(g2, *common, budget)};
}

std::size_t ReductionTrace::side() const {
  return static_cast<std::size_t>(saturating_pow(alphabet, length));
}

bool ReductionTrace::minimal() const {
  const std::uint64_t upper = length * saturating_pow(alphabet, length - 1);
  if (upper != slots || rows > upper) return false;
  if (length == 1) return true;
  // (b-1) * k^(b-2) < a
  return (length - 1) * saturating_pow(alphabet, length - 2) < rows;
}

std::size_t minimal_length(std::size_t rows, std::size_t alphabet) {
  if (alphabet == 0) throw std::invalid_argument("alphabet must be nonempty");
  for (std::size_t b = 1;; ++b) {
    const std::uint64_t c = saturating_pow(alphabet, b - 1);
    if (c >= rows || b * c >= rows) return b;
  }
}

FamilyGraph family_to_graph(const family::FamilyFunction& f, Budget budget) {
  ReductionTrace trace;
  trace.rows = f.rows();
  trace.alphabet = f.cols();
  trace.length = minimal_length(f.rows(), f.cols());
  const std::uint64_t side = saturating_pow(trace.alphabet, trace.length);
  if (side > budget.states)
    throw BudgetExceeded(BudgetKind::reduction,
                         "graph side " + std::to_string(trace.alphabet) + "^" +
                             std::to_string(trace.length) + " exceeds budget " +
                             std::to_string(budget.states));
  trace.slots = trace.length * static_cast<std::size_t>(saturating_pow(trace.alphabet, trace.length - 1));

  const weave::WordSpace words(trace.alphabet, trace.length);
  trace.row_at.assign(words.size() * trace.length, std::nullopt);
  std::size_t next_row = 0;
  for (std::size_t r = 0; r < words.size(); ++r)
    for (std::size_t i = 0; i < trace.length; ++i)
      if (words.letter(r, i) == 0) trace.row_at[r * trace.length + i] = next_row++;

  family::FamilyFunction extended = f.extended_to(trace.slots);
  WeightedBipartiteGraph graph(words.size());
  for (std::size_t t = 0; t < words.size(); ++t) {
    for (std::size_t u = 0; u < words.size(); ++u) {
      BigInt w = 0;
      for (std::size_t i = 0; i < trace.length; ++i)
        if (const auto row = trace.row_at[t * trace.length + i])
          w += extended.at(*row, words.letter(u, i));
      graph.set_weight(t, u, std::move(w));
    }
  }
  return FamilyGraph{std::move(graph), std::move(trace), std::move(extended)};
}

Permutation selector_to_matching(const ReductionTrace& trace, const family::Selector& selector) {
  if (selector.size() != trace.rows && selector.size() != trace.slots)
    throw std::invalid_argument("selector length " + std::to_string(selector.size()) +
                                " matches neither " + std::to_string(trace.rows) + " nor " +
                                std::to_string(trace.slots) + " rows");
  weave::Prescription alpha(trace.alphabet, trace.length);
  for (std::size_t r = 0; r < alpha.space().size(); ++r)
    for (std::size_t i = 0; i < trace.length; ++i)
      if (const auto row = trace.row_at[r * trace.length + i]) {
        const std::size_t column = *row < selector.size() ? selector[*row] : 0;
        if (column >= trace.alphabet) throw std::invalid_argument("selector column out of range");
        alpha.set(r, i, column);
      }
  return weave::build_permutation(alpha).table();
}

CmwInstance cnf_to_cmw(const cnf::CnfFormula& formula, Budget budget) {
  const family::FamilyPair families = family::cnf_to_families(formula);
  return CmwInstance{family_to_graph(families.f, budget), family_to_graph(families.g, budget)};
}

}  // namespace chanred::matching
