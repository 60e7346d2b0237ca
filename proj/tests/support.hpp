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

// Random generators and brute-force oracles shared by the unit tests and the
// acceptance gate. The oracles deliberately avoid the library's enumeration
// code: plain counters, std::next_permutation and exhaustive colorings.

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "chanred/channel.hpp"
#include "chanred/cnf.hpp"
#include "chanred/family.hpp"
#include "chanred/matching.hpp"
#include "chanred/weave.hpp"

namespace chanred::testing {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline cnf::CnfFormula random_formula(Rng& rng, std::size_t max_vars, std::size_t max_clauses,
                                      int width) {
  const std::size_t n = uniform(rng, 1, max_vars);
  const std::size_t m = uniform(rng, 1, max_clauses);
  std::vector<cnf::Clause> clauses(m);
  for (auto& clause : clauses)
    for (int p = 0; p < width; ++p)
      clause.push_back(cnf::Literal{uniform(rng, 0, n - 1), uniform(rng, 0, 1) == 1});
  return cnf::CnfFormula(n, std::move(clauses), width);
}

inline family::FamilyFunction random_family(Rng& rng, std::size_t rows, std::size_t cols,
                                            std::size_t max_value) {
  family::FamilyFunction f(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) f.set(r, c, BigInt(uniform(rng, 0, max_value)));
  return f;
}

inline matching::WeightedBipartiteGraph random_graph(Rng& rng, std::size_t n,
                                                     std::size_t max_weight) {
  matching::WeightedBipartiteGraph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g.set_weight(i, j, BigInt(uniform(rng, 0, max_weight)));
  return g;
}

inline channel::CaInstance random_instance(Rng& rng, std::size_t n, std::size_t max_d,
                                           std::size_t s) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  channel::CaInstance I(names, BigInt(s));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) I.set_distance(x, y, BigInt(uniform(rng, 0, max_d)));
  return I;
}

// Direct clause evaluation over all 2^n assignments.
inline bool brute_satisfiable(const cnf::CnfFormula& f) {
  const std::size_t n = f.variable_count();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool all = true;
    for (const auto& clause : f.clauses()) {
      bool any = false;
      for (const auto& lit : clause) any = any || (((mask >> lit.variable) & 1u) == 1u) == lit.positive;
      if (!any) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

// Mixed-radix counter over all selectors.
inline std::set<BigInt> brute_family(const family::FamilyFunction& f) {
  std::set<BigInt> out;
  std::vector<std::size_t> digit(f.rows(), 0);
  while (true) {
    BigInt sum = 0;
    for (std::size_t r = 0; r < f.rows(); ++r) sum += f.at(r, digit[r]);
    out.insert(sum);
    std::size_t r = 0;
    while (r < f.rows() && ++digit[r] == f.cols()) digit[r++] = 0;
    if (r == f.rows()) break;
  }
  return out;
}

inline std::set<BigInt> brute_matchings(const matching::WeightedBipartiteGraph& g) {
  std::set<BigInt> out;
  std::vector<std::size_t> perm(g.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    BigInt sum = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) sum += g.weight(i, perm[i]);
    out.insert(sum);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

inline std::set<BigInt> as_set(const WeightSet& w) {
  return std::set<BigInt>(w.values().begin(), w.values().end());
}

// Every YES-coloring with colors in [1, top].
inline std::vector<channel::Coloring> brute_yes_colorings(const channel::CaInstance& I,
                                                          std::size_t top) {
  std::vector<channel::Coloring> out;
  const std::size_t n = I.size();
  std::vector<std::size_t> c(n, 1);
  while (true) {
    channel::Coloring col(c.begin(), c.end());
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      for (std::size_t y = x + 1; y < n && ok; ++y) {
        const BigInt gap = c[x] > c[y] ? c[x] - c[y] : c[y] - c[x];
        ok = gap >= I.distance(x, y);
      }
    if (ok && n > 0) {
      const auto [lo, hi] = std::minmax_element(c.begin(), c.end());
      ok = BigInt(*hi - *lo + 1) <= I.span_bound();
    }
    if (ok) out.push_back(col);
    std::size_t i = 0;
    while (i < n && ++c[i] > top) c[i++] = 1;
    if (i == n) break;
  }
  return out;
}

// Minimum span over colorings in [1, top]; nullopt if none is proper.
inline std::optional<BigInt> brute_min_span(const channel::CaInstance& I, std::size_t top) {
  const std::size_t n = I.size();
  std::optional<BigInt> best;
  std::vector<std::size_t> c(n, 1);
  while (true) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      for (std::size_t y = x + 1; y < n && ok; ++y) {
        const std::size_t gap = c[x] > c[y] ? c[x] - c[y] : c[y] - c[x];
        ok = BigInt(gap) >= I.distance(x, y);
      }
    if (ok) {
      const auto [lo, hi] = std::minmax_element(c.begin(), c.end());
      const BigInt span(*hi - *lo + 1);
      if (!best || span < *best) best = span;
    }
    std::size_t i = 0;
    while (i < n && ++c[i] > top) c[i++] = 1;
    if (i == n) break;
  }
  return best;
}

// Minimum greedy span over all n! orderings.
inline BigInt brute_ordering_span(const channel::CaInstance& I) {
  std::vector<std::size_t> order(I.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::optional<BigInt> best;
  do {
    // c(o_i) = max(1, max_{j<i} c(o_j) + d(o_j, o_i))
    std::vector<BigInt> c(I.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      BigInt v = 1;
      for (std::size_t j = 0; j < i; ++j) v = std::max(v, BigInt(c[order[j]] + I.distance(order[j], order[i])));
      c[order[i]] = v;
    }
    const BigInt span = *std::max_element(c.begin(), c.end());
    if (!best || span < *best) best = span;
  } while (std::next_permutation(order.begin(), order.end()));
  return *best;
}

inline weave::WordPermutation random_word_permutation(Rng& rng, std::size_t k, std::size_t b) {
  const weave::WordSpace space(k, b);
  std::vector<std::size_t> table(space.size());
  std::iota(table.begin(), table.end(), std::size_t{0});
  std::shuffle(table.begin(), table.end(), rng);
  return weave::WordPermutation(k, b, table);
}

inline weave::Prescription random_prescription(Rng& rng, std::size_t k, std::size_t b) {
  weave::Prescription alpha(k, b);
  for (std::size_t r = 0; r < alpha.space().size(); ++r)
    for (std::size_t i = 0; i < b; ++i)
      if (alpha.space().letter(r, i) == 0) alpha.set(r, i, uniform(rng, 0, k - 1));
  return alpha;
}

}  // namespace chanred::testing
