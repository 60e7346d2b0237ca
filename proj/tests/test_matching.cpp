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

#include <doctest.h>

#include "chanred/matching.hpp"
#include "support.hpp"

using namespace chanred;
using namespace chanred::matching;

namespace {

WeightedBipartiteGraph graph(std::initializer_list<std::initializer_list<int>> rows) {
  std::vector<std::vector<BigInt>> out;
  for (const auto& r : rows) out.emplace_back(r.begin(), r.end());
  return WeightedBipartiteGraph::from_rows(out);
}

std::vector<BigInt> ints(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

// f(r, c) = 4^r * (1 + c): every cell is a distinct digit of a base-4 sum.
family::FamilyFunction symbolic(std::size_t rows) {
  family::FamilyFunction f(rows, 2);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < 2; ++c) f.set(r, c, BigInt(1 + c) << (2 * r));
  return f;
}

}  // namespace

TEST_CASE("matching_weight_set small graphs") {
  CHECK(matching_weight_set(WeightedBipartiteGraph(3)).values() == ints({0}));
  CHECK(matching_weight_set(graph({{1, 2}, {3, 4}})).values() == ints({5}));
  CHECK(matching_weight_set(graph({{5, 9}, {0, 0}})).values() == ints({5, 9}));
}

TEST_CASE("matching_weight_set matches next_permutation, serial and parallel") {
  testing::Rng rng(12);
  for (int t = 0; t < 60; ++t) {
    const auto g = testing::random_graph(rng, testing::uniform(rng, 1, 7), 30);
    const auto serial = matching_weight_set(g, {}, Exec::serial);
    CHECK(testing::as_set(serial) == testing::brute_matchings(g));
    CHECK(matching_weight_set(g, {}, Exec::parallel) == serial);
  }
}

TEST_CASE("matching_weight_set handles weights beyond 64 bits") {
  WeightedBipartiteGraph g(3);
  const BigInt big = BigInt(1) << 100;
  for (std::size_t i = 0; i < 3; ++i) g.set_weight(i, i, big);
  const auto set = matching_weight_set(g);
  CHECK(set.max() == 3 * big);
  CHECK(testing::as_set(set) == testing::brute_matchings(g));
  CHECK(matching_weight_set(g, {}, Exec::serial) == set);
}

TEST_CASE("matching_weight_set enforces its budget") {
  CHECK_THROWS_AS(matching_weight_set(WeightedBipartiteGraph(12), Budget{1000}), BudgetExceeded);
}

TEST_CASE("cmw_oracle") {
  const auto g = graph({{1, 4}, {2, 0}});
  const auto same = cmw_oracle(g, g);
  REQUIRE(same);
  CHECK(same->weight == 1);
  CHECK_FALSE(cmw_oracle(graph({{2}}), graph({{3}})));
  const auto equal = cmw_oracle(graph({{2}}), graph({{2}}));
  REQUIRE(equal);
  CHECK(equal->weight == 2);
  CHECK(matching_weight(graph({{2}}), equal->first) == 2);
}

TEST_CASE("minimal word length") {
  CHECK(minimal_length(4, 2) == 2);
  CHECK(minimal_length(1, 2) == 1);
  CHECK(minimal_length(0, 2) == 1);
  CHECK(minimal_length(2, 3) == 2);
  CHECK(minimal_length(2, 1) == 2);
  CHECK(minimal_length(5, 2) == 3);
}

TEST_CASE("family_to_graph reproduces the four-row weight table") {
  const auto f = symbolic(4);
  const FamilyGraph fg = family_to_graph(f);
  CHECK(fg.trace.length == 2);
  CHECK(fg.trace.slots == 4);
  REQUIRE(fg.graph.size() == 4);
  // Word ranks: 0 = 00, 1 = 01, 2 = 10, 3 = 11; u = (u1, u2).
  for (std::size_t u = 0; u < 4; ++u) {
    const std::size_t u1 = u / 2, u2 = u % 2;
    CHECK(fg.graph.weight(0, u) == f.at(0, u1) + f.at(1, u2));
    CHECK(fg.graph.weight(1, u) == f.at(2, u1));
    CHECK(fg.graph.weight(2, u) == f.at(3, u2));
    CHECK(fg.graph.weight(3, u) == 0);
  }
}

TEST_CASE("family_to_graph small cases") {
  const auto f = family::FamilyFunction::from_rows({{5, 9}});
  const FamilyGraph fg = family_to_graph(f);
  CHECK(fg.trace.length == 1);
  CHECK(fg.trace.slots == 1);
  CHECK(fg.graph == graph({{5, 9}, {0, 0}}));
  CHECK(matching_weight_set(fg.graph) == family::family_set(f));

  const FamilyGraph zero = family_to_graph(family::FamilyFunction(3, 3));
  CHECK(zero.graph.max_weight() == 0);
  CHECK(matching_weight_set(zero.graph).values() == ints({0}));
}

TEST_CASE("family_to_graph preserves the family exactly") {
  testing::Rng rng(31);
  int tested = 0;
  while (tested < 100) {
    const std::size_t k = testing::uniform(rng, 1, 3);
    const std::size_t a = testing::uniform(rng, 0, 4);
    const std::size_t b = minimal_length(a, k);
    if (saturating_pow(k, b) > 9) continue;
    ++tested;
    const auto f = testing::random_family(rng, a, k, 25);
    const FamilyGraph fg = family_to_graph(f);
    CHECK(fg.trace.minimal());
    CHECK(fg.graph.size() == fg.trace.side());
    CHECK(fg.graph.size() <= k * k * std::max<std::size_t>(a, 1));
    CHECK(matching_weight_set(fg.graph) == family::family_set(f));
  }
}

TEST_CASE("reduction traces use each slot once") {
  for (std::size_t k = 1; k <= 4; ++k)
    for (std::size_t a = 0; a <= 12; ++a) {
      const FamilyGraph fg = family_to_graph(family::FamilyFunction(a, k));
      const auto& t = fg.trace;
      CHECK(t.minimal());
      std::vector<int> used(t.slots, 0);
      const weave::WordSpace words(k, t.length);
      for (std::size_t r = 0; r < words.size(); ++r)
        for (std::size_t i = 0; i < t.length; ++i) {
          const auto row = t.row_at[r * t.length + i];
          CHECK(row.has_value() == (words.letter(r, i) == 0));
          if (row) ++used.at(*row);
        }
      CHECK(std::all_of(used.begin(), used.end(), [](int u) { return u == 1; }));
    }
}

TEST_CASE("selector_to_matching realises the selector sum") {
  const auto single = family::FamilyFunction::from_rows({{5, 9}});
  const FamilyGraph fg = family_to_graph(single);
  const Permutation p = selector_to_matching(fg.trace, {1});
  CHECK(p[0] == 1);
  CHECK(matching_weight(fg.graph, p) == 9);

  const auto four = symbolic(4);
  const FamilyGraph fg4 = family_to_graph(four);
  const Permutation ones = selector_to_matching(fg4.trace, {0, 0, 0, 0});
  CHECK(matching_weight(fg4.graph, ones) == four.at(0, 0) + four.at(1, 0) + four.at(2, 0) + four.at(3, 0));

  const FamilyGraph zero = family_to_graph(family::FamilyFunction(2, 2));
  CHECK(matching_weight(zero.graph, selector_to_matching(zero.trace, {1, 0})) == 0);
  CHECK_THROWS(selector_to_matching(zero.trace, {0, 0, 0}));
}

TEST_CASE("selector_to_matching over every selector") {
  testing::Rng rng(8);
  for (int t = 0; t < 40; ++t) {
    const std::size_t k = testing::uniform(rng, 1, 3);
    const std::size_t a = testing::uniform(rng, 0, 6);
    const std::size_t b = minimal_length(a, k);
    if (saturating_pow(k, b) > 9 || b * saturating_pow(k, b - 1) > 6) continue;
    const auto f = testing::random_family(rng, a, k, 40);
    const FamilyGraph fg = family_to_graph(f);
    family::Selector sigma(fg.trace.slots, 0);
    while (true) {
      const Permutation p = selector_to_matching(fg.trace, sigma);
      CHECK(matching_weight(fg.graph, p) == family::selector_sum(fg.extended, sigma));
      std::size_t r = 0;
      while (r < sigma.size() && ++sigma[r] == k) sigma[r++] = 0;
      if (r == sigma.size()) break;
    }
  }
}

TEST_CASE("cnf_to_cmw sizes and equivalence") {
  const auto ex = cnf_to_cmw(cnf::parse_dimacs("p cnf 3 2\n1 2 0\n-1 3 0\n", 2));
  CHECK(ex.first.graph.size() == 4);
  CHECK(ex.second.graph.size() == 9);
  const auto tiny = cnf_to_cmw(cnf::parse_dimacs("p cnf 1 2\n1 0\n-1 0\n", 1));
  CHECK(tiny.first.graph.size() == 2);
  CHECK(tiny.second.graph.size() == 1);
  CHECK(tiny.second.trace.length == 2);
  CHECK_FALSE(cmw_oracle(tiny.first.graph, tiny.second.graph));

  testing::Rng rng(77);
  for (int t = 0; t < 40; ++t) {
    const int width = static_cast<int>(testing::uniform(rng, 1, 2));
    const auto f = testing::random_formula(rng, 3, 3, width);
    const auto cmw = cnf_to_cmw(f);
    if (saturating_factorial(std::max(cmw.first.graph.size(), cmw.second.graph.size())) >
        kDefaultBudget)
      continue;
    CHECK(cmw_oracle(cmw.first.graph, cmw.second.graph).has_value() ==
          testing::brute_satisfiable(f));
  }
}
