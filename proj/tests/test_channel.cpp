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

#include "chanred/channel.hpp"
#include "chanred/gadget.hpp"
#include "support.hpp"

using namespace chanred;
using namespace chanred::channel;

namespace {

CaInstance pair_instance(int d, int s) {
  CaInstance I({"x", "y"}, BigInt(s));
  I.set_distance(0, 1, BigInt(d));
  return I;
}

CaInstance path() {
  CaInstance I({"p1", "p2", "p3"}, BigInt(10));
  I.set_distance(0, 1, 2);
  I.set_distance(1, 2, 2);
  return I;
}

Coloring colors(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("CaInstance basics") {
  CaInstance I({"a", "b", "c"}, 5);
  CHECK(I.distance(0, 2) == 0);
  I.set_distance(2, 0, 4);
  CHECK(I.distance(0, 2) == 4);
  CHECK(I.max_distance() == 4);
  CHECK_THROWS(I.set_distance(1, 1, 1));
  CHECK_THROWS(I.set_distance(0, 1, -1));
  CHECK_THROWS(CaInstance({"a", "a"}, 3));
  CHECK_THROWS(CaInstance({"a"}, 0));
  I.rename(1, "bb");
  CHECK(I.index("bb") == 1);
  CHECK_FALSE(I.find("b"));
  CHECK_THROWS(I.rename(0, "c"));
}

TEST_CASE("is_proper") {
  CHECK(is_proper(CaInstance({"x"}, 1), colors({42})));
  CHECK(is_proper(pair_instance(3, 4), colors({0, 3})));
  CHECK_FALSE(is_proper(pair_instance(3, 4), colors({0, 2})));
  const auto v = first_violation(pair_instance(3, 4), colors({0, 2}));
  REQUIRE(v);
  CHECK(v->x == 0);
  CHECK(v->y == 1);
  CHECK(v->gap == 2);
  CHECK(v->required == 3);
  CHECK_THROWS(is_proper(pair_instance(3, 4), colors({0})));
}

TEST_CASE("span_of") {
  CHECK(span_of(colors({7, 7, 7})) == 1);
  CHECK(span_of(colors({1, 21})) == 21);
  CHECK(span_of(colors({0, 3})) == 4);
  CHECK_THROWS(span_of({}));
}

TEST_CASE("normalize translates and orients") {
  CHECK(normalize(colors({5, 3})) == colors({3, 1}));
  CHECK(normalize(colors({5, 3}), std::pair<std::size_t, std::size_t>{0, 1}) == colors({1, 3}));
}

TEST_CASE("greedy_for_order") {
  CHECK(greedy_for_order(path(), {0, 1, 2}) == colors({1, 3, 5}));
  CHECK(greedy_for_order(path(), {0, 2, 1}) == colors({1, 3, 1}));
  CHECK(greedy_for_order(CaInstance({"a", "b", "c"}, 1), {2, 1, 0}) == colors({1, 1, 1}));
  CHECK_THROWS(greedy_for_order(path(), {0, 0, 1}));
}

TEST_CASE("greedy placements are proper and monotone") {
  testing::Rng rng(2);
  for (int t = 0; t < 300; ++t) {
    const auto I = testing::random_instance(rng, testing::uniform(rng, 1, 7), 9, 30);
    Permutation order(I.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    const Coloring c = greedy_for_order(I, order);
    CHECK(is_proper(I, c));
    for (std::size_t i = 1; i < order.size(); ++i) CHECK(c[order[i - 1]] <= c[order[i]]);
    CHECK(c[order[0]] == 1);
  }
}

TEST_CASE("solve_exact small cases") {
  SolveOptions cap10;
  cap10.cap = BigInt(10);
  const auto r = solve_exact(path(), cap10);
  REQUIRE(r.optimal());
  CHECK(r.span == 3);
  CHECK(is_proper(path(), r.witness));

  const auto forced = solve_exact(pair_instance(4, 5));
  REQUIRE(forced.optimal());
  CHECK(forced.span == 5);

  SolveOptions tight;
  tight.cap = BigInt(4);
  CHECK(solve_exact(pair_instance(4, 5), tight).status == SolveResult::Status::exceeds_cap);
}

TEST_CASE("solve_exact matches exhaustive colorings on tiny instances") {
  testing::Rng rng(19);
  for (int t = 0; t < 300; ++t) {
    const std::size_t s = testing::uniform(rng, 1, 6);
    const auto I = testing::random_instance(rng, testing::uniform(rng, 1, 3), 5, s);
    const auto brute = testing::brute_min_span(I, s);
    const auto r = solve_exact(I);
    CHECK(r.optimal() == brute.has_value());
    if (brute && r.optimal()) CHECK(r.span == *brute);
  }
}

TEST_CASE("minimum over orderings equals the colouring optimum") {
  testing::Rng rng(29);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = testing::uniform(rng, 1, 5);
    const auto I = testing::random_instance(rng, n, 3, 100);
    const BigInt by_order = testing::brute_ordering_span(I);
    // any optimum fits in [1, sum of distances + 1]
    std::size_t top = 1;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y) top += static_cast<std::size_t>(I.distance(x, y));
    if (std::pow(static_cast<double>(top), static_cast<double>(n)) > 2e6) continue;
    CHECK(by_order == *testing::brute_min_span(I, top));
    const auto r = solve_exact(I);
    REQUIRE(r.optimal());
    CHECK(r.span == by_order);
  }
}

TEST_CASE("solve_exact is monotone in the cap") {
  testing::Rng rng(37);
  for (int t = 0; t < 60; ++t) {
    const auto I = testing::random_instance(rng, testing::uniform(rng, 2, 6), 6, 40);
    std::optional<BigInt> previous;
    for (int cap = 1; cap <= 40; cap += 3) {
      SolveOptions o;
      o.cap = BigInt(cap);
      const auto r = solve_exact(I, o);
      if (previous) {
        REQUIRE(r.optimal());
        CHECK(r.span <= *previous);
      }
      if (r.optimal()) previous = r.span;
    }
  }
}

TEST_CASE("serial and parallel solvers return the same witness") {
  testing::Rng rng(41);
  for (int t = 0; t < 60; ++t) {
    const auto I = testing::random_instance(rng, testing::uniform(rng, 1, 8), 7, 60);
    SolveOptions serial, parallel;
    serial.exec = Exec::serial;
    parallel.exec = Exec::parallel;
    const auto a = solve_exact(I, serial);
    const auto b = solve_exact(I, parallel);
    CHECK(a.status == b.status);
    CHECK(a.span == b.span);
    CHECK(a.witness == b.witness);
    CHECK(a.ordering == b.ordering);
  }
}

TEST_CASE("solve_exact reports an exhausted budget") {
  testing::Rng rng(1);
  const auto I = testing::random_instance(rng, 9, 3, 1000);
  SolveOptions o;
  o.node_budget = 10;
  CHECK_THROWS_AS(solve_exact(I, o), BudgetExceeded);
}

TEST_CASE("enumerate_yes_colorings") {
  const auto two = enumerate_yes_colorings(pair_instance(1, 2), std::pair<std::size_t, std::size_t>{0, 1});
  REQUIRE(two.colorings.size() == 1);
  CHECK(two.colorings[0] == colors({1, 2}));
  CHECK(two.rigid);

  const auto flat = enumerate_yes_colorings(CaInstance({"a", "b", "c"}, 1));
  REQUIRE(flat.colorings.size() == 1);
  CHECK(flat.colorings[0] == colors({1, 1, 1}));

  const auto loose = enumerate_yes_colorings(pair_instance(1, 4));
  CHECK_FALSE(loose.rigid);
}

TEST_CASE("check_spanned") {
  CHECK(check_spanned(pair_instance(4, 5), 0, 1).spanned);
  CHECK_FALSE(check_spanned(pair_instance(0, 3), 0, 1).spanned);
}

TEST_CASE("the smallest gadget through the channel API") {
  const auto g = gadget::matchings_to_ca(matching::WeightedBipartiteGraph::from_rows({{2}}));
  const auto r = solve_exact(g.instance);
  REQUIRE(r.optimal());
  CHECK(r.span == 21);
  CHECK(testing::brute_ordering_span(g.instance) == 21);
  const auto yes = enumerate_yes_colorings(g.instance, std::pair{g.left(), g.right()});
  CHECK(yes.colorings.size() == 1);
  CHECK(yes.rigid);
  CHECK(check_spanned(g.instance, g.left(), g.right()).spanned);
  CHECK(is_proper(g.instance, gadget::claim_coloring(g, {0})));
}
