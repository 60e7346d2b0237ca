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

#include "chanred/cnf.hpp"
#include "chanred/family.hpp"
#include "support.hpp"

using namespace chanred;
using namespace chanred::family;

namespace {

std::vector<BigInt> ints(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

FamilyFunction table(std::initializer_list<std::initializer_list<int>> rows) {
  std::vector<std::vector<BigInt>> out;
  for (const auto& r : rows) out.push_back(ints(r));
  return FamilyFunction::from_rows(out);
}

cnf::CnfFormula two_clause() { return cnf::parse_dimacs("p cnf 3 2\n1 2 0\n-1 3 0\n", 2); }

std::vector<BigInt> reversed(const WeightSet& set, std::size_t width) {
  std::vector<BigInt> out;
  for (const auto& v : set.values()) out.push_back(reverse_bits(v, width));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("family_set of the displayed example table") {
  // The example prints bit vectors most significant first: 1010, 0100, 0001.
  CHECK(family_set(table({{10, 0}, {4, 0}, {1, 0}})).values() == ints({0, 1, 4, 5, 10, 11, 14, 15}));
  CHECK(family_set(FamilyFunction(3, 2)).values() == ints({0}));
  CHECK(family_set(table({{5, 0}, {2, 0}, {8, 0}})).values() == ints({0, 2, 5, 7, 8, 10, 13, 15}));
  CHECK(family_set(FamilyFunction(0, 2)).values() == ints({0}));
}

TEST_CASE("family_set matches a mixed-radix enumeration") {
  testing::Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const auto f = testing::random_family(rng, testing::uniform(rng, 0, 5),
                                          testing::uniform(rng, 1, 3), 20);
    const WeightSet x = family_set(f);
    CHECK(testing::as_set(x) == testing::brute_family(f));
    CHECK(x.size() <= saturating_pow(f.cols(), f.rows()));
    CHECK(x.max() == f.max_selector_sum());
  }
}

TEST_CASE("family_set enforces its budget") {
  CHECK_THROWS_AS(family_set(FamilyFunction(40, 2), Budget{1 << 20}), BudgetExceeded);
}

TEST_CASE("family_intersect returns the smallest common value") {
  const FamilyFunction f = table({{10, 0}, {4, 0}, {1, 0}});
  const FamilyFunction g = table({{8, 4, 12}, {0, 1, 3}});
  const auto w = family_intersect(f, g);
  REQUIRE(w);
  CHECK(w->value == 4);
  CHECK(selector_sum(f, w->f_selector) == 4);
  CHECK(selector_sum(g, w->g_selector) == 4);

  const auto self = family_intersect(f, f);
  REQUIRE(self);
  CHECK(self->value == 0);

  CHECK_FALSE(family_intersect(FamilyFunction(2, 2), table({{1, 2}, {3, 4}})));
}

TEST_CASE("cnf_to_families applies the occurrence encoding") {
  const FamilyPair p = cnf_to_families(two_clause());
  CHECK(p.f == table({{5, 0}, {2, 0}, {8, 0}}));
  CHECK(p.g == table({{1, 2, 3}, {0, 8, 12}}));

  const FamilyPair contradiction = cnf_to_families(cnf::parse_dimacs("p cnf 1 2\n1 0\n-1 0\n", 1));
  CHECK(contradiction.f == table({{3, 0}}));
  CHECK(contradiction.g == table({{1}, {0}}));
  CHECK(family_set(contradiction.f).values() == ints({0, 3}));
  CHECK(family_set(contradiction.g).values() == ints({1}));
  CHECK_FALSE(family_intersect(contradiction.f, contradiction.g));

  const FamilyPair distinct = cnf_to_families(cnf::parse_dimacs("p cnf 3 1\n1 2 3 0\n", 3));
  CHECK(family_set(distinct.f).size() == 8);
}

TEST_CASE("the example's sets appear under display reversal") {
  const FamilyPair p = cnf_to_families(two_clause());
  CHECK(reversed(family_set(p.f), 4) == ints({0b0000, 0b0001, 0b0100, 0b0101, 0b1010, 0b1011,
                                              0b1110, 0b1111}));
  CHECK(reversed(family_set(p.g), 4) == ints({0b0100, 0b0101, 0b0111, 0b1000, 0b1001, 0b1011,
                                              0b1100, 0b1101, 0b1111}));
  CHECK(reversed(family_set(p.f).intersection(family_set(p.g)), 4) ==
        ints({0b0100, 0b0101, 0b1011, 0b1111}));
}

TEST_CASE("family intersection decides satisfiability") {
  testing::Rng rng(17);
  for (int t = 0; t < 200; ++t) {
    const int width = static_cast<int>(testing::uniform(rng, 1, 3));
    const cnf::CnfFormula f = testing::random_formula(rng, 4, 3, width);
    const FamilyPair p = cnf_to_families(f);
    const auto w = family_intersect(p.f, p.g);
    CHECK(w.has_value() == testing::brute_satisfiable(f));
    const BigInt limit = BigInt(1) << f.occurrence_count();
    CHECK(p.f.max_selector_sum() < limit);
    CHECK(p.g.max_selector_sum() < limit);
    if (w) {
      const auto decoded = decode_occurrences(f, w->value);
      REQUIRE(decoded);
      CHECK(f.satisfied_by(*decoded));
    }
  }
}

TEST_CASE("selectors_for_assignment hit the occurrence pattern") {
  testing::Rng rng(23);
  for (int t = 0; t < 100; ++t) {
    const cnf::CnfFormula f = testing::random_formula(rng, 4, 3, 3);
    const auto model = cnf::sat_oracle(f);
    if (!model) continue;
    const FamilyPair p = cnf_to_families(f);
    const auto [sf, sg] = selectors_for_assignment(f, *model);
    BigInt pattern = 0;
    for (std::size_t j : cnf::occurrence_pattern(f, *model)) pattern |= BigInt(1) << j;
    CHECK(selector_sum(p.f, sf) == pattern);
    CHECK(selector_sum(p.g, sg) == pattern);
  }
}

TEST_CASE("reverse_bits is an involution on the low bits") {
  CHECK(reverse_bits(0b0001, 4) == 0b1000);
  CHECK(reverse_bits(0b0110, 4) == 0b0110);
  for (int v = 0; v < 64; ++v) CHECK(reverse_bits(reverse_bits(v, 6), 6) == v);
}
