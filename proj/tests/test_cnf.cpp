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
#include "support.hpp"

using namespace chanred;
using namespace chanred::cnf;

namespace {

CnfFormula two_clause() { return parse_dimacs("p cnf 3 2\n1 2 0\n-1 3 0\n", 2); }

std::string parse_error(std::string_view text, int width) {
  try {
    parse_dimacs(text, width);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse_dimacs keeps clause and literal order") {
  const CnfFormula f = two_clause();
  CHECK(f.variable_count() == 3);
  CHECK(f.width() == 2);
  REQUIRE(f.clause_count() == 2);
  CHECK(f.clause(0) == Clause{{0, true}, {1, true}});
  CHECK(f.clause(1) == Clause{{0, false}, {2, true}});

  const CnfFormula contradiction = parse_dimacs("p cnf 1 2\n1 0\n-1 0\n", 1);
  CHECK(contradiction.clause(0) == Clause{{0, true}});
  CHECK(contradiction.clause(1) == Clause{{0, false}});
}

TEST_CASE("parse_dimacs accepts comments, split clauses and the % terminator") {
  const CnfFormula f = parse_dimacs("c hello\np cnf 3 1\n1\n-2 3\n0\n%\n0\n", 3);
  REQUIRE(f.clause_count() == 1);
  CHECK(f.clause(0) == Clause{{0, true}, {1, false}, {2, true}});
}

TEST_CASE("parse_dimacs reports errors with line numbers") {
  CHECK(parse_error("p cnf 2 2\n1 2 0\n0\n", 2).find("line 3") == 0);
  CHECK(parse_error("p cnf 2 1\n1 2 3 0\n", 2).find("line 2") == 0);
  CHECK(parse_error("p cnf 2 1\n1 5 0\n", 2).find("line 2") == 0);
  CHECK(parse_error("p dnf 2 1\n1 2 0\n", 2).find("line 1") == 0);
  CHECK(parse_error("1 2 0\n", 2).find("line 1") == 0);
  CHECK_FALSE(parse_error("p cnf 2 2\n1 2 0\n", 2).empty());
}

TEST_CASE("write_dimacs round-trips") {
  testing::Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const int width = static_cast<int>(testing::uniform(rng, 1, 3));
    const CnfFormula f = testing::random_formula(rng, 5, 4, width);
    CHECK(parse_dimacs(write_dimacs(f), width) == f);
  }
}

TEST_CASE("occurrence_index numbers occurrences clause-major") {
  const OccurrenceIndex idx = occurrence_index(two_clause());
  CHECK(idx.total_occurrences == 4);
  CHECK(idx.var_occurrences == std::vector<std::vector<std::size_t>>{{0, 2}, {1}, {3}});
  CHECK(idx.clause_occurrences == std::vector<std::vector<std::size_t>>{{0, 1}, {2, 3}});

  const OccurrenceIndex repeated = occurrence_index(CnfFormula(2, {{{0, true}, {0, true}, {1, true}}}));
  CHECK(repeated.var_occurrences == std::vector<std::vector<std::size_t>>{{0, 1}, {2}});

  const OccurrenceIndex empty = occurrence_index(CnfFormula(3, {}));
  CHECK(empty.total_occurrences == 0);
  for (const auto& occ : empty.var_occurrences) CHECK(occ.empty());
}

TEST_CASE("occurrence sets partition the occurrences") {
  testing::Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const CnfFormula f = testing::random_formula(rng, 6, 5, 3);
    const OccurrenceIndex idx = occurrence_index(f);
    std::vector<int> hits(idx.total_occurrences, 0);
    for (const auto& occ : idx.var_occurrences)
      for (std::size_t j : occ) ++hits.at(j);
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    for (std::size_t i = 0; i < f.clause_count(); ++i) {
      REQUIRE(idx.clause_occurrences[i].size() == 3);
      CHECK(idx.clause_occurrences[i].front() == 3 * i);
    }
  }
}

TEST_CASE("satisfying_subsets lists 2^width - 1 subsets in ascending order") {
  const CnfFormula f = two_clause();
  // (not a) or c over occurrences {2, 3}
  CHECK(satisfying_subsets(f, 1) == std::vector<std::vector<std::size_t>>{{}, {3}, {2, 3}});
  // a or b over occurrences {0, 1}
  CHECK(satisfying_subsets(f, 0) == std::vector<std::vector<std::size_t>>{{0}, {1}, {0, 1}});
  CHECK(satisfying_subsets(CnfFormula(3, {{{0, true}, {1, false}, {2, true}}}), 0).size() == 7);
  CHECK_THROWS(satisfying_subsets(f, 2));
}

TEST_CASE("satisfying_subsets agree with direct clause evaluation") {
  testing::Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    const int width = static_cast<int>(testing::uniform(rng, 1, 3));
    const CnfFormula f = testing::random_formula(rng, 4, 3, width);
    for (std::size_t c = 0; c < f.clause_count(); ++c) {
      const auto subsets = satisfying_subsets(f, c);
      CHECK(subsets.size() == (std::size_t{1} << width) - 1);
      for (unsigned mask = 0; mask < (1u << width); ++mask) {
        // occurrence at position p is true iff bit p of mask is set
        bool sat = false;
        std::vector<std::size_t> members;
        for (int p = 0; p < width; ++p) {
          const bool value = (mask >> p) & 1u;
          if (value) members.push_back(static_cast<std::size_t>(width) * c + p);
          sat = sat || value == f.clause(c)[p].positive;
        }
        const bool listed = std::find(subsets.begin(), subsets.end(), members) != subsets.end();
        CHECK(listed == sat);
      }
    }
  }
}

TEST_CASE("sat_oracle returns the lexicographically first model") {
  CHECK_FALSE(sat_oracle(parse_dimacs("p cnf 1 2\n1 0\n-1 0\n", 1)));
  const auto model = sat_oracle(two_clause());
  REQUIRE(model);
  CHECK(*model == Assignment{false, true, false});
  const auto empty = sat_oracle(CnfFormula(0, {}));
  REQUIRE(empty);
  CHECK(empty->empty());
}

TEST_CASE("sat_oracle agrees with evaluation") {
  testing::Rng rng(21);
  for (int t = 0; t < 200; ++t) {
    const CnfFormula f = testing::random_formula(rng, 5, 6, 3);
    const auto model = sat_oracle(f);
    CHECK(model.has_value() == testing::brute_satisfiable(f));
    if (model) CHECK(f.satisfied_by(*model));
  }
}

TEST_CASE("sat_oracle enforces its budget") {
  std::vector<Clause> clauses{{{0, true}}};
  const CnfFormula f(30, clauses, 1);
  CHECK_THROWS_AS(sat_oracle(f, Budget{1024}), BudgetExceeded);
}
