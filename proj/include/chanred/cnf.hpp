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

// CNF formulas with fixed clause width, the occurrence index that treats
// every literal slot as its own boolean, and an exhaustive SAT oracle.
//
// Indices are zero-based throughout: variable i, clause i, and occurrence
// j = width * clause + position. Occurrence j owns bit j of an occurrence
// assignment.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chanred/core.hpp"

namespace chanred::cnf {

struct Literal {
  std::size_t variable = 0;
  bool positive = true;

  friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::vector<Literal>;

/// Variable assignment; assignment[i] is the value of variable i.
using Assignment = std::vector<bool>;

class CnfFormula {
 public:
  /// Throws std::invalid_argument when a clause has the wrong width or a
  /// literal names an unknown variable.
  CnfFormula(std::size_t variable_count, std::vector<Clause> clauses, int width = 3);

  std::size_t variable_count() const noexcept { return variable_count_; }
  std::size_t clause_count() const noexcept { return clauses_.size(); }
  int width() const noexcept { return width_; }
  const std::vector<Clause>& clauses() const noexcept { return clauses_; }
  const Clause& clause(std::size_t i) const { return clauses_.at(i); }

  std::size_t occurrence_count() const noexcept {
    return static_cast<std::size_t>(width_) * clauses_.size();
  }

  bool satisfied_by(const Assignment& assignment) const;

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;

 private:
  std::size_t variable_count_;
  std::vector<Clause> clauses_;
  int width_;
};

struct OccurrenceIndex {
  std::size_t total_occurrences = 0;
  /// var_occurrences[i]: ascending occurrences of variable i.
  std::vector<std::vector<std::size_t>> var_occurrences;
  /// clause_occurrences[i] = {width*i, ..., width*i + width - 1}.
  std::vector<std::vector<std::size_t>> clause_occurrences;
};

/// Reads DIMACS CNF. Clauses may span lines and are terminated by 0; lines
/// starting with 'c' are comments and a line starting with '%' ends input.
/// Every clause must have exactly `width` literals.
CnfFormula parse_dimacs(std::string_view text, int width = 3);

std::string write_dimacs(const CnfFormula& formula);

OccurrenceIndex occurrence_index(const CnfFormula& formula);

/// All subsets K of the clause's occurrences under which the clause is true
/// when occurrence j takes value (j in K). Subsets are listed by ascending
/// characteristic value; there are always 2^width - 1 of them.
std::vector<std::vector<std::size_t>> satisfying_subsets(const CnfFormula& formula,
                                                         std::size_t clause_index);

/// The occurrence-wise truth pattern of an assignment, as occurrence indices
/// that take value 1.
std::vector<std::size_t> occurrence_pattern(const CnfFormula& formula,
                                            const Assignment& assignment);

/// Lexicographically first satisfying assignment (variable 0 most
/// significant, false before true). Throws BudgetExceeded(oracle) when
/// 2^variable_count exceeds the budget.
std::optional<Assignment> sat_oracle(const CnfFormula& formula, Budget budget = {});

}  // namespace chanred::cnf
