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

// Tables f : rows x columns -> N and the set of their row-wise selector sums
// (the family of f), plus the encoding of CNF formulas as a pair of tables
// whose families intersect exactly when the formula is satisfiable.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "chanred/cnf.hpp"
#include "chanred/core.hpp"

namespace chanred::family {

class FamilyFunction {
 public:
  /// rows x cols table of zeros. cols must be positive.
  FamilyFunction(std::size_t rows, std::size_t cols);
  /// values is row-major. Throws std::invalid_argument on shape mismatch or
  /// negative entries.
  FamilyFunction(std::size_t rows, std::size_t cols, std::vector<BigInt> values);
  static FamilyFunction from_rows(const std::vector<std::vector<BigInt>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const BigInt& at(std::size_t row, std::size_t col) const { return values_[row * cols_ + col]; }
  void set(std::size_t row, std::size_t col, BigInt value);

  /// Copy with zero rows appended up to `rows` total.
  FamilyFunction extended_to(std::size_t rows) const;

  /// Sum over rows of the row maximum, i.e. the largest family element.
  BigInt max_selector_sum() const;

  friend bool operator==(const FamilyFunction&, const FamilyFunction&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<BigInt> values_;
};

/// selector[i] is the (zero-based) column picked in row i.
using Selector = std::vector<std::size_t>;

BigInt selector_sum(const FamilyFunction& f, const Selector& selector);

/// The family of f by enumerating all cols^rows selectors. rows == 0 gives
/// {0}. Throws BudgetExceeded(oracle) when cols^rows exceeds the budget.
WeightSet family_set(const FamilyFunction& f, Budget budget = {});

/// Lexicographically first selector whose sum is `value`.
std::optional<Selector> find_selector(const FamilyFunction& f, const BigInt& value,
                                      Budget budget = {});

struct FamilyWitness {
  BigInt value;
  Selector f_selector;
  Selector g_selector;
};

/// Smallest common family element with witnessing selectors.
std::optional<FamilyWitness> family_intersect(const FamilyFunction& f,
                                              const FamilyFunction& g, Budget budget = {});

struct FamilyPair {
  FamilyFunction f;  // variables x 2
  FamilyFunction g;  // clauses x (2^width - 1)
};

/// f(i,0) is the characteristic value of variable i's occurrences and
/// f(i,1) = 0; g(i,j) is the characteristic value of the j-th satisfying
/// subset of clause i. Occurrence j is bit j.
FamilyPair cnf_to_families(const cnf::CnfFormula& formula);

/// Selectors of f and g whose sums both equal the occurrence pattern of a
/// satisfying assignment.
std::pair<Selector, Selector> selectors_for_assignment(const cnf::CnfFormula& formula,
                                                       const cnf::Assignment& assignment);

/// Reads a characteristic value as a variable assignment. Returns nullopt
/// when two occurrences of one variable disagree. Variables that never occur
/// are set false.
std::optional<cnf::Assignment> decode_occurrences(const cnf::CnfFormula& formula,
                                                  const BigInt& value);

/// Reverses the lowest `width` bits: converts between the bit-j-is-occurrence-j
/// convention and a most-significant-first display of the same vector.
BigInt reverse_bits(const BigInt& value, std::size_t width);

}  // namespace chanred::family
