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

#include "chanred/family.hpp"

#include <algorithm>
#include <stdexcept>

namespace chanred::family {

FamilyFunction::FamilyFunction(std::size_t rows, std::size_t cols)
    : FamilyFunction(rows, cols, std::vector<BigInt>(rows * cols, BigInt(0))) {}

FamilyFunction::FamilyFunction(std::size_t rows, std::size_t cols, std::vector<BigInt> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (cols_ == 0) throw std::invalid_argument("family function needs at least one column");
  if (values_.size() != rows_ * cols_)
    throw std::invalid_argument("family table has wrong number of values");
  for (const BigInt& v : values_)
    if (v < 0) throw std::invalid_argument("family values must be nonnegative");
}

FamilyFunction FamilyFunction::from_rows(const std::vector<std::vector<BigInt>>& rows) {
  if (rows.empty()) throw std::invalid_argument("from_rows needs at least one row");
  const std::size_t cols = rows.front().size();
  std::vector<BigInt> values;
  for (const auto& row : rows) {
    if (row.size() != cols) throw std::invalid_argument("ragged family table");
    values.insert(values.end(), row.begin(), row.end());
  }
  return FamilyFunction(rows.size(), cols, std::move(values));
}

void FamilyFunction::set(std::size_t row, std::size_t col, BigInt value) {
  if (value < 0) throw std::invalid_argument("family values must be nonnegative");
  values_.at(row * cols_ + col) = std::move(value);
}

FamilyFunction FamilyFunction::extended_to(std::size_t rows) const {
  if (rows < rows_) throw std::invalid_argument("cannot shrink a family function");
  std::vector<BigInt> values = values_;
  values.resize(rows * cols_, BigInt(0));
  return FamilyFunction(rows, cols_, std::move(values));
}

BigInt FamilyFunction::max_selector_sum() const {
  BigInt total = 0;
  for (std::size_t i = 0; i < rows_; ++i)
    total += *std::max_element(values_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                               values_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  return total;
}

BigInt selector_sum(const FamilyFunction& f, const Selector& selector) {
  if (selector.size() != f.rows()) throw std::invalid_argument("selector has wrong length");
  BigInt total = 0;
  for (std::size_t i = 0; i < f.rows(); ++i) {
    if (selector[i] >= f.cols()) throw std::invalid_argument("selector column out of range");
    total += f.at(i, selector[i]);
  }
  return total;
}

namespace {

void check_budget(const FamilyFunction& f, Budget budget) {
  const std::uint64_t states = saturating_pow(f.cols(), f.rows());
  if (states > budget.states)
    throw BudgetExceeded(BudgetKind::oracle,
                         "family enumeration needs " + std::to_string(f.cols()) + "^" +
                             std::to_string(f.rows()) + " selectors, budget is " +
                             std::to_string(budget.states));
}

// Depth-first over selectors in lexicographic order with running prefix
// sums. `visit(sum, selector)` returns true to stop.
template <class Visit>
bool for_each_selector(const FamilyFunction& f, Visit&& visit) {
  const std::size_t rows = f.rows();
  Selector selector(rows, 0);
  std::vector<BigInt> prefix(rows + 1, BigInt(0));
  if (rows == 0) return visit(prefix[0], selector);
  std::size_t depth = 0;
  // selector[depth] is the next column to try at this depth
  while (true) {
    if (selector[depth] == f.cols()) {
      if (depth == 0) return false;
      selector[depth] = 0;
      --depth;
      ++selector[depth];
      continue;
    }
    prefix[depth + 1] = prefix[depth] + f.at(depth, selector[depth]);
    if (depth + 1 == rows) {
      if (visit(prefix[rows], selector)) return true;
      ++selector[depth];
    } else {
      ++depth;
    }
  }
}

}  // namespace

WeightSet family_set(const FamilyFunction& f, Budget budget) {
  check_budget(f, budget);
  std::vector<BigInt> sums;
  for_each_selector(f, [&](const BigInt& sum, const Selector&) {
    sums.push_back(sum);
    return false;
  });
  return WeightSet(std::move(sums));
}

std::optional<Selector> find_selector(const FamilyFunction& f, const BigInt& value,
                                      Budget budget) {
  check_budget(f, budget);
  std::optional<Selector> found;
  for_each_selector(f, [&](const BigInt& sum, const Selector& selector) {
    if (sum != value) return false;
    found = selector;
    return true;
  });
  return found;
}

std::optional<FamilyWitness> family_intersect(const FamilyFunction& f,
                                              const FamilyFunction& g, Budget budget) {
  const auto common = family_set(f, budget).smallest_common(family_set(g, budget));
  if (!common) return std::nullopt;
  FamilyWitness witness;
  witness.value = *common;
  witness.f_selector = *find_selector(f, *common, budget);
  witness.g_selector = *find_selector(g, *common, budget);
  return witness;
}

namespace {

BigInt characteristic_value(const std::vector<std::size_t>& occurrences) {
  BigInt value = 0;
  for (std::size_t j : occurrences) boost::multiprecision::bit_set(value, static_cast<unsigned>(j));
  return value;
}

}  // namespace

FamilyPair cnf_to_families(const cnf::CnfFormula& formula) {
  const cnf::OccurrenceIndex index = cnf::occurrence_index(formula);
  FamilyFunction f(formula.variable_count(), 2);
  for (std::size_t i = 0; i < formula.variable_count(); ++i)
    f.set(i, 0, characteristic_value(index.var_occurrences[i]));
  const std::size_t satisfying = (std::size_t{1} << formula.width()) - 1;
  FamilyFunction g(formula.clause_count(), satisfying);
  for (std::size_t i = 0; i < formula.clause_count(); ++i) {
    const auto subsets = cnf::satisfying_subsets(formula, i);
    for (std::size_t j = 0; j < subsets.size(); ++j) g.set(i, j, characteristic_value(subsets[j]));
  }
  return FamilyPair{std::move(f), std::move(g)};
}

std::pair<Selector, Selector> selectors_for_assignment(const cnf::CnfFormula& formula,
                                                       const cnf::Assignment& assignment) {
  if (!formula.satisfied_by(assignment))
    throw std::invalid_argument("assignment does not satisfy the formula");
  Selector sf(formula.variable_count());
  for (std::size_t i = 0; i < sf.size(); ++i) sf[i] = assignment[i] ? 0 : 1;
  const auto pattern = cnf::occurrence_pattern(formula, assignment);
  Selector sg(formula.clause_count());
  for (std::size_t i = 0; i < formula.clause_count(); ++i) {
    std::vector<std::size_t> local;
    for (std::size_t occ : pattern)
      if (occ / static_cast<std::size_t>(formula.width()) == i) local.push_back(occ);
    const auto subsets = cnf::satisfying_subsets(formula, i);
    const auto it = std::find(subsets.begin(), subsets.end(), local);
    sg[i] = static_cast<std::size_t>(it - subsets.begin());
  }
  return {std::move(sf), std::move(sg)};
}

std::optional<cnf::Assignment> decode_occurrences(const cnf::CnfFormula& formula,
                                                  const BigInt& value) {
  const cnf::OccurrenceIndex index = cnf::occurrence_index(formula);
  cnf::Assignment assignment(formula.variable_count(), false);
  for (std::size_t i = 0; i < formula.variable_count(); ++i) {
    const auto& occs = index.var_occurrences[i];
    if (occs.empty()) continue;
    const bool first = boost::multiprecision::bit_test(value, static_cast<unsigned>(occs[0]));
    for (std::size_t occ : occs)
      if (boost::multiprecision::bit_test(value, static_cast<unsigned>(occ)) != first)
        return std::nullopt;
    assignment[i] = first;
  }
  return assignment;
}

BigInt reverse_bits(const BigInt& value, std::size_t width) {
  BigInt out = 0;
  for (std::size_t j = 0; j < width; ++j)
    if (boost::multiprecision::bit_test(value, static_cast<unsigned>(j)))
      boost::multiprecision::bit_set(out, static_cast<unsigned>(width - 1 - j));
  return out;
}

}  // namespace chanred::family
