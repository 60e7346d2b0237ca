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

// Complete weighted bipartite graphs, the sets of their perfect-matching
// weights, and the compression of a family table into a graph whose
// matching weights are exactly the family.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "chanred/cnf.hpp"
#include "chanred/core.hpp"
#include "chanred/family.hpp"

namespace chanred::matching {

/// n x n nonnegative weights; row = left vertex, column = right vertex.
class WeightedBipartiteGraph {
 public:
  explicit WeightedBipartiteGraph(std::size_t n);
  WeightedBipartiteGraph(std::size_t n, std::vector<BigInt> weights);
  static WeightedBipartiteGraph from_rows(const std::vector<std::vector<BigInt>>& rows);

  std::size_t size() const noexcept { return n_; }
  const BigInt& weight(std::size_t left, std::size_t right) const {
    return weights_[left * n_ + right];
  }
  void set_weight(std::size_t left, std::size_t right, BigInt value);
  BigInt max_weight() const;

  friend bool operator==(const WeightedBipartiteGraph&, const WeightedBipartiteGraph&) = default;

 private:
  std::size_t n_;
  std::vector<BigInt> weights_;
};

/// Sum of weight(i, perm[i]).
BigInt matching_weight(const WeightedBipartiteGraph& g, const Permutation& perm);

/// All perfect-matching weights by enumerating the n! permutations. The
/// parallel policy splits the enumeration by the first two rows' choices;
/// the result is the same set. Throws BudgetExceeded(oracle) when n!
/// exceeds the budget.
WeightSet matching_weight_set(const WeightedBipartiteGraph& g, Budget budget = {},
                              Exec exec = Exec::parallel);

/// Lexicographically first permutation of total weight `value`.
std::optional<Permutation> find_matching(const WeightedBipartiteGraph& g, const BigInt& value,
                                         Budget budget = {});

struct CmwWitness {
  BigInt weight;
  Permutation first;
  Permutation second;
};

/// Smallest weight shared by perfect matchings of both graphs.
std::optional<CmwWitness> cmw_oracle(const WeightedBipartiteGraph& g1,
                                     const WeightedBipartiteGraph& g2, Budget budget = {},
                                     Exec exec = Exec::parallel);

/// The word-length choice and the assignment of table rows to the
/// distinguished positions of the left-side words.
struct ReductionTrace {
  std::size_t rows = 0;      // a, rows of the original table
  std::size_t alphabet = 1;  // k, columns of the table
  std::size_t length = 1;    // b, smallest positive with b * k^(b-1) >= a
  std::size_t slots = 1;     // c = b * k^(b-1)
  /// row_at[rank * length + position]: table row placed there, or nullopt
  /// where the word does not hold letter 0.
  std::vector<std::optional<std::size_t>> row_at;

  std::size_t side() const;
  /// (b-1) * k^(b-2) < a <= b * k^(b-1); the left inequality is vacuous at b = 1.
  bool minimal() const;
};

/// Smallest b >= 1 with b * k^(b-1) >= rows.
std::size_t minimal_length(std::size_t rows, std::size_t alphabet);

struct FamilyGraph {
  WeightedBipartiteGraph graph;
  ReductionTrace trace;
  family::FamilyFunction extended;  // the table padded with zero rows to c rows
};

/// weight(t, u) = sum over distinguished positions i of t of
/// f(row_at(t, i), u_i). Rows are assigned to distinguished positions in
/// word-rank order, positions ascending. Throws BudgetExceeded(reduction)
/// when k^b exceeds the budget.
FamilyGraph family_to_graph(const family::FamilyFunction& f, Budget budget = {});

/// A perfect matching whose weight equals the selector sum. The selector may
/// cover the original rows or all c padded rows; missing padded rows pick
/// column 0.
Permutation selector_to_matching(const ReductionTrace& trace, const family::Selector& selector);

struct CmwInstance {
  FamilyGraph first;   // from the variable table
  FamilyGraph second;  // from the clause table
};

CmwInstance cnf_to_cmw(const cnf::CnfFormula& formula, Budget budget = {});

}  // namespace chanred::matching
