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

// Channel Assignment instances (V, d, s) and exact ordering-based solvers.
//
// A coloring c is proper when |c(x) - c(y)| >= d(x, y) for all x != y, and
// a YES-coloring when it is also of span (max - min + 1) at most s.
//
// The solvers search over vertex orderings. An ordering o is placed greedily
// from the left: c(o_1) = 1 and c(o_i) = max_{j<i} c(o_j) + d(o_j, o_i).
// Sorting any optimal coloring by color yields an ordering whose greedy
// placement is no wider, so the minimum over orderings is the optimum span.

#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "chanred/core.hpp"

namespace chanred::channel {

class CaInstance {
 public:
  CaInstance() = default;
  /// Throws std::invalid_argument on duplicate identifiers or s < 1.
  CaInstance(std::vector<std::string> vertices, BigInt span_bound);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& vertices() const noexcept { return names_; }
  const std::string& name(std::size_t v) const { return names_.at(v); }
  std::optional<std::size_t> find(const std::string& name) const;
  /// Throws std::out_of_range for unknown identifiers.
  std::size_t index(const std::string& name) const;

  const BigInt& distance(std::size_t x, std::size_t y) const { return d_[x * size() + y]; }
  /// Symmetric update; x != y and value >= 0.
  void set_distance(std::size_t x, std::size_t y, BigInt value);

  const BigInt& span_bound() const noexcept { return s_; }
  void set_span_bound(BigInt s);

  /// Appends an unconstrained vertex and returns its index.
  std::size_t add_vertex(const std::string& name);
  /// Changes a vertex identifier; the new one must be unused.
  void rename(std::size_t v, const std::string& name);

  /// Largest minimum distance (the instance is l-bounded for this l).
  BigInt max_distance() const;

  friend bool operator==(const CaInstance& a, const CaInstance& b) {
    return a.names_ == b.names_ && a.d_ == b.d_ && a.s_ == b.s_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> lookup_;
  std::vector<BigInt> d_;
  BigInt s_ = 1;
};

/// coloring[v] is the color of vertex v.
using Coloring = std::vector<BigInt>;

struct Violation {
  std::size_t x = 0;
  std::size_t y = 0;
  BigInt gap;       // |c(x) - c(y)|
  BigInt required;  // d(x, y)
};

/// First violated pair in (x, y) index order, or nullopt when proper.
/// Throws std::invalid_argument when the coloring is not total.
std::optional<Violation> first_violation(const CaInstance& instance, const Coloring& coloring);
bool is_proper(const CaInstance& instance, const Coloring& coloring);

/// max - min + 1. Throws std::invalid_argument on an empty coloring.
BigInt span_of(const Coloring& coloring);

bool is_yes_coloring(const CaInstance& instance, const Coloring& coloring);

/// Translates to min color 1 and, when handles are given, reflects so that
/// c(left) <= c(right).
Coloring normalize(const Coloring& coloring,
                   std::optional<std::pair<std::size_t, std::size_t>> handles = std::nullopt);

/// Left-packed placement along `ordering`. Throws std::invalid_argument when
/// ordering is not a permutation of the vertices.
Coloring greedy_for_order(const CaInstance& instance, const Permutation& ordering);

struct SolveOptions {
  /// Largest admissible span; nullopt means the instance's span bound.
  std::optional<BigInt> cap;
  std::uint64_t node_budget = std::uint64_t{1} << 32;
  /// Zero disables the wall-time limit.
  std::chrono::milliseconds time_limit{0};
  Exec exec = Exec::parallel;
};

struct SolveResult {
  enum class Status { optimal, exceeds_cap };
  Status status = Status::exceeds_cap;
  BigInt cap;
  /// Minimum span; meaningful when status is optimal.
  BigInt span;
  Coloring witness;
  Permutation ordering;
  std::uint64_t nodes = 0;

  bool optimal() const noexcept { return status == Status::optimal; }
};

/// Depth-first branch and bound over orderings. A partial ordering is cut
/// when a lower bound on its final span reaches the incumbent or exceeds
/// the cap; the bound combines the current top color, each unplaced vertex's
/// earliest color, and the forced gap of every unplaced pair. Orderings that
/// place a vertex at the same color as its predecessor while preceding it in
/// identifier order are skipped, since swapping the two never widens the
/// placement. Children are explored in identifier order, and the witness is
/// the first optimal ordering in that order under either policy. Throws
/// BudgetExceeded(solver) when the node budget or wall time runs out.
SolveResult solve_exact(const CaInstance& instance, const SolveOptions& options = {});

struct YesColorings {
  /// Distinct normalized greedy YES-colorings, sorted lexicographically.
  std::vector<Coloring> colorings;
  /// False when some greedy YES-coloring has span below s; then colorings
  /// with slack exist and the list is a lower bound only.
  bool rigid = true;
  std::uint64_t nodes = 0;
};

/// Greedy placements of every ordering whose span is at most s.
YesColorings enumerate_yes_colorings(
    const CaInstance& instance,
    std::optional<std::pair<std::size_t, std::size_t>> handles = std::nullopt,
    std::uint64_t node_budget = std::uint64_t{1} << 32);

struct SpannedCheck {
  bool spanned = false;
  bool rigid = true;
  std::size_t colorings = 0;
};

/// Whether every enumerated YES-coloring puts x and y exactly s - 1 apart.
SpannedCheck check_spanned(const CaInstance& instance, std::size_t x, std::size_t y,
                           std::uint64_t node_budget = std::uint64_t{1} << 32);

}  // namespace chanred::channel
