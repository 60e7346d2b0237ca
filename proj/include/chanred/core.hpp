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

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace chanred {

using BigInt = boost::multiprecision::cpp_int;

/// Parses an optionally signed decimal integer. Throws std::invalid_argument.
BigInt parse_bigint(std::string_view text);

inline std::string to_string(const BigInt& v) { return v.str(); }

/// Number of bits needed to write |v| (0 for 0).
std::size_t bit_length(const BigInt& v);

/// Fits in a signed 64-bit word with `headroom_bits` to spare.
bool fits_int64(const BigInt& v, unsigned headroom_bits = 2);

/// Which enumeration ran out of room. Reduction budgets guard instance
/// construction, oracle budgets guard brute-force enumerations, solver
/// budgets guard the branch-and-bound node count or wall time.
enum class BudgetKind { reduction, oracle, solver };

std::string_view to_string(BudgetKind kind);

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(BudgetKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  BudgetKind kind() const noexcept { return kind_; }

 private:
  BudgetKind kind_;
};

/// Input that cannot be parsed; `line` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what
                                     : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 22;

/// Upper bound on enumerated states (selectors, permutations, words).
struct Budget {
  std::uint64_t states = kDefaultBudget;

  /// kDefaultBudget unless CHANRED_BUDGET holds a positive integer.
  static Budget from_environment();
};

/// Execution policy for the kernels that have both a serial reference and
/// an OpenMP implementation. Results are identical under either policy.
enum class Exec { serial, parallel };

/// base^exp saturated at UINT64_MAX.
std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp);

/// n! saturated at UINT64_MAX.
std::uint64_t saturating_factorial(std::uint64_t n);

/// Sorted, strictly increasing set of nonnegative integers.
class WeightSet {
 public:
  WeightSet() = default;
  /// Sorts and deduplicates.
  explicit WeightSet(std::vector<BigInt> values);

  const std::vector<BigInt>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  bool contains(const BigInt& v) const;
  const BigInt& min() const { return values_.front(); }
  const BigInt& max() const { return values_.back(); }

  /// Smallest common element, if any.
  std::optional<BigInt> smallest_common(const WeightSet& other) const;
  WeightSet intersection(const WeightSet& other) const;

  friend bool operator==(const WeightSet&, const WeightSet&) = default;

 private:
  std::vector<BigInt> values_;
};

/// Zero-based permutation: perm[i] is the image of i.
using Permutation = std::vector<std::size_t>;

bool is_permutation(const Permutation& perm);
Permutation inverse(const Permutation& perm);

}  // namespace chanred
