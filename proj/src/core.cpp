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

#include "chanred/core.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

namespace chanred {

BigInt parse_bigint(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer");
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) throw std::invalid_argument("sign without digits");
  BigInt value = 0;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw std::invalid_argument("not a decimal integer: '" + std::string(text) + "'");
    value *= 10;
    value += ch - '0';
  }
  return negative ? BigInt(-value) : value;
}

std::size_t bit_length(const BigInt& v) {
  if (v == 0) return 0;
  return boost::multiprecision::msb(boost::multiprecision::abs(v)) + 1;
}

bool fits_int64(const BigInt& v, unsigned headroom_bits) {
  return bit_length(v) + headroom_bits <= 63;
}

std::string_view to_string(BudgetKind kind) {
  switch (kind) {
    case BudgetKind::reduction: return "reduction";
    case BudgetKind::oracle: return "oracle";
    case BudgetKind::solver: return "solver";
  }
  return "unknown";
}

Budget Budget::from_environment() {
  Budget budget;
  if (const char* env = std::getenv("CHANRED_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) budget.states = v;
  }
  return budget;
}

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && result > kMax / base) return kMax;
    result *= base;
  }
  return result;
}

std::uint64_t saturating_factorial(std::uint64_t n) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t result = 1;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (result > kMax / i) return kMax;
    result *= i;
  }
  return result;
}

WeightSet::WeightSet(std::vector<BigInt> values) : values_(std::move(values)) {
  std::sort(values_.begin(), values_.end());
  values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
}

bool WeightSet::contains(const BigInt& v) const {
  return std::binary_search(values_.begin(), values_.end(), v);
}

std::optional<BigInt> WeightSet::smallest_common(const WeightSet& other) const {
  auto a = values_.begin();
  auto b = other.values_.begin();
  while (a != values_.end() && b != other.values_.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      return *a;
    }
  }
  return std::nullopt;
}

WeightSet WeightSet::intersection(const WeightSet& other) const {
  std::vector<BigInt> out;
  std::set_intersection(values_.begin(), values_.end(), other.values_.begin(),
                        other.values_.end(), std::back_inserter(out));
  WeightSet result;
  result.values_ = std::move(out);
  return result;
}

bool is_permutation(const Permutation& perm) {
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t v : perm) {
    if (v >= perm.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Permutation inverse(const Permutation& perm) {
  Permutation inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
  return inv;
}

}  // namespace chanred
