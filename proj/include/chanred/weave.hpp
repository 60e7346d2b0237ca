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

// Permutations of the words of length b over a k-letter alphabet that put
// prescribed letters at the positions where the source word holds the
// distinguished letter.
//
// Letters are zero-based and letter 0 is the distinguished one. The domain
// and codomain are both [k]^b; they are kept apart only by role. Words are
// ranked lexicographically with the first letter most significant, so the
// rank of x.w (prefixing letter x to w of length b) is x * k^b + rank(w).

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "chanred/core.hpp"

namespace chanred::weave {

using Word = std::vector<std::size_t>;

/// All words of length `length` over `k` letters, addressed by rank.
class WordSpace {
 public:
  WordSpace(std::size_t k, std::size_t length);

  std::size_t alphabet() const noexcept { return k_; }
  std::size_t length() const noexcept { return length_; }
  std::size_t size() const noexcept { return size_; }

  Word word(std::size_t rank) const;
  std::size_t rank(const Word& word) const;
  /// Letter at `position` of the word with rank `rank`.
  std::size_t letter(std::size_t rank, std::size_t position) const;

 private:
  std::size_t k_;
  std::size_t length_;
  std::size_t size_;
  std::vector<std::size_t> place_;  // k^(length-1-position)
};

class WordPermutation {
 public:
  /// forward[r] is the rank of the image of the word with rank r. Throws
  /// std::invalid_argument unless forward is a bijection of the right size.
  WordPermutation(std::size_t k, std::size_t length, std::vector<std::size_t> forward);
  static WordPermutation identity(std::size_t k, std::size_t length);

  std::size_t alphabet() const noexcept { return k_; }
  std::size_t length() const noexcept { return length_; }
  std::size_t size() const noexcept { return forward_.size(); }
  std::size_t operator()(std::size_t rank) const { return forward_[rank]; }
  const std::vector<std::size_t>& table() const noexcept { return forward_; }
  WordPermutation inverse() const;

  friend bool operator==(const WordPermutation&, const WordPermutation&) = default;

 private:
  std::size_t k_;
  std::size_t length_;
  std::vector<std::size_t> forward_;
};

/// Combines k permutations of length-b words into one of length b+1.
/// `first_letter[r]` is the letter the result must put in front when the
/// source word is 0.w with rank(w) = r. The result maps x.w to y.parts[x](w)
/// for some y, and 0.w to first_letter(w).parts[0](w); it is given by
///   0.w -> first_letter(w) . parts[0](w)
///   x.w -> 0 . parts[x](w)   if x != 0 and first_letter(parts[0]^-1(parts[x](w))) == x
///   x.w -> x . parts[x](w)   otherwise.
WordPermutation merge_permutations(const std::vector<WordPermutation>& parts,
                                   const std::vector<std::size_t>& first_letter);

/// Letters required at the distinguished positions of each domain word.
/// Entries are set exactly where the domain word holds letter 0.
class Prescription {
 public:
  Prescription(std::size_t k, std::size_t length);

  const WordSpace& space() const noexcept { return space_; }
  std::optional<std::size_t> at(std::size_t rank, std::size_t position) const;
  void set(std::size_t rank, std::size_t position, std::size_t letter);

  /// Throws std::invalid_argument unless every distinguished position has a
  /// letter in range and no other position has one.
  void validate() const;

 private:
  WordSpace space_;
  std::vector<std::optional<std::size_t>> letters_;
};

/// A permutation phi with phi(w)_i = prescription(w, i) wherever w_i = 0,
/// built recursively by stripping the first letter and merging.
WordPermutation build_permutation(const Prescription& prescription);

/// True iff phi honours every prescribed letter.
bool satisfies(const WordPermutation& phi, const Prescription& prescription);

}  // namespace chanred::weave
