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

#include "chanred/weave.hpp"

#include <stdexcept>
#include <string>

namespace chanred::weave {

WordSpace::WordSpace(std::size_t k, std::size_t length) : k_(k), length_(length) {
  if (k_ == 0) throw std::invalid_argument("alphabet must be nonempty");
  const std::uint64_t size = saturating_pow(k_, length_);
  if (size > (std::uint64_t{1} << 40)) throw std::length_error("word space too large");
  size_ = static_cast<std::size_t>(size);
  place_.resize(length_);
  std::size_t p = 1;
  for (std::size_t i = length_; i-- > 0;) {
    place_[i] = p;
    p *= k_;
  }
}

Word WordSpace::word(std::size_t rank) const {
  Word w(length_);
  for (std::size_t i = 0; i < length_; ++i) w[i] = (rank / place_[i]) % k_;
  return w;
}

std::size_t WordSpace::rank(const Word& word) const {
  if (word.size() != length_) throw std::invalid_argument("word has wrong length");
  std::size_t r = 0;
  for (std::size_t i = 0; i < length_; ++i) {
    if (word[i] >= k_) throw std::invalid_argument("letter out of range");
    r += word[i] * place_[i];
  }
  return r;
}

std::size_t WordSpace::letter(std::size_t rank, std::size_t position) const {
  return (rank / place_[position]) % k_;
}

WordPermutation::WordPermutation(std::size_t k, std::size_t length,
                                 std::vector<std::size_t> forward)
    : k_(k), length_(length), forward_(std::move(forward)) {
  if (forward_.size() != WordSpace(k_, length_).size())
    throw std::invalid_argument("permutation table has wrong size");
  if (!is_permutation(forward_)) throw std::invalid_argument("permutation table is not a bijection");
}

WordPermutation WordPermutation::identity(std::size_t k, std::size_t length) {
  std::vector<std::size_t> table(WordSpace(k, length).size());
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = i;
  return WordPermutation(k, length, std::move(table));
}

WordPermutation WordPermutation::inverse() const {
  return WordPermutation(k_, length_, chanred::inverse(forward_));
}

WordPermutation merge_permutations(const std::vector<WordPermutation>& parts,
                                   const std::vector<std::size_t>& first_letter) {
  if (parts.empty()) throw std::invalid_argument("merge needs one permutation per letter");
  const std::size_t k = parts.front().alphabet();
  const std::size_t b = parts.front().length();
  if (parts.size() != k)
    throw std::invalid_argument("merge needs exactly k = " + std::to_string(k) + " permutations");
  for (const auto& p : parts)
    if (p.alphabet() != k || p.length() != b)
      throw std::invalid_argument("sub-permutations disagree on alphabet or length");
  const std::size_t tail = parts.front().size();
  if (first_letter.size() != tail) throw std::invalid_argument("first_letter has wrong size");
  for (std::size_t y : first_letter)
    if (y >= k) throw std::invalid_argument("first_letter value out of range");

  const std::vector<std::size_t> first_inverse = chanred::inverse(parts[0].table());
  std::vector<std::size_t> forward(k * tail);
  for (std::size_t x = 0; x < k; ++x) {
    for (std::size_t w = 0; w < tail; ++w) {
      const std::size_t image_tail = parts[x](w);
      std::size_t head;
      if (x == 0) {
        head = first_letter[w];
      } else if (first_letter[first_inverse[image_tail]] == x) {
        head = 0;
      } else {
        head = x;
      }
      forward[x * tail + w] = head * tail + image_tail;
    }
  }
  return WordPermutation(k, b + 1, std::move(forward));
}

Prescription::Prescription(std::size_t k, std::size_t length)
    : space_(k, length), letters_(space_.size() * length) {}

std::optional<std::size_t> Prescription::at(std::size_t rank, std::size_t position) const {
  return letters_.at(rank * space_.length() + position);
}

void Prescription::set(std::size_t rank, std::size_t position, std::size_t letter) {
  if (space_.letter(rank, position) != 0)
    throw std::invalid_argument("prescriptions are only allowed at distinguished positions");
  if (letter >= space_.alphabet()) throw std::invalid_argument("prescribed letter out of range");
  letters_.at(rank * space_.length() + position) = letter;
}

void Prescription::validate() const {
  for (std::size_t r = 0; r < space_.size(); ++r)
    for (std::size_t i = 0; i < space_.length(); ++i) {
      const auto& v = letters_[r * space_.length() + i];
      const bool distinguished = space_.letter(r, i) == 0;
      if (distinguished != v.has_value())
        throw std::invalid_argument("prescription must be set exactly at distinguished positions");
      if (v && *v >= space_.alphabet())
        throw std::invalid_argument("prescribed letter out of range");
    }
}

namespace {

WordPermutation build_recursive(const Prescription& alpha) {
  const std::size_t k = alpha.space().alphabet();
  const std::size_t b = alpha.space().length();
  if (b == 0) return WordPermutation::identity(k, 0);
  const std::size_t tail = alpha.space().size() / k;
  std::vector<WordPermutation> parts;
  parts.reserve(k);
  for (std::size_t x = 0; x < k; ++x) {
    Prescription stripped(k, b - 1);
    for (std::size_t w = 0; w < tail; ++w)
      for (std::size_t i = 0; i + 1 < b; ++i)
        if (const auto v = alpha.at(x * tail + w, i + 1)) stripped.set(w, i, *v);
    parts.push_back(build_recursive(stripped));
  }
  std::vector<std::size_t> first_letter(tail);
  for (std::size_t w = 0; w < tail; ++w) first_letter[w] = *alpha.at(w, 0);
  return merge_permutations(parts, first_letter);
}

}  // namespace

WordPermutation build_permutation(const Prescription& prescription) {
  prescription.validate();
  return build_recursive(prescription);
}

bool satisfies(const WordPermutation& phi, const Prescription& prescription) {
  const WordSpace& space = prescription.space();
  if (phi.alphabet() != space.alphabet() || phi.length() != space.length()) return false;
  for (std::size_t r = 0; r < space.size(); ++r)
    for (std::size_t i = 0; i < space.length(); ++i)
      if (const auto v = prescription.at(r, i); v && space.letter(phi(r), i) != *v) return false;
  return true;
}

}  // namespace chanred::weave
