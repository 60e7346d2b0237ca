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

// Channel Assignment gadgets that encode the perfect matchings of a complete
// bipartite graph, the extend and merge combinators on spanned instances,
// and the composition that turns a Common Matching Weight instance into one
// Channel Assignment instance.
//
// Gadget layout for a graph with n vertices per side and maximum weight m,
// M = n*m + 1:
//   v1..v{4n}   a rigid chain, consecutive gaps between 2M and 2M + n*m
//   w1..w{2n-1} separators, w_i sits between v_{2i} and v_{2i+1}
//   a1..an      one per interval (v_{2i-1}, v_{2i}), i = 1..n
//   b1..bn      one per interval (v_{2n+2i-1}, v_{2n+2i})
// Handles are vL = v1, vR = v{4n} and vM = w_n. In every YES-coloring with
// c(vL) <= c(vR), c(vM) - c(vL) = l + sum_i weight(pi(i), i) where a_{pi(i)}
// fills interval i.

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "chanred/channel.hpp"
#include "chanred/core.hpp"
#include "chanred/matching.hpp"

namespace chanred::gadget {

struct GadgetConstants {
  std::size_t n = 0;
  BigInt m;  // max edge weight
  BigInt M;  // n*m + 1
  BigInt l;  // (4n-1)*M
  BigInt s;  // (8n-1)*M

  /// Throws std::logic_error if (4n-1)*2M + n*m != s - 1.
  static GadgetConstants for_graph(std::size_t n, const BigInt& max_weight);
};

class Gadget {
 public:
  channel::CaInstance instance;
  GadgetConstants constants;
  matching::WeightedBipartiteGraph source{1};

  // 1-based accessors, matching the chain numbering.
  std::size_t v(std::size_t i) const { return i - 1; }
  std::size_t w(std::size_t i) const { return 4 * constants.n + i - 1; }
  std::size_t a(std::size_t i) const { return 6 * constants.n - 1 + i - 1; }
  std::size_t b(std::size_t i) const { return 7 * constants.n - 1 + i - 1; }
  std::size_t left() const { return v(1); }
  std::size_t right() const { return v(4 * constants.n); }
  std::size_t middle() const { return w(constants.n); }
};

/// Vertex identifiers are `prefix` followed by v1.., w1.., a1.., b1...
Gadget matchings_to_ca(const matching::WeightedBipartiteGraph& g, const std::string& prefix = "");

/// The tight YES-coloring walking v1, a_{pi(0)}, v2, w1, v3, a_{pi(1)}, ...,
/// v{2n}, w_n, v{2n+1}, b_{pi(0)}, v{2n+2}, w_{n+1}, ..., v{4n} from color 1.
/// pi is zero-based: pi[i] is the a-vertex (and b-vertex) of interval i.
channel::Coloring claim_coloring(const Gadget& gadget, const Permutation& pi);

/// sum_i weight(pi[i], i) for a zero-based interval permutation.
BigInt interval_weight(const matching::WeightedBipartiteGraph& g, const Permutation& pi);

/// Reads back which a-vertex fills each interval. Expects c(vL) <= c(vR).
/// Throws std::invalid_argument when the chain is not increasing or an
/// interval does not hold exactly one a-vertex.
Permutation extract_permutation(const Gadget& gadget, const channel::Coloring& coloring);

struct Extension {
  channel::CaInstance instance;
  std::size_t left = 0;   // new wL
  std::size_t right = 0;  // new wR
};

/// Adds wL, wR with d(wL, wR) = l + s - 1 + r, d(wL, x) = l and d(wR, x) = r
/// for the original x except d(wL, vR) = l + s - 1 and d(wR, vL) = r + s - 1,
/// and span bound l + s + r. The two exceptions fix the orientation of the
/// original instance between wL and wR.
Extension ca_extend(const channel::CaInstance& instance, std::size_t v_left, std::size_t v_right,
                    const BigInt& l, const BigInt& r, const std::string& left_name = "wL",
                    const std::string& right_name = "wR");

/// Union of I1 and I2 identifying equal identifiers. `shared` lists the
/// identifiers expected in both; any other collision is an error. Pairs in
/// {u,w} x {v,z} get s - 1, a pair inside both instances takes the larger
/// distance, a pair inside exactly one instance keeps that distance, and
/// other pairs are unconstrained.
channel::CaInstance ca_merge(const channel::CaInstance& first,
                             const std::pair<std::string, std::string>& first_handles,
                             const channel::CaInstance& second,
                             const std::pair<std::string, std::string>& second_handles,
                             const std::vector<std::string>& shared);

struct MergedGadget {
  channel::CaInstance instance;
  Gadget first;
  Gadget second;
  BigInt l_max;
  BigInt s;
  BigInt first_l, first_r;    // extension offsets for the first gadget
  BigInt second_l, second_r;  // and for the second
  std::size_t w_left1 = 0, w_right1 = 0, w_left2 = 0, w_right2 = 0, v_middle = 0;
};

inline const std::string kSharedMiddle = "vM";

/// Both gadgets with their middle vertices renamed to a single "vM",
/// extended to a common span s = l_max + max(s1 - l1, s2 - l2), merged on
/// the extension endpoints, and every distance clamped to at most s.
MergedGadget cmw_to_ca(const matching::WeightedBipartiteGraph& g1,
                       const matching::WeightedBipartiteGraph& g2);

/// The YES-coloring assembled from the two gadgets' tight colorings. Throws
/// std::invalid_argument unless the interval weights agree.
channel::Coloring merged_coloring(const MergedGadget& merged, const Permutation& pi1,
                                  const Permutation& pi2);

}  // namespace chanred::gadget
