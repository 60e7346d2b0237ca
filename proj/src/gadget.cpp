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

#include "chanred/gadget.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace chanred::gadget {

using channel::CaInstance;
using channel::Coloring;

GadgetConstants GadgetConstants::for_graph(std::size_t n, const BigInt& max_weight) {
  GadgetConstants k;
  k.n = n;
  k.m = max_weight;
  k.M = BigInt(n) * max_weight + 1;
  k.l = BigInt(4 * n - 1) * k.M;
  k.s = BigInt(8 * n - 1) * k.M;
  if (BigInt(4 * n - 1) * 2 * k.M + BigInt(n) * k.m != k.s - 1)
    throw std::logic_error("gadget constants violate (4n-1)*2M + n*m = s - 1");
  return k;
}

Gadget matchings_to_ca(const matching::WeightedBipartiteGraph& g, const std::string& prefix) {
  const std::size_t n = g.size();
  Gadget gadget;
  gadget.source = g;
  gadget.constants = GadgetConstants::for_graph(n, g.max_weight());
  const BigInt& M = gadget.constants.M;
  const BigInt& m = gadget.constants.m;

  std::vector<std::string> names;
  for (std::size_t i = 1; i <= 4 * n; ++i) names.push_back(prefix + "v" + std::to_string(i));
  for (std::size_t i = 1; i <= 2 * n - 1; ++i) names.push_back(prefix + "w" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) names.push_back(prefix + "a" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) names.push_back(prefix + "b" + std::to_string(i));
  gadget.instance = CaInstance(std::move(names), gadget.constants.s);
  CaInstance& I = gadget.instance;
  const Gadget& G = gadget;
  const auto weight = [&](std::size_t i, std::size_t j) -> const BigInt& {
    return g.weight(i - 1, j - 1);
  };

  // chain
  for (std::size_t i = 1; i <= 4 * n; ++i)
    for (std::size_t j = i + 1; j <= 4 * n; ++j)
      I.set_distance(G.v(i), G.v(j), BigInt(j - i) * 2 * M);
  I.set_distance(G.left(), G.right(), gadget.constants.s - 1);

  for (std::size_t i = 1; i <= 2 * n - 1; ++i)
    for (std::size_t j = 1; j <= 4 * n; ++j) {
      const long long k = static_cast<long long>(4 * i + 1) - static_cast<long long>(2 * j);
      I.set_distance(G.w(i), G.v(j), BigInt(k < 0 ? -k : k) * M);
    }

  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= 4 * n; ++j) {
      BigInt da, db;
      if (j <= 2 * n) {
        da = j % 2 == 0 ? BigInt(M + weight(i, j / 2)) : M;
        db = BigInt(2 * n - j + 1) * 2 * M + M;
      } else {
        da = BigInt(j - 2 * n) * 2 * M + M;
        db = j % 2 == 0 ? BigInt(M + m - weight(i, j / 2 - n)) : M;
      }
      I.set_distance(G.a(i), G.v(j), std::move(da));
      I.set_distance(G.b(i), G.v(j), std::move(db));
    }
    for (std::size_t j = 1; j <= 2 * n - 1; ++j) {
      I.set_distance(G.a(i), G.w(j), 2 * M);
      I.set_distance(G.b(i), G.w(j), 2 * M);
    }
    for (std::size_t j = i + 1; j <= n; ++j) {
      I.set_distance(G.a(i), G.a(j), 4 * M);
      I.set_distance(G.b(i), G.b(j), 4 * M);
    }
    I.set_distance(G.a(i), G.b(i), BigInt(n) * 4 * M);
  }
  return gadget;
}

BigInt interval_weight(const matching::WeightedBipartiteGraph& g, const Permutation& pi) {
  if (pi.size() != g.size() || !is_permutation(pi))
    throw std::invalid_argument("not a permutation of the gadget's intervals");
  BigInt total = 0;
  for (std::size_t i = 0; i < pi.size(); ++i) total += g.weight(pi[i], i);
  return total;
}

Coloring claim_coloring(const Gadget& gadget, const Permutation& pi) {
  const std::size_t n = gadget.constants.n;
  if (pi.size() != n || !is_permutation(pi))
    throw std::invalid_argument("claim_coloring needs a permutation of the n intervals");
  std::vector<std::size_t> walk;
  for (std::size_t i = 1; i <= n; ++i) {
    walk.push_back(gadget.v(2 * i - 1));
    walk.push_back(gadget.a(pi[i - 1] + 1));
    walk.push_back(gadget.v(2 * i));
    walk.push_back(gadget.w(i));
  }
  for (std::size_t i = 1; i <= n; ++i) {
    walk.push_back(gadget.v(2 * n + 2 * i - 1));
    walk.push_back(gadget.b(pi[i - 1] + 1));
    walk.push_back(gadget.v(2 * n + 2 * i));
    if (i < n) walk.push_back(gadget.w(n + i));
  }
  Coloring c(gadget.instance.size());
  c[walk.front()] = 1;
  for (std::size_t t = 1; t < walk.size(); ++t)
    c[walk[t]] = c[walk[t - 1]] + gadget.instance.distance(walk[t - 1], walk[t]);
  return c;
}

Permutation extract_permutation(const Gadget& gadget, const Coloring& coloring) {
  const std::size_t n = gadget.constants.n;
  if (coloring.size() != gadget.instance.size())
    throw std::invalid_argument("coloring does not cover the gadget");
  for (std::size_t i = 1; i < 4 * n; ++i)
    if (!(coloring[gadget.v(i)] < coloring[gadget.v(i + 1)]))
      throw std::invalid_argument("chain colors are not increasing at v" + std::to_string(i));
  Permutation pi(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const BigInt& lo = coloring[gadget.v(2 * i - 1)];
    const BigInt& hi = coloring[gadget.v(2 * i)];
    std::size_t hits = 0;
    for (std::size_t j = 1; j <= n; ++j) {
      const BigInt& c = coloring[gadget.a(j)];
      if (lo < c && c < hi) {
        pi[i - 1] = j - 1;
        ++hits;
      }
    }
    if (hits != 1)
      throw std::invalid_argument("interval " + std::to_string(i) + " holds " +
                                  std::to_string(hits) + " a-vertices");
  }
  return pi;
}

Extension ca_extend(const CaInstance& instance, std::size_t v_left, std::size_t v_right,
                    const BigInt& l, const BigInt& r, const std::string& left_name,
                    const std::string& right_name) {
  if (v_left >= instance.size() || v_right >= instance.size())
    throw std::out_of_range("extension handle vertex missing");
  if (l < 0 || r < 0) throw std::invalid_argument("extension offsets must be nonnegative");
  Extension ext{instance, 0, 0};
  const std::size_t original = instance.size();
  ext.left = ext.instance.add_vertex(left_name);
  ext.right = ext.instance.add_vertex(right_name);
  const BigInt& s = instance.span_bound();
  for (std::size_t x = 0; x < original; ++x) {
    ext.instance.set_distance(ext.left, x, l);
    ext.instance.set_distance(ext.right, x, r);
  }
  // Without these two the original instance may sit reflected between wL
  // and wR; with them c(vL) - c(wL) = l in every YES-coloring with wL <= wR.
  ext.instance.set_distance(ext.left, v_right, l + s - 1);
  ext.instance.set_distance(ext.right, v_left, r + s - 1);
  ext.instance.set_distance(ext.left, ext.right, l + s - 1 + r);
  ext.instance.set_span_bound(l + s + r);
  return ext;
}

CaInstance ca_merge(const CaInstance& first, const std::pair<std::string, std::string>& first_handles,
                    const CaInstance& second,
                    const std::pair<std::string, std::string>& second_handles,
                    const std::vector<std::string>& shared) {
  if (first.span_bound() != second.span_bound())
    throw std::invalid_argument("merged instances must share the span bound");
  for (const auto& id : {first_handles.first, first_handles.second})
    if (!first.find(id)) throw std::out_of_range("handle '" + id + "' missing from first instance");
  for (const auto& id : {second_handles.first, second_handles.second})
    if (!second.find(id)) throw std::out_of_range("handle '" + id + "' missing from second instance");

  std::set<std::string> common;
  for (const auto& id : second.vertices())
    if (first.find(id)) common.insert(id);
  const std::set<std::string> expected(shared.begin(), shared.end());
  if (common != expected)
    throw std::invalid_argument("vertex identifiers shared by the two instances differ from the "
                                "declared identification");

  std::vector<std::string> names = first.vertices();
  for (const auto& id : second.vertices())
    if (!first.find(id)) names.push_back(id);
  CaInstance merged(names, first.span_bound());
  const std::size_t n = merged.size();
  std::vector<std::optional<std::size_t>> in_first(n), in_second(n);
  for (std::size_t i = 0; i < n; ++i) {
    in_first[i] = first.find(names[i]);
    in_second[i] = second.find(names[i]);
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      const bool both_first = in_first[x] && in_first[y];
      const bool both_second = in_second[x] && in_second[y];
      BigInt d = 0;
      if (both_first && both_second) {
        d = std::max(first.distance(*in_first[x], *in_first[y]),
                     second.distance(*in_second[x], *in_second[y]));
      } else if (both_first) {
        d = first.distance(*in_first[x], *in_first[y]);
      } else if (both_second) {
        d = second.distance(*in_second[x], *in_second[y]);
      }
      if (d != 0) merged.set_distance(x, y, std::move(d));
    }
  const BigInt anchor = first.span_bound() - 1;
  for (const auto& lo : {first_handles.first, second_handles.first})
    for (const auto& hi : {first_handles.second, second_handles.second}) {
      const std::size_t x = merged.index(lo);
      const std::size_t y = merged.index(hi);
      if (x != y) merged.set_distance(x, y, anchor);
    }
  return merged;
}

MergedGadget cmw_to_ca(const matching::WeightedBipartiteGraph& g1,
                       const matching::WeightedBipartiteGraph& g2) {
  MergedGadget out;
  out.first = matchings_to_ca(g1, "g1.");
  out.second = matchings_to_ca(g2, "g2.");
  out.first.instance.rename(out.first.middle(), kSharedMiddle);
  out.second.instance.rename(out.second.middle(), kSharedMiddle);

  const BigInt& l1 = out.first.constants.l;
  const BigInt& l2 = out.second.constants.l;
  const BigInt& s1 = out.first.constants.s;
  const BigInt& s2 = out.second.constants.s;
  out.l_max = std::max(l1, l2);
  out.s = out.l_max + std::max(BigInt(s1 - l1), BigInt(s2 - l2));
  out.first_l = out.l_max - l1;
  out.first_r = out.s - (out.l_max + s1 - l1);
  out.second_l = out.l_max - l2;
  out.second_r = out.s - (out.l_max - l2 + s2);

  const Extension e1 = ca_extend(out.first.instance, out.first.left(), out.first.right(),
                                 out.first_l, out.first_r, "g1.wL", "g1.wR");
  const Extension e2 = ca_extend(out.second.instance, out.second.left(), out.second.right(),
                                 out.second_l, out.second_r, "g2.wL", "g2.wR");
  out.instance = ca_merge(e1.instance, {"g1.wL", "g1.wR"}, e2.instance, {"g2.wL", "g2.wR"},
                          {kSharedMiddle});
  for (std::size_t x = 0; x < out.instance.size(); ++x)
    for (std::size_t y = x + 1; y < out.instance.size(); ++y)
      if (out.instance.distance(x, y) > out.s) out.instance.set_distance(x, y, out.s);

  out.w_left1 = out.instance.index("g1.wL");
  out.w_right1 = out.instance.index("g1.wR");
  out.w_left2 = out.instance.index("g2.wL");
  out.w_right2 = out.instance.index("g2.wR");
  out.v_middle = out.instance.index(kSharedMiddle);
  return out;
}

Coloring merged_coloring(const MergedGadget& merged, const Permutation& pi1,
                         const Permutation& pi2) {
  if (interval_weight(merged.first.source, pi1) != interval_weight(merged.second.source, pi2))
    throw std::invalid_argument("the two matchings have different weights");
  Coloring c(merged.instance.size());
  // Each tight gadget coloring starts at c(vL) = 1; shifting by the left
  // extension offset puts both wL endpoints at color 1.
  const auto place = [&](const Gadget& gadget, const Permutation& pi, const BigInt& l,
                         const BigInt& r, std::size_t w_left, std::size_t w_right) {
    const Coloring local = claim_coloring(gadget, pi);
    for (std::size_t v = 0; v < local.size(); ++v)
      c[merged.instance.index(gadget.instance.name(v))] = local[v] + l;
    c[w_left] = 1;
    c[w_right] = local[gadget.right()] + l + r;
  };
  place(merged.first, pi1, merged.first_l, merged.first_r, merged.w_left1, merged.w_right1);
  place(merged.second, pi2, merged.second_l, merged.second_r, merged.w_left2, merged.w_right2);
  return c;
}

}  // namespace chanred::gadget
