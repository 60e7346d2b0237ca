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

#include "chanred/channel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>

namespace chanred::channel {

CaInstance::CaInstance(std::vector<std::string> vertices, BigInt span_bound)
    : names_(std::move(vertices)), d_(names_.size() * names_.size(), BigInt(0)) {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (!lookup_.emplace(names_[i], i).second)
      throw std::invalid_argument("duplicate vertex identifier '" + names_[i] + "'");
  set_span_bound(std::move(span_bound));
}

std::optional<std::size_t> CaInstance::find(const std::string& name) const {
  const auto it = lookup_.find(name);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t CaInstance::index(const std::string& name) const {
  if (const auto v = find(name)) return *v;
  throw std::out_of_range("unknown vertex '" + name + "'");
}

void CaInstance::set_distance(std::size_t x, std::size_t y, BigInt value) {
  if (x >= size() || y >= size()) throw std::out_of_range("vertex index out of range");
  if (x == y) throw std::invalid_argument("distance of a vertex to itself is fixed at 0");
  if (value < 0) throw std::invalid_argument("distances must be nonnegative");
  d_[x * size() + y] = value;
  d_[y * size() + x] = std::move(value);
}

void CaInstance::set_span_bound(BigInt s) {
  if (s < 1) throw std::invalid_argument("span bound must be positive");
  s_ = std::move(s);
}

std::size_t CaInstance::add_vertex(const std::string& name) {
  const std::size_t old = size();
  if (!lookup_.emplace(name, old).second)
    throw std::invalid_argument("duplicate vertex identifier '" + name + "'");
  names_.push_back(name);
  std::vector<BigInt> grown((old + 1) * (old + 1), BigInt(0));
  for (std::size_t i = 0; i < old; ++i)
    for (std::size_t j = 0; j < old; ++j) grown[i * (old + 1) + j] = std::move(d_[i * old + j]);
  d_ = std::move(grown);
  return old;
}

void CaInstance::rename(std::size_t v, const std::string& name) {
  if (v >= size()) throw std::out_of_range("vertex index out of range");
  if (names_[v] == name) return;
  if (!lookup_.emplace(name, v).second)
    throw std::invalid_argument("duplicate vertex identifier '" + name + "'");
  lookup_.erase(names_[v]);
  names_[v] = name;
}

BigInt CaInstance::max_distance() const {
  BigInt best = 0;
  for (const BigInt& v : d_)
    if (v > best) best = v;
  return best;
}

std::optional<Violation> first_violation(const CaInstance& instance, const Coloring& coloring) {
  if (coloring.size() != instance.size())
    throw std::invalid_argument("coloring does not cover every vertex");
  for (std::size_t x = 0; x < instance.size(); ++x)
    for (std::size_t y = x + 1; y < instance.size(); ++y) {
      BigInt gap = coloring[x] - coloring[y];
      if (gap < 0) gap = -gap;
      if (gap < instance.distance(x, y)) return Violation{x, y, gap, instance.distance(x, y)};
    }
  return std::nullopt;
}

bool is_proper(const CaInstance& instance, const Coloring& coloring) {
  return !first_violation(instance, coloring).has_value();
}

BigInt span_of(const Coloring& coloring) {
  if (coloring.empty()) throw std::invalid_argument("span of an empty coloring");
  const auto [lo, hi] = std::minmax_element(coloring.begin(), coloring.end());
  return *hi - *lo + 1;
}

bool is_yes_coloring(const CaInstance& instance, const Coloring& coloring) {
  return is_proper(instance, coloring) &&
         (coloring.empty() || span_of(coloring) <= instance.span_bound());
}

Coloring normalize(const Coloring& coloring,
                   std::optional<std::pair<std::size_t, std::size_t>> handles) {
  if (coloring.empty()) return coloring;
  const BigInt lo = *std::min_element(coloring.begin(), coloring.end());
  Coloring out(coloring.size());
  for (std::size_t i = 0; i < coloring.size(); ++i) out[i] = coloring[i] - lo + 1;
  if (handles && out[handles->first] > out[handles->second]) {
    const BigInt top = *std::max_element(out.begin(), out.end());
    for (BigInt& c : out) c = top + 1 - c;
  }
  return out;
}

Coloring greedy_for_order(const CaInstance& instance, const Permutation& ordering) {
  if (ordering.size() != instance.size() || !is_permutation(ordering))
    throw std::invalid_argument("ordering is not a permutation of the vertices");
  Coloring c(instance.size());
  for (std::size_t i = 0; i < ordering.size(); ++i) {
    BigInt value = 1;
    for (std::size_t j = 0; j < i; ++j) {
      BigInt candidate = c[ordering[j]] + instance.distance(ordering[j], ordering[i]);
      if (candidate > value) value = std::move(candidate);
    }
    c[ordering[i]] = std::move(value);
  }
  return c;
}

namespace {

template <class Value>
struct Problem {
  std::size_t n = 0;
  std::vector<Value> d;
  Value cap;
  std::vector<std::size_t> order;  // vertices by identifier
  std::vector<std::size_t> rank;   // rank[v] = position of v in `order`

  Problem(const CaInstance& instance, const BigInt& cap_value)
      : n(instance.size()), d(n * n), cap(static_cast<Value>(cap_value)), order(n), rank(n) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i * n + j] = static_cast<Value>(instance.distance(i, j));
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return instance.name(a) < instance.name(b);
    });
    for (std::size_t i = 0; i < n; ++i) rank[order[i]] = i;
  }

  const Value& dist(std::size_t x, std::size_t y) const { return d[x * n + y]; }
};

// Shared node accounting across worker threads.
class NodeMeter {
 public:
  NodeMeter(std::uint64_t budget, std::chrono::milliseconds limit)
      : budget_(budget), limit_(limit), start_(std::chrono::steady_clock::now()) {}

  // Returns false when the search must stop.
  bool tick() {
    if (aborted_.load(std::memory_order_relaxed)) return false;
    const std::uint64_t n = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
    if (n > budget_) {
      fail("node budget of " + std::to_string(budget_) + " exhausted");
      return false;
    }
    if (limit_.count() > 0 && (n & 1023u) == 0 &&
        std::chrono::steady_clock::now() - start_ > limit_) {
      fail("wall time limit of " + std::to_string(limit_.count()) + " ms exhausted");
      return false;
    }
    return true;
  }

  void fail(const std::string& why) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (!message_) message_ = why;
    aborted_.store(true);
  }

  void rethrow() const {
    if (message_) throw BudgetExceeded(BudgetKind::solver, "solver: " + *message_);
  }

  bool aborted() const { return aborted_.load(); }
  std::uint64_t nodes() const { return nodes_.load(); }

 private:
  std::uint64_t budget_;
  std::chrono::milliseconds limit_;
  std::chrono::steady_clock::time_point start_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> aborted_{false};
  std::mutex mutex_;
  std::optional<std::string> message_;
};

enum class Mode { minimize, enumerate };

template <class Value>
class OrderingSearch {
 public:
  OrderingSearch(const Problem<Value>& p, Mode mode, NodeMeter& meter)
      : p_(p),
        mode_(mode),
        meter_(meter),
        placed_(p.n, false),
        color_(p.n, Value(0)),
        earliest_((p.n + 1) * p.n, Value(1)),
        strict_(p.cap + 1) {
    ordering_.reserve(p.n);
  }

  // Called every few hundred nodes in minimize mode to pull in bounds
  // published by other workers.
  std::function<void(OrderingSearch&)> refresh;
  std::function<void(const Value&)> improved;

  void set_bounds(const Value& strict, const std::optional<Value>& loose) {
    strict_ = std::min(strict, own_bound());
    loose_ = loose;
  }

  // Places a fixed prefix; false when the prefix is cut.
  bool place_prefix(const Permutation& prefix) {
    for (std::size_t x : prefix) {
      if (placed_[x] || !try_place(x, /*check_bound=*/true)) return false;
    }
    return true;
  }

  void run() {
    if (refresh) refresh(*this);
    if (ordering_.size() == p_.n) {
      leaf();
      return;
    }
    dfs();
  }

  const std::optional<Value>& best() const { return best_; }
  const std::vector<Value>& best_colors() const { return best_colors_; }
  const Permutation& best_ordering() const { return best_ordering_; }
  std::vector<std::vector<Value>>& leaves() { return leaves_; }
  bool slack() const { return slack_; }

 private:
  Value own_bound() const { return best_ ? *best_ : p_.cap + 1; }

  bool cut(const Value& lower) const {
    if (lower >= strict_) return true;
    return loose_ && lower > *loose_;
  }

  // Places x at its earliest color and computes the next frame. Returns
  // false (leaving state untouched) when the child is dominated or bounded.
  bool try_place(std::size_t x, bool check_bound) {
    const std::size_t depth = ordering_.size();
    const std::size_t n = p_.n;
    const Value* e = &earliest_[depth * n];
    const Value cx = e[x];
    if (mode_ == Mode::minimize && depth > 0) {
      const std::size_t last = ordering_.back();
      if (cx == color_[last] && p_.rank[x] < p_.rank[last]) return false;
    }
    if (check_bound && cut(cx)) return false;
    Value* next = &earliest_[(depth + 1) * n];
    Value lower = cx;
    unplaced_.clear();
    for (std::size_t u = 0; u < n; ++u) {
      if (placed_[u] || u == x) continue;
      const Value via = cx + p_.dist(x, u);
      next[u] = e[u] < via ? via : e[u];
      if (next[u] > lower) lower = next[u];
      unplaced_.push_back(u);
    }
    if (check_bound && cut(lower)) return false;
    for (std::size_t a = 0; a < unplaced_.size(); ++a) {
      const std::size_t u = unplaced_[a];
      for (std::size_t b = a + 1; b < unplaced_.size(); ++b) {
        const std::size_t v = unplaced_[b];
        const Value& duv = p_.dist(u, v);
        if (duv == 0) continue;
        const Value pair = (next[u] < next[v] ? next[u] : next[v]) + duv;
        if (pair > lower) {
          lower = pair;
          if (check_bound && cut(lower)) return false;
        }
      }
    }
    placed_[x] = true;
    color_[x] = cx;
    ordering_.push_back(x);
    return true;
  }

  void undo() {
    const std::size_t x = ordering_.back();
    ordering_.pop_back();
    placed_[x] = false;
  }

  void leaf() {
    const Value& span = color_[ordering_.back()];
    if (mode_ == Mode::enumerate) {
      leaves_.push_back(color_);
      if (span < p_.cap) slack_ = true;
      return;
    }
    if (best_ && !(span < *best_)) return;
    best_ = span;
    best_colors_ = color_;
    best_ordering_ = ordering_;
    if (strict_ > span) strict_ = span;
    if (improved) improved(span);
  }

  void dfs() {
    for (std::size_t i = 0; i < p_.n; ++i) {
      const std::size_t x = p_.order[i];
      if (placed_[x]) continue;
      if (!meter_.tick()) return;
      if (refresh && (++since_refresh_ & 255u) == 0) refresh(*this);
      if (!try_place(x, /*check_bound=*/true)) continue;
      if (ordering_.size() == p_.n) {
        leaf();
      } else {
        dfs();
      }
      undo();
      if (meter_.aborted()) return;
    }
  }

  const Problem<Value>& p_;
  Mode mode_;
  NodeMeter& meter_;
  std::vector<bool> placed_;
  std::vector<Value> color_;
  std::vector<Value> earliest_;  // one frame of n earliest colors per depth
  Permutation ordering_;
  std::vector<std::size_t> unplaced_;
  Value strict_;
  std::optional<Value> loose_;
  std::uint64_t since_refresh_ = 0;

  std::optional<Value> best_;
  std::vector<Value> best_colors_;
  Permutation best_ordering_;

  std::vector<std::vector<Value>> leaves_;
  bool slack_ = false;
};

template <class Value>
Coloring to_coloring(const std::vector<Value>& colors) {
  Coloring out;
  out.reserve(colors.size());
  for (const Value& c : colors) out.emplace_back(c);
  return out;
}

template <class Value>
SolveResult solve_serial(const Problem<Value>& p, NodeMeter& meter) {
  OrderingSearch<Value> search(p, Mode::minimize, meter);
  search.run();
  meter.rethrow();
  SolveResult result;
  result.nodes = meter.nodes();
  if (search.best()) {
    result.status = SolveResult::Status::optimal;
    result.span = BigInt(*search.best());
    result.witness = to_coloring(search.best_colors());
    result.ordering = search.best_ordering();
  }
  return result;
}

// Each task owns one two-vertex prefix, in the order the serial search would
// visit them. Task i cuts at bounds >= the best of tasks 0..i and at bounds
// > the best of later tasks, so the first optimal ordering in serial order
// is never cut and wins the tie.
template <class Value>
SolveResult solve_parallel(const Problem<Value>& p, NodeMeter& meter) {
  if (p.n < 3) return solve_serial(p, meter);
  std::vector<Permutation> prefixes;
  for (std::size_t a : p.order)
    for (std::size_t b : p.order) {
      if (a == b) continue;
      OrderingSearch<Value> probe(p, Mode::minimize, meter);
      if (probe.place_prefix({a, b})) prefixes.push_back({a, b});
    }

  std::mutex mutex;
  std::vector<std::optional<Value>> task_best(prefixes.size());
  struct Outcome {
    std::optional<Value> best;
    std::vector<Value> colors;
    Permutation ordering;
  };
  std::vector<Outcome> outcomes(prefixes.size());
  std::exception_ptr error;

  const auto count = static_cast<long>(prefixes.size());
#pragma omp parallel for schedule(dynamic)
  for (long t = 0; t < count; ++t) {
    const auto task = static_cast<std::size_t>(t);
    if (meter.aborted()) continue;
    try {
      OrderingSearch<Value> search(p, Mode::minimize, meter);
      search.refresh = [&, task](OrderingSearch<Value>& s) {
        std::lock_guard<std::mutex> lock(mutex);
        Value strict = p.cap + 1;
        std::optional<Value> loose;
        for (std::size_t j = 0; j < task_best.size(); ++j) {
          if (!task_best[j]) continue;
          if (j <= task) {
            if (*task_best[j] < strict) strict = *task_best[j];
          } else if (!loose || *task_best[j] < *loose) {
            loose = *task_best[j];
          }
        }
        s.set_bounds(strict, loose);
      };
      search.improved = [&, task](const Value& span) {
        std::lock_guard<std::mutex> lock(mutex);
        task_best[task] = span;
      };
      if (search.place_prefix(prefixes[task])) search.run();
      outcomes[task] = Outcome{search.best(), search.best_colors(), search.best_ordering()};
    } catch (...) {
      std::lock_guard<std::mutex> lock(mutex);
      if (!error) error = std::current_exception();
      meter.fail("worker error");
    }
  }
  if (error) std::rethrow_exception(error);
  meter.rethrow();

  SolveResult result;
  result.nodes = meter.nodes();
  const Outcome* winner = nullptr;
  for (const Outcome& o : outcomes)
    if (o.best && (!winner || *o.best < *winner->best)) winner = &o;
  if (winner) {
    result.status = SolveResult::Status::optimal;
    result.span = BigInt(*winner->best);
    result.witness = to_coloring(winner->colors);
    result.ordering = winner->ordering;
  }
  return result;
}

bool small_instance(const CaInstance& instance, const BigInt& cap) {
  return fits_int64(cap + instance.max_distance() + 1, 3);
}

}  // namespace

SolveResult solve_exact(const CaInstance& instance, const SolveOptions& options) {
  const BigInt cap = options.cap.value_or(instance.span_bound());
  SolveResult result;
  result.cap = cap;
  if (instance.size() == 0 || cap < 1) return result;
  NodeMeter meter(options.node_budget, options.time_limit);
  auto dispatch = [&](const auto& problem) {
    return options.exec == Exec::serial ? solve_serial(problem, meter)
                                        : solve_parallel(problem, meter);
  };
  if (small_instance(instance, cap)) {
    result = dispatch(Problem<std::int64_t>(instance, cap));
  } else {
    result = dispatch(Problem<BigInt>(instance, cap));
  }
  result.cap = cap;
  return result;
}

namespace {

template <class Value>
YesColorings enumerate_impl(const Problem<Value>& p,
                            std::optional<std::pair<std::size_t, std::size_t>> handles,
                            NodeMeter& meter) {
  OrderingSearch<Value> search(p, Mode::enumerate, meter);
  search.run();
  meter.rethrow();
  std::set<Coloring> distinct;
  for (const auto& colors : search.leaves()) distinct.insert(normalize(to_coloring(colors), handles));
  YesColorings out;
  out.colorings.assign(distinct.begin(), distinct.end());
  out.rigid = !search.slack();
  out.nodes = meter.nodes();
  return out;
}

}  // namespace

YesColorings enumerate_yes_colorings(const CaInstance& instance,
                                     std::optional<std::pair<std::size_t, std::size_t>> handles,
                                     std::uint64_t node_budget) {
  if (handles && (handles->first >= instance.size() || handles->second >= instance.size()))
    throw std::out_of_range("handle vertex out of range");
  if (instance.size() == 0) return {};
  NodeMeter meter(node_budget, std::chrono::milliseconds{0});
  const BigInt& s = instance.span_bound();
  if (small_instance(instance, s))
    return enumerate_impl(Problem<std::int64_t>(instance, s), handles, meter);
  return enumerate_impl(Problem<BigInt>(instance, s), handles, meter);
}

SpannedCheck check_spanned(const CaInstance& instance, std::size_t x, std::size_t y,
                           std::uint64_t node_budget) {
  const YesColorings yes = enumerate_yes_colorings(instance, std::nullopt, node_budget);
  SpannedCheck check;
  check.rigid = yes.rigid;
  check.colorings = yes.colorings.size();
  check.spanned = std::all_of(yes.colorings.begin(), yes.colorings.end(), [&](const Coloring& c) {
    BigInt gap = c[x] - c[y];
    if (gap < 0) gap = -gap;
    return gap == instance.span_bound() - 1;
  });
  return check;
}

}  // namespace chanred::channel
