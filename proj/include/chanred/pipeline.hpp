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

// Staged driver: CNF -> family tables -> matching graphs -> Channel
// Assignment, the cross-stage verification harness, and size statistics.

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chanred/channel.hpp"
#include "chanred/cnf.hpp"
#include "chanred/family.hpp"
#include "chanred/gadget.hpp"
#include "chanred/io.hpp"
#include "chanred/matching.hpp"

namespace chanred::pipeline {

enum class Stage { family, cmw, ca };

/// Each present stage is the image of the previous one.
struct StageArtifacts {
  cnf::CnfFormula formula;
  family::FamilyPair families;
  std::optional<matching::CmwInstance> cmw;
  std::optional<gadget::MergedGadget> ca;
};

/// Runs the reductions up to `last`. Throws BudgetExceeded(reduction) when
/// a graph side exceeds the budget.
StageArtifacts build(const cnf::CnfFormula& formula, Stage last, Budget budget = {});

io::CaFile gadget_file(const gadget::Gadget& gadget);
io::CaFile merged_file(const gadget::MergedGadget& merged);

enum class Status { verified, constructive, skipped };

std::string_view to_string(Status status);

struct StageReport {
  std::string name;
  Status status = Status::skipped;
  /// YES/NO for verified stages; constructive stages are always YES.
  std::optional<bool> verdict;
  std::string witness;
  std::string size;
  std::string reason;  // why the stage was skipped or failed
  bool mandatory = false;
  bool failed = false;  // a check inside the stage did not hold
  double seconds = 0;
};

struct VerificationReport {
  std::vector<StageReport> stages;

  /// No failed check and all verdicts equal.
  bool agreement() const;
  /// A mandatory stage was skipped on a budget.
  bool budget_exhausted() const;
  /// 0 verified, 1 disagreement, 3 budget exhausted on a mandatory check.
  int exit_code() const;
  const StageReport* find(const std::string& name) const;
  std::string to_text() const;
};

struct VerifyOptions {
  Budget budget;
  /// Instances above this many vertices get no exact CA solve.
  std::size_t ca_vertex_limit = 17;
  std::uint64_t ca_node_budget = std::uint64_t{1} << 32;
  std::chrono::milliseconds ca_time_limit{60000};
  Exec exec = Exec::parallel;
};

/// Stages "sat", "family", "cmw" and "ca". The SAT oracle is mandatory; other
/// stages are skipped when their enumeration does not fit the budget. On a YES
/// verdict the CA stage also assembles the explicit coloring from the
/// matching witnesses and checks that it is proper with span s.
VerificationReport verify(const cnf::CnfFormula& formula, const VerifyOptions& options = {});

struct SideStats {
  std::size_t rows = 0;    // a
  std::size_t columns = 0; // k
  std::size_t length = 0;  // b
  std::size_t slots = 0;   // c
  std::size_t side = 0;    // k^b
  bool minimal = false;
};

struct SizeStats {
  std::size_t variables = 0;
  std::size_t clauses = 0;
  int width = 3;
  std::size_t occurrences = 0;
  SideStats first;
  SideStats second;
  std::size_t ca_vertices = 0;
  BigInt span_bound;
  BigInt max_distance;
  std::size_t distance_bits = 0;  // bits of the largest distance
  std::size_t encoding_bits = 0;  // total bits over all nonzero distances
  std::vector<std::string> violations;

  std::string to_text() const;
};

SizeStats stats(const cnf::CnfFormula& formula, Budget budget = {});

/// Size identities of one reduction run; empty when all hold.
std::vector<std::string> size_violations(const StageArtifacts& artifacts);

struct SolveReport {
  channel::SolveResult result;
  channel::Coloring normalized;
  std::string text;
};

/// solve_exact plus a readable summary. Normalization uses the vL/vR handles,
/// or wL1/wR1 when those are absent.
SolveReport solve(const io::CaFile& file, const channel::SolveOptions& options);

}  // namespace chanred::pipeline
