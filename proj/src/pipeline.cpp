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

#include "chanred/pipeline.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace chanred::pipeline {

using chanred::to_string;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::size_t merged_vertices(std::size_t n1, std::size_t n2) { return 8 * n1 + 8 * n2 + 1; }

// The CA distance table holds |V|^2 entries; that is what the budget caps.
void check_ca_budget(std::size_t vertices, Budget budget) {
  const std::uint64_t entries = saturating_pow(vertices, 2);
  if (entries > budget.states)
    throw BudgetExceeded(BudgetKind::reduction,
                         "channel instance with " + std::to_string(vertices) +
                             " vertices needs " + std::to_string(entries) +
                             " distance entries, budget is " + std::to_string(budget.states));
}

std::string bits(const std::vector<bool>& values) {
  std::string out;
  for (bool v : values) out += v ? '1' : '0';
  return out.empty() ? "(empty)" : out;
}

std::string side_text(const matching::ReductionTrace& t) {
  return std::to_string(t.alphabet) + "^" + std::to_string(t.length) + " = " +
         std::to_string(t.side());
}

void add_violation(std::vector<std::string>& out, bool holds, const std::string& what) {
  if (!holds) out.push_back(what);
}

void trace_violations(std::vector<std::string>& out, const std::string& label,
                      const matching::FamilyGraph& fg) {
  add_violation(out, fg.trace.minimal(), label + ": word length is not minimal");
  add_violation(out, fg.graph.size() == fg.trace.side(),
                label + ": graph side differs from k^b");
}

}  // namespace

StageArtifacts build(const cnf::CnfFormula& formula, Stage last, Budget budget) {
  StageArtifacts out{formula, family::cnf_to_families(formula), std::nullopt, std::nullopt};
  if (last == Stage::family) return out;
  out.cmw = matching::CmwInstance{matching::family_to_graph(out.families.f, budget),
                                  matching::family_to_graph(out.families.g, budget)};
  if (last == Stage::cmw) return out;
  check_ca_budget(merged_vertices(out.cmw->first.graph.size(), out.cmw->second.graph.size()),
                  budget);
  out.ca = gadget::cmw_to_ca(out.cmw->first.graph, out.cmw->second.graph);
  return out;
}

io::CaFile gadget_file(const gadget::Gadget& g) {
  const auto& I = g.instance;
  return io::CaFile{I, {{"vL", I.name(g.left())}, {"vR", I.name(g.right())},
                        {"vM", I.name(g.middle())}}};
}

io::CaFile merged_file(const gadget::MergedGadget& m) {
  const auto& I = m.instance;
  return io::CaFile{I,
                    {{"vM", I.name(m.v_middle)},
                     {"wL1", I.name(m.w_left1)},
                     {"wR1", I.name(m.w_right1)},
                     {"wL2", I.name(m.w_left2)},
                     {"wR2", I.name(m.w_right2)}}};
}

std::vector<std::string> size_violations(const StageArtifacts& a) {
  std::vector<std::string> out;
  const auto& f = a.families.f;
  const auto& g = a.families.g;
  add_violation(out, f.rows() == a.formula.variable_count() && f.cols() == 2,
                "variable table is not n x 2");
  add_violation(out,
                g.rows() == a.formula.clause_count() &&
                    g.cols() == (std::size_t{1} << a.formula.width()) - 1,
                "clause table is not m x (2^width - 1)");
  if (a.cmw) {
    trace_violations(out, "first graph", a.cmw->first);
    trace_violations(out, "second graph", a.cmw->second);
  }
  if (a.ca) {
    const std::size_t n1 = a.ca->first.constants.n;
    const std::size_t n2 = a.ca->second.constants.n;
    add_violation(out, a.ca->first.instance.size() == 8 * n1 - 1,
                  "first gadget does not have 8n - 1 vertices");
    add_violation(out, a.ca->second.instance.size() == 8 * n2 - 1,
                  "second gadget does not have 8n - 1 vertices");
    add_violation(out, a.ca->instance.size() == merged_vertices(n1, n2),
                  "merged instance does not have 8n1 + 8n2 + 1 vertices");
    add_violation(out, a.ca->instance.max_distance() <= a.ca->s,
                  "merged instance has a distance above s");
  }
  return out;
}

std::string_view to_string(Status status) {
  switch (status) {
    case Status::verified: return "verified";
    case Status::constructive: return "constructive";
    case Status::skipped: return "skipped";
  }
  return "?";
}

bool VerificationReport::agreement() const {
  std::optional<bool> seen;
  for (const auto& s : stages) {
    if (s.failed) return false;
    if (!s.verdict) continue;
    if (seen && *seen != *s.verdict) return false;
    seen = s.verdict;
  }
  return true;
}

bool VerificationReport::budget_exhausted() const {
  return std::any_of(stages.begin(), stages.end(), [](const StageReport& s) {
    return s.mandatory && s.status == Status::skipped;
  });
}

int VerificationReport::exit_code() const {
  if (!agreement()) return 1;
  if (budget_exhausted()) return 3;
  return 0;
}

const StageReport* VerificationReport::find(const std::string& name) const {
  for (const auto& s : stages)
    if (s.name == name) return &s;
  return nullptr;
}

std::string VerificationReport::to_text() const {
  std::ostringstream out;
  for (const auto& s : stages) {
    out << std::left << std::setw(7) << s.name << std::setw(13) << to_string(s.status)
        << std::setw(4) << (s.verdict ? (*s.verdict ? "YES" : "NO") : "-") << ' '
        << std::fixed << std::setprecision(3) << s.seconds << " s  " << s.size;
    if (!s.witness.empty()) out << "  witness: " << s.witness;
    if (!s.reason.empty()) out << "  (" << s.reason << ")";
    if (s.failed) out << "  CHECK FAILED";
    out << '\n';
  }
  out << "agreement: " << (agreement() ? "yes" : "NO") << '\n';
  return out.str();
}

VerificationReport verify(const cnf::CnfFormula& formula, const VerifyOptions& options) {
  VerificationReport report;
  const Budget budget = options.budget;

  StageReport sat;
  sat.name = "sat";
  sat.mandatory = true;
  sat.size = "n=" + std::to_string(formula.variable_count()) +
             " m=" + std::to_string(formula.clause_count());
  std::optional<cnf::Assignment> assignment;
  auto start = Clock::now();
  try {
    assignment = cnf::sat_oracle(formula, budget);
    sat.status = Status::verified;
    sat.verdict = assignment.has_value();
    if (assignment) sat.witness = bits(*assignment);
  } catch (const BudgetExceeded& e) {
    sat.reason = e.what();
  }
  sat.seconds = seconds_since(start);
  report.stages.push_back(sat);

  const family::FamilyPair families = family::cnf_to_families(formula);
  StageReport fam;
  fam.name = "family";
  fam.size = std::to_string(families.f.rows()) + "x" + std::to_string(families.f.cols()) + ", " +
             std::to_string(families.g.rows()) + "x" + std::to_string(families.g.cols());
  std::optional<family::FamilyWitness> common;
  start = Clock::now();
  try {
    common = family::family_intersect(families.f, families.g, budget);
    fam.status = Status::verified;
    fam.verdict = common.has_value();
    if (common) {
      fam.witness = to_string(common->value);
      const auto decoded = family::decode_occurrences(formula, common->value);
      if (!decoded || !formula.satisfied_by(*decoded)) {
        fam.failed = true;
        fam.reason = "common value does not decode to a satisfying assignment";
      }
    }
  } catch (const BudgetExceeded& e) {
    fam.reason = e.what();
  }
  fam.seconds = seconds_since(start);
  report.stages.push_back(fam);

  // Selectors for the constructive direction: from the family witness, else
  // from the satisfying assignment.
  std::optional<std::pair<family::Selector, family::Selector>> selectors;
  if (common) {
    selectors.emplace(common->f_selector, common->g_selector);
  } else if (assignment) {
    selectors = family::selectors_for_assignment(formula, *assignment);
  }

  StageReport cmw;
  cmw.name = "cmw";
  StageReport ca;
  ca.name = "ca";
  std::optional<matching::CmwInstance> graphs;
  start = Clock::now();
  try {
    graphs = matching::CmwInstance{matching::family_to_graph(families.f, budget),
                                   matching::family_to_graph(families.g, budget)};
  } catch (const BudgetExceeded& e) {
    cmw.reason = e.what();
    ca.reason = "no matching graphs";
  }
  std::optional<std::pair<Permutation, Permutation>> matchings;
  if (graphs) {
    const auto& g1 = graphs->first;
    const auto& g2 = graphs->second;
    cmw.size = "sides " + side_text(g1.trace) + ", " + side_text(g2.trace);
    if (selectors) {
      Permutation p1 = matching::selector_to_matching(g1.trace, selectors->first);
      Permutation p2 = matching::selector_to_matching(g2.trace, selectors->second);
      const BigInt w1 = matching::matching_weight(g1.graph, p1);
      const BigInt w2 = matching::matching_weight(g2.graph, p2);
      if (w1 != family::selector_sum(families.f, selectors->first) ||
          w2 != family::selector_sum(families.g, selectors->second) || w1 != w2) {
        cmw.failed = true;
        cmw.reason = "matchings built from the selectors have the wrong weight";
      } else {
        matchings.emplace(std::move(p1), std::move(p2));
      }
    }
    try {
      const auto found = matching::cmw_oracle(g1.graph, g2.graph, budget, options.exec);
      cmw.status = Status::verified;
      cmw.verdict = found.has_value();
      if (found) cmw.witness = "weight " + to_string(found->weight);
    } catch (const BudgetExceeded& e) {
      if (cmw.reason.empty()) cmw.reason = e.what();
    }
  }
  cmw.seconds = seconds_since(start);
  report.stages.push_back(cmw);

  start = Clock::now();
  if (graphs) {
    const std::size_t n1 = graphs->first.graph.size();
    const std::size_t n2 = graphs->second.graph.size();
    std::optional<gadget::MergedGadget> merged;
    try {
      check_ca_budget(merged_vertices(n1, n2), budget);
      merged = gadget::cmw_to_ca(graphs->first.graph, graphs->second.graph);
    } catch (const BudgetExceeded& e) {
      ca.reason = e.what();
    }
    if (merged) {
      ca.size = std::to_string(merged->instance.size()) + " vertices, s=" + to_string(merged->s);
      if (merged->instance.size() <= options.ca_vertex_limit) {
        try {
          channel::SolveOptions solve;
          solve.cap = merged->s;
          solve.node_budget = options.ca_node_budget;
          solve.time_limit = options.ca_time_limit;
          solve.exec = options.exec;
          const auto result = channel::solve_exact(merged->instance, solve);
          ca.status = Status::verified;
          ca.verdict = result.optimal();
          ca.witness = result.optimal() ? "minimal span " + to_string(result.span)
                                        : "minimal span exceeds s";
        } catch (const BudgetExceeded& e) {
          ca.reason = e.what();
        }
      } else {
        ca.reason = std::to_string(merged->instance.size()) +
                    " vertices exceeds the exact-solver limit of " +
                    std::to_string(options.ca_vertex_limit);
      }
      if (matchings) {
        const auto coloring = gadget::merged_coloring(*merged, inverse(matchings->first),
                                                      inverse(matchings->second));
        const bool ok = channel::is_proper(merged->instance, coloring) &&
                        channel::span_of(coloring) == merged->s;
        if (!ok) {
          ca.failed = true;
          ca.reason = "assembled coloring is not a YES-coloring of span s";
        } else if (ca.status == Status::skipped) {
          ca.status = Status::constructive;
          ca.verdict = true;
          ca.witness = "explicit proper coloring of span " + to_string(merged->s);
          ca.reason.clear();
        }
      }
    }
  }
  ca.seconds = seconds_since(start);
  report.stages.push_back(ca);
  return report;
}

std::string SizeStats::to_text() const {
  std::ostringstream out;
  const auto side = [&](const char* label, const SideStats& s) {
    out << label << ": a=" << s.rows << " k=" << s.columns << " b=" << s.length
        << " c=" << s.slots << " side k^b=" << s.side;
    out << "  minimality (b-1)*k^(b-2) < a <= b*k^(b-1): " << (s.minimal ? "holds" : "VIOLATED")
        << '\n';
  };
  out << "variables n: " << variables << '\n'
      << "clauses m: " << clauses << '\n'
      << "width: " << width << '\n'
      << "occurrences: " << occurrences << '\n';
  side("first graph", first);
  side("second graph", second);
  out << "ca vertices 8n1+8n2+1: " << ca_vertices << '\n';
  if (span_bound != 0) {
    out << "span bound s: " << span_bound << '\n'
        << "max distance l: " << max_distance << '\n'
        << "bits of l: " << distance_bits << '\n'
        << "encoding bits (all nonzero distances): " << encoding_bits << '\n';
  } else {
    out << "channel instance: not materialized (exceeds budget)\n";
  }
  for (const auto& v : violations) out << "VIOLATION: " << v << '\n';
  return out.str();
}

SizeStats stats(const cnf::CnfFormula& formula, Budget budget) {
  SizeStats st;
  st.variables = formula.variable_count();
  st.clauses = formula.clause_count();
  st.width = formula.width();
  st.occurrences = formula.occurrence_count();
  const family::FamilyPair families = family::cnf_to_families(formula);
  const auto side = [](const family::FamilyFunction& f) {
    matching::ReductionTrace t;
    t.rows = f.rows();
    t.alphabet = f.cols();
    t.length = matching::minimal_length(f.rows(), f.cols());
    t.slots = t.length * static_cast<std::size_t>(saturating_pow(t.alphabet, t.length - 1));
    return SideStats{t.rows, t.alphabet, t.length, t.slots, t.side(), t.minimal()};
  };
  st.first = side(families.f);
  st.second = side(families.g);
  st.ca_vertices = merged_vertices(st.first.side, st.second.side);
  for (const auto* s : {&st.first, &st.second})
    add_violation(st.violations, s->minimal, "word length is not minimal");

  // Materialize only when the graphs and the distance table fit the budget.
  if (saturating_pow(std::max(st.first.side, st.second.side), 2) <= budget.states &&
      saturating_pow(st.ca_vertices, 2) <= budget.states) {
    const StageArtifacts a = build(formula, Stage::ca, budget);
    const auto& I = a.ca->instance;
    st.span_bound = I.span_bound();
    st.max_distance = I.max_distance();
    st.distance_bits = bit_length(st.max_distance);
    for (std::size_t x = 0; x < I.size(); ++x)
      for (std::size_t y = x + 1; y < I.size(); ++y)
        if (I.distance(x, y) != 0) st.encoding_bits += bit_length(I.distance(x, y));
    for (auto& v : size_violations(a)) st.violations.push_back(std::move(v));
    add_violation(st.violations, I.size() == st.ca_vertices,
                  "built instance size differs from 8n1+8n2+1");
  }
  return st;
}

SolveReport solve(const io::CaFile& file, const channel::SolveOptions& options) {
  SolveReport report;
  const auto& I = file.instance;
  report.result = channel::solve_exact(I, options);

  std::optional<std::pair<std::size_t, std::size_t>> handles;
  for (const auto& [lo, hi] : {std::pair<std::string, std::string>{"vL", "vR"}, {"wL1", "wR1"}}) {
    const auto l = file.handles.find(lo);
    const auto r = file.handles.find(hi);
    if (l != file.handles.end() && r != file.handles.end()) {
      handles.emplace(I.index(l->second), I.index(r->second));
      break;
    }
  }

  std::ostringstream out;
  out << "vertices: " << I.size() << '\n'
      << "span bound s: " << I.span_bound() << '\n'
      << "cap: " << report.result.cap << '\n'
      << "nodes: " << report.result.nodes << '\n';
  if (!report.result.optimal()) {
    out << "result: exceeds cap\n";
  } else {
    report.normalized = channel::normalize(report.result.witness, handles);
    out << "result: minimal span " << report.result.span << '\n';
    out << "yes-instance: " << (report.result.span <= I.span_bound() ? "yes" : "no") << '\n';
    const auto print = [&](const char* label, const channel::Coloring& c) {
      out << label << ':';
      for (std::size_t v = 0; v < I.size(); ++v) out << ' ' << I.name(v) << '=' << c[v];
      out << '\n';
    };
    print("witness", report.result.witness);
    print("normalized", report.normalized);
    out << "ordering: ";
    for (std::size_t i = 0; i < report.result.ordering.size(); ++i)
      out << (i ? " " : "") << I.name(report.result.ordering[i]);
    out << '\n';
  }
  report.text = out.str();
  return report;
}

}  // namespace chanred::pipeline
