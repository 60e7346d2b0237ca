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

// chanred: reduce, verify, solve and measure instances of the
// CNF -> family -> matching -> channel assignment chain.
//
// Exit codes: 0 verified, 1 disagreement, 2 input error, 3 budget exhausted
// on a mandatory check.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "chanred/gadget.hpp"
#include "chanred/io.hpp"
#include "chanred/pipeline.hpp"

namespace {

using namespace chanred;

constexpr int kInputError = 2;
constexpr int kBudgetError = 3;

struct Common {
  std::string input;
  int width = 3;
  std::optional<std::uint64_t> budget;

  Budget resolve_budget() const {
    Budget b = Budget::from_environment();
    if (budget) b.states = *budget;
    return b;
  }
};

void emit(const std::string& output, const std::string& contents) {
  if (output.empty() || output == "-") {
    std::cout << contents;
  } else {
    io::write_file(output, contents);
  }
}

cnf::CnfFormula load_formula(const Common& c) {
  return cnf::parse_dimacs(io::read_file(c.input), c.width);
}

int run_reduce(const Common& c, const std::string& from, const std::string& to,
               const std::string& output) {
  const Budget budget = c.resolve_budget();
  std::ostream& log = output.empty() || output == "-" ? std::cerr : std::cout;
  if (from == "cmw") {
    if (to != "ca") throw std::invalid_argument("a cmw input can only be reduced --to ca");
    const io::CmwFile cmw = io::read_cmw(io::read_file(c.input));
    const auto merged = gadget::cmw_to_ca(cmw.first, cmw.second);
    emit(output, io::write_ca(pipeline::merged_file(merged)));
    log << "ca: " << merged.instance.size() << " vertices, s=" << merged.s << '\n';
    return 0;
  }
  const cnf::CnfFormula formula = load_formula(c);
  const pipeline::Stage stage = to == "family" ? pipeline::Stage::family
                                : to == "cmw"  ? pipeline::Stage::cmw
                                               : pipeline::Stage::ca;
  const pipeline::StageArtifacts a = pipeline::build(formula, stage, budget);
  log << "formula: n=" << formula.variable_count() << " m=" << formula.clause_count()
      << " width=" << formula.width() << '\n';
  log << "family: " << a.families.f.rows() << "x" << a.families.f.cols() << ", "
      << a.families.g.rows() << "x" << a.families.g.cols() << '\n';
  if (stage == pipeline::Stage::family) {
    emit(output, io::write_families({a.families.f, a.families.g}));
    return 0;
  }
  log << "cmw: sides " << a.cmw->first.graph.size() << ", " << a.cmw->second.graph.size() << '\n';
  if (stage == pipeline::Stage::cmw) {
    emit(output, io::write_cmw({a.cmw->first.graph, a.cmw->second.graph}));
    return 0;
  }
  log << "ca: " << a.ca->instance.size() << " vertices, s=" << a.ca->s << '\n';
  emit(output, io::write_ca(pipeline::merged_file(*a.ca)));
  return 0;
}

int run_gadget(const Common& c, int which, const std::string& output) {
  const io::CmwFile cmw = io::read_cmw(io::read_file(c.input));
  const auto g = gadget::matchings_to_ca(which == 1 ? cmw.first : cmw.second);
  emit(output, io::write_ca(pipeline::gadget_file(g)));
  return 0;
}

int run_verify(const Common& c, std::size_t vertex_limit, bool serial) {
  pipeline::VerifyOptions options;
  options.budget = c.resolve_budget();
  options.ca_vertex_limit = vertex_limit;
  options.exec = serial ? Exec::serial : Exec::parallel;
  const auto report = pipeline::verify(load_formula(c), options);
  std::cout << report.to_text();
  return report.exit_code();
}

int run_solve(const Common& c, const std::optional<std::string>& cap, std::uint64_t nodes,
              long time_limit_ms, bool serial) {
  const io::CaFile file = io::read_ca(io::read_file(c.input));
  channel::SolveOptions options;
  if (cap) options.cap = parse_bigint(*cap);
  options.node_budget = nodes;
  options.time_limit = std::chrono::milliseconds(time_limit_ms);
  options.exec = serial ? Exec::serial : Exec::parallel;
  std::cout << pipeline::solve(file, options).text;
  return 0;
}

int run_stats(const Common& c) {
  const auto st = pipeline::stats(load_formula(c), c.resolve_budget());
  std::cout << st.to_text();
  return st.violations.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reductions from CNF-SAT to channel assignment, with exhaustive oracles"};
  app.require_subcommand(1);

  Common common;
  const auto add_common = [&](CLI::App* sub, bool dimacs) {
    sub->add_option("input", common.input, "input file")->required()->check(CLI::ExistingFile);
    if (dimacs)
      sub->add_option("--width", common.width, "literals per clause")
          ->check(CLI::Range(1, 3))
          ->capture_default_str();
    sub->add_option("--budget", common.budget,
                    "enumeration budget in states (default 2^22 or $CHANRED_BUDGET)");
  };

  std::string from = "dimacs", to = "ca", output;
  auto* reduce = app.add_subcommand("reduce", "write one stage of the reduction chain");
  add_common(reduce, true);
  reduce->add_option("--from", from, "input format")
      ->check(CLI::IsMember({"dimacs", "cmw"}))
      ->capture_default_str();
  reduce->add_option("--to", to, "stage to emit")
      ->check(CLI::IsMember({"family", "cmw", "ca"}))
      ->capture_default_str();
  reduce->add_option("-o,--output", output, "output file (default stdout)");

  int which = 1;
  auto* gadget_cmd = app.add_subcommand("gadget", "emit the matching gadget of one cmw graph");
  add_common(gadget_cmd, false);
  gadget_cmd->add_option("--graph", which, "which graph of the cmw file")
      ->check(CLI::Range(1, 2))
      ->capture_default_str();
  gadget_cmd->add_option("-o,--output", output, "output file (default stdout)");

  std::size_t vertex_limit = 17;
  bool serial = false;
  auto* verify = app.add_subcommand("verify", "check every stage against its oracle");
  add_common(verify, true);
  verify->add_option("--ca-vertex-limit", vertex_limit, "largest instance for the exact CA solve")
      ->capture_default_str();
  verify->add_flag("--serial", serial, "use the serial kernels");

  std::optional<std::string> cap;
  std::uint64_t nodes = std::uint64_t{1} << 32;
  long time_limit_ms = 0;
  auto* solve = app.add_subcommand("solve", "exact minimum span of a ca file");
  solve->add_option("input", common.input, "ca file")->required()->check(CLI::ExistingFile);
  solve->add_option("--cap", cap, "largest admissible span (default s)");
  solve->add_option("--budget", nodes, "search node budget")->capture_default_str();
  solve->add_option("--time-limit", time_limit_ms, "wall time limit in ms, 0 for none")
      ->capture_default_str();
  solve->add_flag("--serial", serial, "use the serial search");

  auto* stats = app.add_subcommand("stats", "size table of the reduction chain");
  add_common(stats, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (reduce->parsed()) return run_reduce(common, from, to, output);
    if (gadget_cmd->parsed()) return run_gadget(common, which, output);
    if (verify->parsed()) return run_verify(common, vertex_limit, serial);
    if (solve->parsed()) return run_solve(common, cap, nodes, time_limit_ms, serial);
    if (stats->parsed()) return run_stats(common);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exhausted (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kBudgetError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
