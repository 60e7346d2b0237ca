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

#include "chanred/cnf.hpp"

#include <sstream>
#include <stdexcept>

namespace chanred::cnf {

CnfFormula::CnfFormula(std::size_t variable_count, std::vector<Clause> clauses, int width)
    : variable_count_(variable_count), clauses_(std::move(clauses)), width_(width) {
  if (width_ < 1 || width_ > 3)
    throw std::invalid_argument("clause width must be 1, 2 or 3");
  for (std::size_t i = 0; i < clauses_.size(); ++i) {
    if (clauses_[i].size() != static_cast<std::size_t>(width_))
      throw std::invalid_argument("clause " + std::to_string(i + 1) + " has " +
                                  std::to_string(clauses_[i].size()) + " literals, expected " +
                                  std::to_string(width_));
    for (const Literal& lit : clauses_[i])
      if (lit.variable >= variable_count_)
        throw std::invalid_argument("clause " + std::to_string(i + 1) +
                                    " uses variable out of range");
  }
}

bool CnfFormula::satisfied_by(const Assignment& assignment) const {
  if (assignment.size() != variable_count_)
    throw std::invalid_argument("assignment size does not match variable count");
  for (const Clause& clause : clauses_) {
    bool sat = false;
    for (const Literal& lit : clause) sat = sat || assignment[lit.variable] == lit.positive;
    if (!sat) return false;
  }
  return true;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

long long parse_int(std::string_view tok, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const std::string s(tok);
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line_no, "expected an integer, got '" + std::string(tok) + "'");
  }
}

}  // namespace

CnfFormula parse_dimacs(std::string_view text, int width) {
  if (width < 1 || width > 3) throw ParseError(0, "width must be 1, 2 or 3");
  std::optional<std::size_t> vars;
  std::size_t declared_clauses = 0;
  std::vector<Clause> clauses;
  Clause current;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    const auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0][0] == 'c') continue;
    if (toks[0][0] == '%') break;
    if (toks[0] == "p") {
      if (vars) throw ParseError(line_no, "duplicate header");
      if (toks.size() != 4 || toks[1] != "cnf")
        throw ParseError(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
      const long long v = parse_int(toks[2], line_no);
      const long long c = parse_int(toks[3], line_no);
      if (v < 0 || c < 0) throw ParseError(line_no, "malformed header, negative count");
      vars = static_cast<std::size_t>(v);
      declared_clauses = static_cast<std::size_t>(c);
      continue;
    }
    if (!vars) throw ParseError(line_no, "clause before header");
    for (std::string_view tok : toks) {
      const long long lit = parse_int(tok, line_no);
      if (lit == 0) {
        if (current.size() != static_cast<std::size_t>(width))
          throw ParseError(line_no, "clause has " + std::to_string(current.size()) +
                                        " literals, expected " + std::to_string(width));
        clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      const long long var = lit < 0 ? -lit : lit;
      if (static_cast<unsigned long long>(var) > *vars)
        throw ParseError(line_no, "variable " + std::to_string(var) + " out of range");
      current.push_back(Literal{static_cast<std::size_t>(var - 1), lit > 0});
    }
  }
  if (!vars) throw ParseError(0, "missing 'p cnf' header");
  if (!current.empty()) throw ParseError(line_no, "last clause not terminated by 0");
  if (clauses.size() != declared_clauses)
    throw ParseError(0, "header declares " + std::to_string(declared_clauses) +
                            " clauses, found " + std::to_string(clauses.size()));
  return CnfFormula(*vars, std::move(clauses), width);
}

std::string write_dimacs(const CnfFormula& formula) {
  std::ostringstream out;
  out << "p cnf " << formula.variable_count() << ' ' << formula.clause_count() << '\n';
  for (const Clause& clause : formula.clauses()) {
    for (const Literal& lit : clause)
      out << (lit.positive ? "" : "-") << lit.variable + 1 << ' ';
    out << "0\n";
  }
  return out.str();
}

OccurrenceIndex occurrence_index(const CnfFormula& formula) {
  OccurrenceIndex index;
  const auto width = static_cast<std::size_t>(formula.width());
  index.total_occurrences = formula.occurrence_count();
  index.var_occurrences.resize(formula.variable_count());
  index.clause_occurrences.resize(formula.clause_count());
  for (std::size_t i = 0; i < formula.clause_count(); ++i) {
    for (std::size_t p = 0; p < width; ++p) {
      const std::size_t occ = width * i + p;
      index.clause_occurrences[i].push_back(occ);
      index.var_occurrences[formula.clause(i)[p].variable].push_back(occ);
    }
  }
  return index;
}

std::vector<std::vector<std::size_t>> satisfying_subsets(const CnfFormula& formula,
                                                         std::size_t clause_index) {
  if (clause_index >= formula.clause_count())
    throw std::out_of_range("clause index " + std::to_string(clause_index) + " out of range");
  const auto width = static_cast<std::size_t>(formula.width());
  const Clause& clause = formula.clause(clause_index);
  std::vector<std::vector<std::size_t>> subsets;
  // Within a clause the occurrences are contiguous, so ascending local masks
  // give ascending global characteristic values.
  for (unsigned mask = 0; mask < (1u << width); ++mask) {
    bool sat = false;
    for (std::size_t p = 0; p < width; ++p)
      sat = sat || (((mask >> p) & 1u) != 0) == clause[p].positive;
    if (!sat) continue;
    std::vector<std::size_t> subset;
    for (std::size_t p = 0; p < width; ++p)
      if ((mask >> p) & 1u) subset.push_back(width * clause_index + p);
    subsets.push_back(std::move(subset));
  }
  return subsets;
}

std::vector<std::size_t> occurrence_pattern(const CnfFormula& formula,
                                            const Assignment& assignment) {
  if (assignment.size() != formula.variable_count())
    throw std::invalid_argument("assignment size does not match variable count");
  std::vector<std::size_t> ones;
  const auto width = static_cast<std::size_t>(formula.width());
  for (std::size_t i = 0; i < formula.clause_count(); ++i)
    for (std::size_t p = 0; p < width; ++p)
      if (assignment[formula.clause(i)[p].variable]) ones.push_back(width * i + p);
  return ones;
}

std::optional<Assignment> sat_oracle(const CnfFormula& formula, Budget budget) {
  const std::size_t n = formula.variable_count();
  if (saturating_pow(2, n) > budget.states)
    throw BudgetExceeded(BudgetKind::oracle, "SAT oracle needs 2^" + std::to_string(n) +
                                                 " assignments, budget is " +
                                                 std::to_string(budget.states));
  const std::uint64_t total = std::uint64_t{1} << n;
  Assignment assignment(n);
  for (std::uint64_t code = 0; code < total; ++code) {
    // variable 0 is the most significant digit
    for (std::size_t i = 0; i < n; ++i) assignment[i] = ((code >> (n - 1 - i)) & 1u) != 0;
    if (formula.satisfied_by(assignment)) return assignment;
  }
  return std::nullopt;
}

}  // namespace chanred::cnf
