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

#include "chanred/io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace chanred::io {
namespace {

struct Line {
  std::size_t number = 0;
  std::vector<std::string> tokens;  // empty for blank lines
};

// Splits into lines with comments stripped. Blank lines are kept because the
// cmw format uses one as a separator; comment-only lines are dropped.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    bool commented = false;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
      commented = true;
    }
    Line line{++number, {}};
    std::istringstream in{std::string(raw)};
    for (std::string token; in >> token;) line.tokens.push_back(token);
    if (!line.tokens.empty() || !commented) lines.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

BigInt number(const Line& line, std::size_t i, const char* what) {
  try {
    BigInt v = parse_bigint(line.tokens.at(i));
    if (v < 0) throw std::invalid_argument("negative");
    return v;
  } catch (const std::exception&) {
    throw ParseError(line.number, std::string("expected nonnegative integer for ") + what +
                                      ", got '" + line.tokens.at(i) + "'");
  }
}

std::size_t count(const Line& line, std::size_t i, const char* what) {
  const BigInt v = number(line, i, what);
  if (v > BigInt(std::numeric_limits<std::uint32_t>::max()))
    throw ParseError(line.number, std::string(what) + " is too large");
  return static_cast<std::size_t>(v);
}

class Cursor {
 public:
  explicit Cursor(std::string_view text) : lines_(tokenize(text)) {}

  void skip_blank() {
    while (pos_ < lines_.size() && lines_[pos_].tokens.empty()) ++pos_;
  }
  bool done() {
    skip_blank();
    return pos_ >= lines_.size();
  }
  const Line* peek_raw() const { return pos_ < lines_.size() ? &lines_[pos_] : nullptr; }
  const Line& next(const char* expected) {
    skip_blank();
    if (pos_ >= lines_.size())
      throw ParseError(lines_.empty() ? 0 : lines_.back().number,
                       std::string("unexpected end of input, expected ") + expected);
    return lines_[pos_++];
  }
 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

std::vector<BigInt> row_of(const Line& line, std::size_t width, const char* what) {
  if (line.tokens.size() != width)
    throw ParseError(line.number, std::string(what) + " has " + std::to_string(line.tokens.size()) +
                                      " values, expected " + std::to_string(width));
  std::vector<BigInt> row;
  for (std::size_t i = 0; i < width; ++i) row.push_back(number(line, i, what));
  return row;
}

void write_row(std::ostringstream& out, const std::vector<BigInt>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << row[i];
  out << '\n';
}

// Blank lines may precede the first row but not split the table.
matching::WeightedBipartiteGraph read_graph(Cursor& in, std::size_t n) {
  std::vector<std::vector<BigInt>> rows;
  for (std::size_t r = 0; r < n; ++r) {
    if (r > 0) {
      const Line* raw = in.peek_raw();
      if (raw && raw->tokens.empty())
        throw ParseError(raw->number, "blank line inside a weight table");
    }
    rows.push_back(row_of(in.next("weight row"), n, "weight row"));
  }
  return matching::WeightedBipartiteGraph::from_rows(rows);
}

}  // namespace

std::vector<family::FamilyFunction> read_families(std::string_view text) {
  Cursor in(text);
  std::vector<family::FamilyFunction> tables;
  while (!in.done()) {
    const Line& header = in.next("family header");
    if (header.tokens.size() != 3 || header.tokens[0] != "family")
      throw ParseError(header.number, "expected 'family <rows> <columns>'");
    const std::size_t a = count(header, 1, "row count");
    const std::size_t b = count(header, 2, "column count");
    if (b == 0) throw ParseError(header.number, "a family needs at least one column");
    std::vector<BigInt> values;
    for (std::size_t r = 0; r < a; ++r) {
      auto row = row_of(in.next("family row"), b, "family row");
      values.insert(values.end(), row.begin(), row.end());
    }
    tables.emplace_back(a, b, std::move(values));
  }
  if (tables.empty()) throw ParseError(0, "no family block found");
  return tables;
}

std::string write_families(const std::vector<family::FamilyFunction>& tables) {
  std::ostringstream out;
  for (const auto& f : tables) {
    out << "family " << f.rows() << ' ' << f.cols() << '\n';
    for (std::size_t r = 0; r < f.rows(); ++r) {
      std::vector<BigInt> row;
      for (std::size_t c = 0; c < f.cols(); ++c) row.push_back(f.at(r, c));
      write_row(out, row);
    }
  }
  return out.str();
}

CmwFile read_cmw(std::string_view text) {
  Cursor in(text);
  const Line& header = in.next("cmw header");
  if (header.tokens.size() != 3 || header.tokens[0] != "cmw")
    throw ParseError(header.number, "expected 'cmw <n1> <n2>'");
  const std::size_t n1 = count(header, 1, "first side size");
  const std::size_t n2 = count(header, 2, "second side size");
  if (n1 == 0 || n2 == 0) throw ParseError(header.number, "side sizes must be positive");
  CmwFile file;
  file.first = read_graph(in, n1);
  const Line* gap = in.peek_raw();
  if (!gap || !gap->tokens.empty())
    throw ParseError(gap ? gap->number : header.number,
                     "expected a blank line between the two weight tables");
  file.second = read_graph(in, n2);
  if (!in.done()) throw ParseError(in.next("end").number, "trailing content after second table");
  return file;
}

std::string write_cmw(const CmwFile& file) {
  std::ostringstream out;
  out << "cmw " << file.first.size() << ' ' << file.second.size() << '\n';
  for (const auto* g : {&file.first, &file.second}) {
    if (g == &file.second) out << '\n';
    for (std::size_t i = 0; i < g->size(); ++i) {
      std::vector<BigInt> row;
      for (std::size_t j = 0; j < g->size(); ++j) row.push_back(g->weight(i, j));
      write_row(out, row);
    }
  }
  return out.str();
}

CaFile read_ca(std::string_view text) {
  Cursor in(text);
  const Line& header = in.next("ca header");
  if (header.tokens.size() != 3 || header.tokens[0] != "ca")
    throw ParseError(header.number, "expected 'ca <vertex-count> <s>'");
  const std::size_t n = count(header, 1, "vertex count");
  const BigInt s = number(header, 2, "span bound");
  if (s < 1) throw ParseError(header.number, "span bound must be positive");

  std::vector<std::string> names;
  std::vector<const Line*> distances;
  std::vector<const Line*> handles;
  while (!in.done()) {
    const Line& line = in.next("record");
    const std::string& tag = line.tokens[0];
    if (tag == "v") {
      if (line.tokens.size() != 2) throw ParseError(line.number, "expected 'v <identifier>'");
      if (!distances.empty() || !handles.empty())
        throw ParseError(line.number, "vertex declared after distances or handles");
      names.push_back(line.tokens[1]);
    } else if (tag == "d") {
      if (line.tokens.size() != 4) throw ParseError(line.number, "expected 'd <id> <id> <value>'");
      if (!handles.empty()) throw ParseError(line.number, "distance listed after handles");
      distances.push_back(&line);
    } else if (tag == "handle") {
      if (line.tokens.size() != 3) throw ParseError(line.number, "expected 'handle <role> <id>'");
      handles.push_back(&line);
    } else {
      throw ParseError(line.number, "unknown record '" + tag + "'");
    }
  }
  if (names.size() != n)
    throw ParseError(header.number, "header declares " + std::to_string(n) + " vertices, found " +
                                        std::to_string(names.size()));

  CaFile file;
  try {
    file.instance = channel::CaInstance(names, s);
  } catch (const std::invalid_argument& e) {
    throw ParseError(header.number, e.what());
  }
  const auto lookup = [&](const Line& line, std::size_t i) {
    const auto v = file.instance.find(line.tokens[i]);
    if (!v) throw ParseError(line.number, "unknown vertex '" + line.tokens[i] + "'");
    return *v;
  };
  for (const Line* line : distances) {
    const std::size_t x = lookup(*line, 1);
    const std::size_t y = lookup(*line, 2);
    if (x == y) throw ParseError(line->number, "distance from a vertex to itself");
    file.instance.set_distance(x, y, number(*line, 3, "distance"));
  }
  for (const Line* line : handles) {
    const std::string& role = line->tokens[1];
    if (std::find(kHandleRoles.begin(), kHandleRoles.end(), role) == kHandleRoles.end())
      throw ParseError(line->number, "unknown handle role '" + role + "'");
    lookup(*line, 2);
    if (!file.handles.emplace(role, line->tokens[2]).second)
      throw ParseError(line->number, "handle role '" + role + "' given twice");
  }
  return file;
}

std::string write_ca(const CaFile& file) {
  const auto& I = file.instance;
  std::ostringstream out;
  out << "ca " << I.size() << ' ' << I.span_bound() << '\n';
  for (const auto& name : I.vertices()) out << "v " << name << '\n';
  for (std::size_t x = 0; x < I.size(); ++x)
    for (std::size_t y = x + 1; y < I.size(); ++y)
      if (I.distance(x, y) != 0)
        out << "d " << I.name(x) << ' ' << I.name(y) << ' ' << I.distance(x, y) << '\n';
  for (const auto& role : kHandleRoles)
    if (const auto it = file.handles.find(role); it != file.handles.end())
      out << "handle " << role << ' ' << it->second << '\n';
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << contents;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace chanred::io
