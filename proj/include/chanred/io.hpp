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

// Line-oriented text formats for family tables, matching-graph pairs and
// Channel Assignment instances. Numbers are ASCII decimal of any length and
// '#' starts a comment that runs to the end of the line.
//
//   family <a> <b>            then a rows of b values
//   cmw <n1> <n2>             then n1 rows, a blank line, n2 rows
//   ca <count> <s>            then `v <id>` lines in order, `d <id> <id> <value>`
//                             lines, and `handle <role> <id>` lines
//
// A family file may hold several blocks back to back.

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "chanred/channel.hpp"
#include "chanred/family.hpp"
#include "chanred/matching.hpp"

namespace chanred::io {

std::vector<family::FamilyFunction> read_families(std::string_view text);
std::string write_families(const std::vector<family::FamilyFunction>& tables);

struct CmwFile {
  matching::WeightedBipartiteGraph first{1};
  matching::WeightedBipartiteGraph second{1};

  friend bool operator==(const CmwFile&, const CmwFile&) = default;
};

CmwFile read_cmw(std::string_view text);
std::string write_cmw(const CmwFile& file);

/// Roles accepted in `handle` lines.
inline const std::vector<std::string> kHandleRoles = {"vL",  "vR",  "vM", "wL1",
                                                      "wR1", "wL2", "wR2"};

struct CaFile {
  channel::CaInstance instance;
  /// role -> vertex identifier
  std::map<std::string, std::string> handles;

  friend bool operator==(const CaFile&, const CaFile&) = default;
};

CaFile read_ca(std::string_view text);
std::string write_ca(const CaFile& file);

/// Whole-file helpers. Throw std::runtime_error when the file cannot be
/// opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace chanred::io
