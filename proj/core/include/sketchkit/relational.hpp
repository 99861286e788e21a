// Copyright 2026 The sketchkit Authors.
//
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sketchkit/sketch.hpp"

namespace sketchkit {

struct Column {
  std::string name;
  std::string domain;

  friend bool operator==(const Column&, const Column&) = default;
};

struct ForeignKey {
  std::vector<std::string> columns;
  std::string target;

  friend bool operator==(const ForeignKey&, const ForeignKey&) = default;
};

struct Table {
  std::string name;
  std::vector<Column> columns;
  std::vector<std::string> primary_key;
  std::vector<ForeignKey> foreign_keys;

  const Column* find_column(std::string_view column) const;

  friend bool operator==(const Table&, const Table&) = default;
};

struct RelationalSchema {
  std::string name = "Relational";
  std::vector<Table> tables;

  const Table* find_table(std::string_view table) const;

  friend bool operator==(const RelationalSchema&, const RelationalSchema&) = default;
};

/// Reads the record format:
///
///   schema name=Shop
///   table  name=Order
///   column table=Order name=custId domain=Int
///   pk     table=Customer columns=id
///   fk     table=Order columns=custId target=Customer
///
/// One record per line, `#` starts a comment. Multi-column keys are comma
/// separated without spaces. Throws ParseError (see dsl.hpp), including for
/// violated schema invariants.
RelationalSchema parse_schema(std::string_view text, std::string_view file = "<input>");

/// Problems that make a schema unusable, in declaration order.
std::vector<std::string> check_schema(const RelationalSchema& rs);

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ImportWarning {
  enum class Kind { UnsupportedCompositeKey, MissingTargetKey, KeyDomainMismatch };

  Kind kind;
  std::string table;
  std::string message;
};

std::string_view to_string(ImportWarning::Kind kind);

struct ImportResult {
  Sketch sketch;
  std::vector<ImportWarning> warnings;
};

/// Tables become entity nodes and domains attribute nodes. Column c of table
/// T becomes the arrow `T_c: T -> domain`. A foreign key on columns c1..cn
/// becomes `T_c1_.._cn_fk: T -> Target`; when it is single-column and the
/// target has a single-column key k of the same domain, the commutativity
/// `T_c_fk_key: T_c = T_c_fk.Target_k` is added as well. Every other key
/// shape is imported without the square and reported.
///
/// Throws SchemaError if check_schema finds problems or generated names
/// collide.
ImportResult import_schema(const RelationalSchema& rs);

/// Line-per-change summary of `after` relative to `before`: `+`/`-` for
/// added or removed nodes, arrows, constraints and rules, `~` for elements
/// whose definition changed. Empty when the two sketches agree.
std::string sketch_diff(const Sketch& before, const Sketch& after);

}  // namespace sketchkit
