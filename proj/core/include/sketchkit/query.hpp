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
#include <vector>

#include "sketchkit/instance.hpp"
#include "sketchkit/sketch.hpp"

namespace sketchkit {

struct ViewColumn {
  std::string name;
  Path path;

  friend bool operator==(const ViewColumn&, const ViewColumn&) = default;
};

/// Star-shaped projection: one row per atom of `root`, one cell per column
/// path evaluated at that atom.
struct View {
  std::string name;
  NodeId root;
  std::vector<ViewColumn> columns;

  friend bool operator==(const View&, const View&) = default;
};

struct DictionaryEntry {
  std::string column;
  NodeId end_node;
  Path path;
};

struct DataStream {
  std::vector<std::string> header;
  std::vector<std::vector<Atom>> rows;

  friend bool operator==(const DataStream&, const DataStream&) = default;
};

class ViewError : public std::runtime_error {
 public:
  enum class Kind { UnknownNode, NonComposablePath, DuplicateColumn };

  ViewError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class QueryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

View define_view(const Sketch& s, std::string name, const NodeId& root, std::vector<ViewColumn> columns);

/// Column name -> end node and path.
std::vector<DictionaryEntry> data_dictionary(const Sketch& s, const View& v);

/// Rows sorted by root atom. Throws QueryError when an arrow along a column
/// path has no image for some atom.
DataStream run_query(const Instance& i, const View& v);

/// Header row plus data rows, comma separated, `\n` line ends. Fields
/// containing a comma, quote, or line break are quoted with inner quotes
/// doubled.
std::string to_csv(const DataStream& d);

}  // namespace sketchkit
