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

#include "sketchkit/query.hpp"

#include <set>

namespace sketchkit {

View define_view(const Sketch& s, std::string name, const NodeId& root, std::vector<ViewColumn> columns) {
  if (!s.find_node(root)) throw ViewError(ViewError::Kind::UnknownNode, "unknown root node '" + root + "'");
  std::set<std::string> names;
  for (const auto& col : columns) {
    if (!names.insert(col.name).second) {
      throw ViewError(ViewError::Kind::DuplicateColumn, "column '" + col.name + "' defined twice");
    }
    if (col.path.start != root) {
      throw ViewError(ViewError::Kind::NonComposablePath,
                      "column '" + col.name + "' starts at '" + col.path.start + "', not at root '" + root + "'");
    }
    try {
      path_end(s, col.path);
    } catch (const NonComposable& e) {
      throw ViewError(ViewError::Kind::NonComposablePath, "column '" + col.name + "': " + e.what());
    }
  }
  return View{std::move(name), root, std::move(columns)};
}

std::vector<DictionaryEntry> data_dictionary(const Sketch& s, const View& v) {
  std::vector<DictionaryEntry> out;
  for (const auto& col : v.columns) out.push_back({col.name, path_end(s, col.path), col.path});
  return out;
}

DataStream run_query(const Instance& i, const View& v) {
  DataStream d;
  d.header.push_back(v.root);
  for (const auto& col : v.columns) d.header.push_back(col.name);
  // std::set iteration is already lexicographic.
  for (const auto& x : i.carrier(v.root)) {
    std::vector<Atom> row{x};
    for (const auto& col : v.columns) {
      try {
        row.push_back(eval_path(i, col.path, x));
      } catch (const AtomNotInCarrier& e) {
        throw QueryError("totality failure in column '" + col.name + "': " + e.what());
      }
    }
    d.rows.push_back(std::move(row));
  }
  return d;
}

namespace {

std::string csv_field(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void append_row(std::string& out, const std::vector<std::string>& row) {
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (k) out += ',';
    out += csv_field(row[k]);
  }
  out += '\n';
}

}  // namespace

std::string to_csv(const DataStream& d) {
  std::string out;
  append_row(out, d.header);
  for (const auto& row : d.rows) append_row(out, row);
  return out;
}

}  // namespace sketchkit
