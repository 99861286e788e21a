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

#include "sketchkit/relational.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "sketchkit/dsl.hpp"

namespace sketchkit {

const Column* Table::find_column(std::string_view column) const {
  auto it = std::find_if(columns.begin(), columns.end(), [&](const Column& c) { return c.name == column; });
  return it == columns.end() ? nullptr : &*it;
}

const Table* RelationalSchema::find_table(std::string_view table) const {
  auto it = std::find_if(tables.begin(), tables.end(), [&](const Table& t) { return t.name == table; });
  return it == tables.end() ? nullptr : &*it;
}

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t next = text.find(sep, pos);
    out.emplace_back(text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) return out;
    pos = next + 1;
  }
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k) out += sep;
    out += parts[k];
  }
  return out;
}

struct Record {
  std::string kind;
  std::map<std::string, std::string> fields;
  SourceSpan span;
};

class SchemaReader {
 public:
  SchemaReader(std::string_view text, std::string_view file) : text_(text), file_(file) {}

  RelationalSchema read() {
    RelationalSchema rs;
    bool named = false;
    for (const Record& r : records()) {
      if (r.kind == "schema") {
        if (named) fail(r, "second 'schema' record");
        named = true;
        rs.name = take(r, "name", true);
        expect_done(r, {"name"});
      } else if (r.kind == "table") {
        Table t;
        t.name = take(r, "name", true);
        expect_done(r, {"name"});
        if (rs.find_table(t.name)) fail(r, "table '" + t.name + "' declared twice");
        rs.tables.push_back(std::move(t));
      } else if (r.kind == "column") {
        Table& t = table_of(rs, r);
        Column c{take(r, "name", true), take(r, "domain", true)};
        expect_done(r, {"table", "name", "domain"});
        if (t.find_column(c.name)) fail(r, "column '" + c.name + "' declared twice in '" + t.name + "'");
        t.columns.push_back(std::move(c));
      } else if (r.kind == "pk") {
        Table& t = table_of(rs, r);
        if (!t.primary_key.empty()) fail(r, "second primary key for '" + t.name + "'");
        t.primary_key = columns_of(t, r);
        expect_done(r, {"table", "columns"});
      } else if (r.kind == "fk") {
        Table& t = table_of(rs, r);
        ForeignKey fk{columns_of(t, r), take(r, "target", true)};
        expect_done(r, {"table", "columns", "target"});
        t.foreign_keys.push_back(std::move(fk));
        fk_spans_.push_back({t.name, r.span});
      } else {
        throw ParseError(ParseError::Kind::Syntax, r.span, "unknown record '" + r.kind + "'",
                         {"schema", "table", "column", "pk", "fk"});
      }
    }
    for (const auto& [table, span] : fk_spans_) {
      for (const auto& fk : rs.find_table(table)->foreign_keys) {
        if (!rs.find_table(fk.target)) {
          throw ParseError(ParseError::Kind::UnknownSymbol, span,
                           "foreign key of '" + table + "' targets unknown table '" + fk.target + "'");
        }
      }
    }
    return rs;
  }

 private:
  std::vector<Record> records() {
    std::vector<Record> out;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos < text_.size()) {
      const std::size_t eol = std::min(text_.find('\n', pos), text_.size());
      std::string_view line = text_.substr(pos, eol - pos);
      pos = eol + 1;
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

      Record r;
      std::size_t k = 0;
      int field_column = 1;
      auto skip_space = [&] {
        while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k]))) ++k;
      };
      skip_space();
      while (k < line.size()) {
        const std::size_t begin = k;
        while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k]))) ++k;
        const std::string word(line.substr(begin, k - begin));
        const int column = static_cast<int>(begin) + 1;
        if (r.kind.empty()) {
          r.kind = word;
          r.span = SourceSpan{file_, line_no, column, line_no, static_cast<int>(line.size()) + 1};
        } else {
          field_column = column;
          const std::size_t eq = word.find('=');
          SourceSpan at{file_, line_no, field_column, line_no, static_cast<int>(k) + 1};
          if (eq == std::string::npos || eq == 0) {
            throw ParseError(ParseError::Kind::Syntax, at, "expected 'key=value', found '" + word + "'");
          }
          if (!r.fields.emplace(word.substr(0, eq), word.substr(eq + 1)).second) {
            throw ParseError(ParseError::Kind::Syntax, at, "field '" + word.substr(0, eq) + "' given twice");
          }
        }
        skip_space();
      }
      if (!r.kind.empty()) out.push_back(std::move(r));
    }
    return out;
  }

  [[noreturn]] void fail(const Record& r, const std::string& message) const {
    throw ParseError(ParseError::Kind::Wellformedness, r.span, message);
  }

  std::string take(const Record& r, const std::string& key, bool identifier) {
    auto it = r.fields.find(key);
    if (it == r.fields.end()) {
      throw ParseError(ParseError::Kind::Syntax, r.span, "'" + r.kind + "' record needs '" + key + "='",
                       {key + "="});
    }
    if (identifier && !is_identifier(it->second)) fail(r, "'" + it->second + "' is not a valid name for " + key);
    return it->second;
  }

  void expect_done(const Record& r, std::initializer_list<std::string_view> known) const {
    for (const auto& [key, value] : r.fields) {
      if (std::find(known.begin(), known.end(), key) == known.end()) {
        throw ParseError(ParseError::Kind::Syntax, r.span, "unknown field '" + key + "' in '" + r.kind + "' record");
      }
    }
  }

  Table& table_of(RelationalSchema& rs, const Record& r) {
    const std::string name = take(r, "table", true);
    auto it = std::find_if(rs.tables.begin(), rs.tables.end(), [&](const Table& t) { return t.name == name; });
    if (it == rs.tables.end()) {
      throw ParseError(ParseError::Kind::UnknownSymbol, r.span, "unknown table '" + name + "'");
    }
    return *it;
  }

  std::vector<std::string> columns_of(const Table& t, const Record& r) {
    const std::string list = take(r, "columns", false);
    std::vector<std::string> cols = split(list, ',');
    std::set<std::string> seen;
    for (const auto& c : cols) {
      if (!t.find_column(c)) {
        throw ParseError(ParseError::Kind::UnknownSymbol, r.span, "table '" + t.name + "' has no column '" + c + "'");
      }
      if (!seen.insert(c).second) fail(r, "column '" + c + "' listed twice");
    }
    return cols;
  }

  std::string_view text_;
  std::string file_;
  std::vector<std::pair<std::string, SourceSpan>> fk_spans_;
};

void add_arrow(Sketch& s, std::set<std::string>& names, ArrowId id, NodeId src, NodeId dst) {
  if (!names.insert(id).second) throw SchemaError("generated arrow name '" + id + "' is not unique");
  s.arrows.push_back({std::move(id), std::move(src), std::move(dst)});
}

}  // namespace

RelationalSchema parse_schema(std::string_view text, std::string_view file) {
  return SchemaReader(text, file).read();
}

std::vector<std::string> check_schema(const RelationalSchema& rs) {
  std::vector<std::string> problems;
  if (!is_identifier(rs.name)) problems.push_back("schema name '" + rs.name + "' is not a valid name");
  std::set<std::string> tables;
  for (const auto& t : rs.tables) {
    if (!is_identifier(t.name)) problems.push_back("table name '" + t.name + "' is not a valid name");
    if (!tables.insert(t.name).second) problems.push_back("table '" + t.name + "' declared twice");
  }
  for (const auto& t : rs.tables) {
    std::set<std::string> cols;
    for (const auto& c : t.columns) {
      if (!cols.insert(c.name).second) problems.push_back("column '" + t.name + "." + c.name + "' declared twice");
      if (!is_identifier(c.name) || !is_identifier(c.domain)) {
        problems.push_back("column '" + t.name + "." + c.name + "' has an invalid name or domain");
      }
      if (tables.count(c.domain)) {
        problems.push_back("domain '" + c.domain + "' of '" + t.name + "." + c.name + "' clashes with a table name");
      }
    }
    for (const auto& k : t.primary_key) {
      if (!cols.count(k)) problems.push_back("primary key of '" + t.name + "' names unknown column '" + k + "'");
    }
    for (const auto& fk : t.foreign_keys) {
      if (fk.columns.empty()) problems.push_back("foreign key of '" + t.name + "' has no columns");
      if (!tables.count(fk.target)) {
        problems.push_back("foreign key of '" + t.name + "' targets unknown table '" + fk.target + "'");
      }
      for (const auto& c : fk.columns) {
        if (!cols.count(c)) problems.push_back("foreign key of '" + t.name + "' names unknown column '" + c + "'");
      }
    }
  }
  return problems;
}

std::string_view to_string(ImportWarning::Kind kind) {
  switch (kind) {
    case ImportWarning::Kind::UnsupportedCompositeKey: return "UnsupportedCompositeKey";
    case ImportWarning::Kind::MissingTargetKey: return "MissingTargetKey";
    case ImportWarning::Kind::KeyDomainMismatch: return "KeyDomainMismatch";
  }
  return "Unknown";
}

ImportResult import_schema(const RelationalSchema& rs) {
  if (auto problems = check_schema(rs); !problems.empty()) throw SchemaError(problems.front());

  using W = ImportWarning::Kind;
  ImportResult result;
  Sketch& s = result.sketch;
  s.name = rs.name;

  for (const auto& t : rs.tables) s.nodes.push_back({t.name, NodeKind::Entity});
  std::set<std::string> domains;
  for (const auto& t : rs.tables) {
    for (const auto& c : t.columns) {
      if (domains.insert(c.domain).second) s.nodes.push_back({c.domain, NodeKind::Attribute});
    }
  }

  std::set<std::string> arrow_names;
  for (const auto& t : rs.tables) {
    for (const auto& c : t.columns) add_arrow(s, arrow_names, t.name + "_" + c.name, t.name, c.domain);
  }
  for (const auto& t : rs.tables) {
    if (t.primary_key.size() > 1) {
      result.warnings.push_back({W::UnsupportedCompositeKey, t.name,
                                 "composite primary key (" + join(t.primary_key, ", ") + ") of '" + t.name +
                                     "' cannot be the target of a commuting key square"});
    }
  }

  for (const auto& t : rs.tables) {
    for (const auto& fk : t.foreign_keys) {
      const std::string fk_arrow = t.name + "_" + join(fk.columns, "_") + "_fk";
      add_arrow(s, arrow_names, fk_arrow, t.name, fk.target);
      const Table& target = *rs.find_table(fk.target);
      const std::string what = "foreign key " + t.name + "(" + join(fk.columns, ", ") + ") -> " + fk.target;
      if (fk.columns.size() > 1) {
        result.warnings.push_back({W::UnsupportedCompositeKey, t.name, what + " is composite; imported without key square"});
        continue;
      }
      if (target.primary_key.size() != 1) {
        result.warnings.push_back({target.primary_key.empty() ? W::MissingTargetKey : W::UnsupportedCompositeKey, t.name,
                                   what + ": target has no single-column primary key; imported without key square"});
        continue;
      }
      const Column& col = *t.find_column(fk.columns.front());
      const Column& key = *target.find_column(target.primary_key.front());
      if (col.domain != key.domain) {
        result.warnings.push_back({W::KeyDomainMismatch, t.name,
                                   what + ": column domain " + col.domain + " differs from key domain " + key.domain +
                                       "; imported without key square"});
        continue;
      }
      CommutativityConstraint square;
      square.label = fk_arrow + "_key";
      square.left = Path{t.name, {t.name + "_" + col.name}};
      square.right = Path{t.name, {fk_arrow, target.name + "_" + key.name}};
      s.constraints.emplace_back(std::move(square));
    }
  }

  if (auto errors = check_wellformed(s); !errors.empty()) throw SchemaError(errors.front().message);
  return result;
}

namespace {

std::string describe(const Node& n) { return n.id + (n.kind == NodeKind::Attribute ? " attr" : ""); }
std::string describe(const Arrow& a) { return a.id + ": " + a.src + " -> " + a.dst; }

template <typename T, typename Key, typename Describe>
void diff_named(std::ostringstream& out, std::string_view what, const std::vector<T>& before,
                const std::vector<T>& after, Key key, Describe describe_one) {
  std::map<std::string, const T*> old_items;
  std::map<std::string, const T*> new_items;
  for (const auto& x : before) old_items.emplace(key(x), &x);
  for (const auto& x : after) new_items.emplace(key(x), &x);
  for (const auto& [name, x] : old_items) {
    auto it = new_items.find(name);
    if (it == new_items.end()) {
      out << "- " << what << " " << describe_one(*x) << "\n";
    } else if (!(*it->second == *x)) {
      out << "~ " << what << " " << describe_one(*it->second) << " (was " << describe_one(*x) << ")\n";
    }
  }
  for (const auto& [name, x] : new_items) {
    if (!old_items.count(name)) out << "+ " << what << " " << describe_one(*x) << "\n";
  }
}

}  // namespace

std::string sketch_diff(const Sketch& before, const Sketch& after) {
  std::ostringstream out;
  diff_named(out, "node", before.nodes, after.nodes, [](const Node& n) { return n.id; },
             [](const Node& n) { return describe(n); });
  diff_named(out, "arrow", before.arrows, after.arrows, [](const Arrow& a) { return a.id; },
             [](const Arrow& a) { return describe(a); });
  diff_named(out, "constraint", before.constraints, after.constraints, [](const Constraint& c) { return label_of(c); },
             [](const Constraint& c) { return label_of(c); });
  diff_named(out, "rule", before.fuzzy_rules, after.fuzzy_rules, [](const HornClause& r) { return r.name; },
             [](const HornClause& r) { return r.name; });
  return out.str();
}

}  // namespace sketchkit
