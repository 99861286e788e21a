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

// Textual formats:
//
//   sketch     .skt   sketch S { node A; arrow f: A -> B; commute c: f = g; ... }
//   instance   .ins   instance I of S { A = {a1, a2}; f = {a1 -> b1}; }
//   hierarchy  .skh   diagram Top { ... }  diagram D refines Top.Box { interface N; ... }
//   rules      .rules rule r [conf=3/4 support=4]: forall x:A, y:B . f(x, y) => y = "b1";
//   morphism   .map   map node A -> X;  map arrow f -> p.q;
//   view       .view  view V of Book { author = writtenBy.name; }
//   span       .span  shared = s.skt  (key = value lines)
//
// All use `//` line comments. See docs/formats.md for the grammars.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sketchkit/hierarchy.hpp"
#include "sketchkit/instance.hpp"
#include "sketchkit/morphism.hpp"
#include "sketchkit/query.hpp"
#include "sketchkit/sketch.hpp"

namespace sketchkit {

/// 1-based, inclusive start, exclusive end column.
struct SourceSpan {
  std::string file;
  int line = 1;
  int column = 1;
  int end_line = 1;
  int end_column = 1;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, Wellformedness, UnknownSymbol };

  ParseError(Kind kind, SourceSpan span, std::string message, std::vector<std::string> expected = {});

  Kind kind() const { return kind_; }
  const SourceSpan& span() const { return span_; }
  const std::string& message() const { return message_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  Kind kind_;
  SourceSpan span_;
  std::string message_;
  std::vector<std::string> expected_;
};

/// Parses and checks well-formedness; the first well-formedness error is
/// raised as a ParseError located at the offending declaration.
Sketch parse_sketch(std::string_view text, std::string_view file = "<input>");
std::string print_sketch(const Sketch& s);

/// Resolves names against `s`. Every node and arrow of `s` gets an entry
/// (empty unless assigned). Totality is not checked here.
Instance parse_instance(std::string_view text, const Sketch& s, std::string_view file = "<input>");
/// Atoms sorted; empty sets printed as `{}`.
std::string print_instance(const Instance& i);

/// Diagrams of a hierarchy. The root is the one diagram without `refines`.
/// Fragments are not checked for well-formedness here; flatten does that.
Hierarchy parse_hierarchy(std::string_view text, std::string_view file = "<input>");

/// Sequence of `rule` declarations, unchecked against any sketch.
std::vector<HornClause> parse_rules(std::string_view text, std::string_view file = "<input>");
std::string print_rule(const HornClause& c);
std::string print_rules(const std::vector<HornClause>& rules);

/// Arrow images are resolved against `dst` to find their start node.
SketchMorphism parse_morphism(std::string_view text, const Sketch& dst, std::string_view file = "<input>");
std::string print_morphism(const SketchMorphism& m);

View parse_view(std::string_view text, const Sketch& s, std::string_view file = "<input>");

struct SpanFile {
  std::string shared;
  std::string left;
  std::string right;
  std::string into_left;
  std::string into_right;
};

/// `key = value` lines with keys shared, left, right, into_left, into_right.
SpanFile parse_span_file(std::string_view text, std::string_view file = "<input>");

/// `file:line:column: error: message`
std::string format_diagnostic(const ParseError& e);

}  // namespace sketchkit
