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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sketchkit/dsl.hpp"

namespace sketchkit::detail {

struct Token {
  enum class Kind { Ident, Number, String, Punct, End };

  Kind kind = Kind::End;
  std::string text;  // unescaped contents for strings
  SourceSpan span;

  bool is(Kind k, std::string_view t) const { return kind == k && text == t; }
  bool is_punct(std::string_view t) const { return is(Kind::Punct, t); }
  bool is_keyword(std::string_view t) const { return is(Kind::Ident, t); }
};

std::string describe(const Token& t);

/// On-demand tokenizer. Atoms in instance bodies use a looser lexical class
/// than identifiers, so the parser asks for them explicitly via next_atom().
class Lexer {
 public:
  Lexer(std::string_view text, std::string_view file) : text_(text), file_(file) {}

  const Token& peek();
  Token next();

  /// Bare atom (any run of characters other than whitespace and `{},;"=()`,
  /// stopping before `->` and `//`) or a quoted string.
  Token next_atom();

  /// True if the next token is the punctuation `p`.
  bool at_punct(std::string_view p) { return peek().is_punct(p); }

  /// Like at_punct but without tokenizing ahead, so a following atom can
  /// still be read with next_atom().
  bool at_raw(std::string_view p);

  [[noreturn]] void fail(const SourceSpan& span, std::string message, std::vector<std::string> expected = {}) const;
  [[noreturn]] void fail_expected(const Token& got, std::vector<std::string> expected) const;

  Token expect_punct(std::string_view p);
  Token expect_ident(std::string_view what);
  void expect_keyword(std::string_view kw);
  bool accept_punct(std::string_view p);
  bool accept_keyword(std::string_view kw);

  const std::string& file() const { return file_; }

 private:
  void skip_trivia();
  Token lex();
  SourceSpan span_from(int line, int column) const;
  char cur() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char at(std::size_t off) const { return pos_ + off < text_.size() ? text_[pos_ + off] : '\0'; }
  void advance(std::size_t n = 1);

  std::string_view text_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  std::optional<Token> peeked_;
};

}  // namespace sketchkit::detail
