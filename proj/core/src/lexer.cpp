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

#include "lexer.hpp"

#include <array>
#include <cctype>

namespace sketchkit::detail {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return c >= '0' && c <= '9'; }
bool space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Longest first.
constexpr std::array<std::string_view, 19> kPuncts = {"×", "->", "=>", "{", "}", "(", ")", ";", ":", ",",
                                                      ".", "=", "+", "*", "[", "]", "/", "<", ">"};

}  // namespace

std::string describe(const Token& t) {
  switch (t.kind) {
    case Token::Kind::End: return "end of input";
    case Token::Kind::String: return "string \"" + t.text + "\"";
    case Token::Kind::Number: return "number '" + t.text + "'";
    case Token::Kind::Ident: return "'" + t.text + "'";
    case Token::Kind::Punct: return "'" + t.text + "'";
  }
  return "token";
}

void Lexer::advance(std::size_t n) {
  for (std::size_t k = 0; k < n && pos_ < text_.size(); ++k) {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }
}

void Lexer::skip_trivia() {
  for (;;) {
    if (space(cur())) {
      advance();
    } else if (cur() == '/' && at(1) == '/') {
      while (pos_ < text_.size() && cur() != '\n') advance();
    } else {
      return;
    }
  }
}

SourceSpan Lexer::span_from(int line, int column) const { return SourceSpan{file_, line, column, line_, column_}; }

void Lexer::fail(const SourceSpan& span, std::string message, std::vector<std::string> expected) const {
  throw ParseError(ParseError::Kind::Syntax, span, std::move(message), std::move(expected));
}

void Lexer::fail_expected(const Token& got, std::vector<std::string> expected) const {
  std::string message = "expected ";
  for (std::size_t k = 0; k < expected.size(); ++k) {
    if (k) message += k + 1 == expected.size() ? " or " : ", ";
    message += expected[k];
  }
  message += ", found " + describe(got);
  fail(got.span, std::move(message), std::move(expected));
}

Token Lexer::lex() {
  skip_trivia();
  const int line = line_;
  const int column = column_;
  Token t;
  if (pos_ >= text_.size()) {
    t.kind = Token::Kind::End;
    t.span = span_from(line, column);
    return t;
  }
  const char c = cur();
  if (ident_start(c)) {
    const std::size_t begin = pos_;
    while (ident_char(cur())) advance();
    t.kind = Token::Kind::Ident;
    t.text = std::string(text_.substr(begin, pos_ - begin));
  } else if (digit(c)) {
    const std::size_t begin = pos_;
    while (digit(cur())) advance();
    if (cur() == '.' && digit(at(1))) {
      advance();
      while (digit(cur())) advance();
    }
    t.kind = Token::Kind::Number;
    t.text = std::string(text_.substr(begin, pos_ - begin));
  } else if (c == '"') {
    advance();
    t.kind = Token::Kind::String;
    for (;;) {
      if (pos_ >= text_.size() || cur() == '\n') fail(span_from(line, column), "unterminated string literal");
      if (cur() == '"') {
        advance();
        break;
      }
      if (cur() == '\\') {
        advance();
        if (cur() != '"' && cur() != '\\') fail(span_from(line, column), "unknown escape in string literal");
      }
      t.text += cur();
      advance();
    }
  } else {
    bool matched = false;
    for (auto p : kPuncts) {
      if (text_.substr(pos_, p.size()) == p) {
        advance(p.size());
        t.kind = Token::Kind::Punct;
        t.text = std::string(p);
        matched = true;
        break;
      }
    }
    if (!matched) {
      advance();
      fail(span_from(line, column), std::string("unexpected character '") + c + "'");
    }
  }
  t.span = span_from(line, column);
  return t;
}

const Token& Lexer::peek() {
  if (!peeked_) peeked_ = lex();
  return *peeked_;
}

Token Lexer::next() {
  if (peeked_) {
    Token t = std::move(*peeked_);
    peeked_.reset();
    return t;
  }
  return lex();
}

Token Lexer::next_atom() {
  if (peeked_) {
    // Only strings and identifier-shaped atoms can have been peeked intact.
    Token t = next();
    if (t.kind == Token::Kind::String || t.kind == Token::Kind::Ident) return t;
    fail_expected(t, {"atom"});
  }
  skip_trivia();
  const int line = line_;
  const int column = column_;
  if (cur() == '"') return lex();
  const std::size_t begin = pos_;
  auto stop = [&] {
    const char c = cur();
    if (pos_ >= text_.size() || space(c)) return true;
    if (std::string_view("{},;\"=()").find(c) != std::string_view::npos) return true;
    return (c == '-' && at(1) == '>') || (c == '/' && at(1) == '/');
  };
  while (!stop()) advance();
  Token t;
  t.kind = Token::Kind::String;
  t.text = std::string(text_.substr(begin, pos_ - begin));
  t.span = span_from(line, column);
  if (t.text.empty()) {
    Token got = lex();
    fail_expected(got, {"atom"});
  }
  return t;
}

bool Lexer::at_raw(std::string_view p) {
  if (peeked_) return peeked_->is_punct(p);
  skip_trivia();
  return text_.substr(pos_, p.size()) == p;
}

Token Lexer::expect_punct(std::string_view p) {
  Token t = next();
  if (!t.is_punct(p)) fail_expected(t, {"'" + std::string(p) + "'"});
  return t;
}

Token Lexer::expect_ident(std::string_view what) {
  Token t = next();
  if (t.kind != Token::Kind::Ident) fail_expected(t, {std::string(what)});
  return t;
}

void Lexer::expect_keyword(std::string_view kw) {
  Token t = next();
  if (!t.is_keyword(kw)) fail_expected(t, {"'" + std::string(kw) + "'"});
}

bool Lexer::accept_punct(std::string_view p) {
  if (!peek().is_punct(p)) return false;
  next();
  return true;
}

bool Lexer::accept_keyword(std::string_view kw) {
  if (!peek().is_keyword(kw)) return false;
  next();
  return true;
}

}  // namespace sketchkit::detail
