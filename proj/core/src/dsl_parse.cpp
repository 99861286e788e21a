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

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "desugar.hpp"
#include "lexer.hpp"
#include "sketchkit/dsl.hpp"

namespace sketchkit {

ParseError::ParseError(Kind kind, SourceSpan span, std::string message, std::vector<std::string> expected)
    : std::runtime_error(span.file + ":" + std::to_string(span.line) + ":" + std::to_string(span.column) + ": " +
                         message),
      kind_(kind),
      span_(std::move(span)),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

std::string format_diagnostic(const ParseError& e) {
  return e.span().file + ":" + std::to_string(e.span().line) + ":" + std::to_string(e.span().column) +
         ": error: " + e.message();
}

namespace {

using detail::ArrowLookup;
using detail::DesugarError;
using detail::Lexer;
using detail::Token;
using TK = Token::Kind;

// A path as written: either `id(N)` or a dotted arrow chain whose start is
// resolved once all arrows are known.
struct RawPath {
  std::vector<ArrowId> arrows;
  NodeId identity_at;
  SourceSpan span;
};

RawPath parse_path(Lexer& lex) {
  RawPath p;
  Token first = lex.expect_ident("path");
  p.span = first.span;
  if (first.text == "id" && lex.at_punct("(")) {
    lex.next();
    p.identity_at = lex.expect_ident("node name").text;
    p.span.end_line = lex.peek().span.end_line;
    p.span.end_column = lex.expect_punct(")").span.end_column;
    return p;
  }
  p.arrows.push_back(first.text);
  while (lex.at_punct(".")) {
    lex.next();
    Token t = lex.expect_ident("arrow name");
    p.arrows.push_back(t.text);
    p.span.end_line = t.span.end_line;
    p.span.end_column = t.span.end_column;
  }
  return p;
}

Path resolve_path(const RawPath& raw, const ArrowLookup& lookup) {
  if (raw.arrows.empty()) return Path::identity(raw.identity_at);
  const Arrow* first = lookup(raw.arrows.front());
  if (first == nullptr) {
    throw ParseError(ParseError::Kind::UnknownSymbol, raw.span, "unknown arrow '" + raw.arrows.front() + "'");
  }
  return Path{first->src, raw.arrows};
}

Rational parse_rational(Lexer& lex) {
  Token n = lex.next();
  if (n.kind != TK::Number) lex.fail_expected(n, {"number"});
  std::string text = n.text;
  if (lex.accept_punct("/")) {
    Token d = lex.next();
    if (d.kind != TK::Number) lex.fail_expected(d, {"denominator"});
    text += "/" + d.text;
  }
  try {
    return Rational::parse(text);
  } catch (const std::invalid_argument& e) {
    lex.fail(n.span, e.what());
  }
}

ClauseAtom parse_clause_atom(Lexer& lex) {
  Token name = lex.expect_ident("atom");
  if (lex.accept_punct("(")) {
    ArrowAtom a;
    a.arrow = name.text;
    a.in = lex.expect_ident("variable").text;
    lex.expect_punct(",");
    a.out = lex.expect_ident("variable").text;
    lex.expect_punct(")");
    return a;
  }
  if (lex.accept_punct("=")) {
    Token rhs = lex.next();
    if (rhs.kind == TK::Ident) return EqAtom{name.text, rhs.text};
    if (rhs.kind == TK::String) return ConstAtom{name.text, rhs.text};
    lex.fail_expected(rhs, {"variable", "string literal"});
  }
  lex.fail_expected(lex.peek(), {"'('", "'='"});
}

// After the `rule` keyword.
HornClause parse_rule_body(Lexer& lex) {
  HornClause c;
  c.name = lex.expect_ident("rule name").text;
  if (lex.accept_punct("[")) {
    bool seen_conf = false;
    bool seen_support = false;
    while (!lex.accept_punct("]")) {
      Token key = lex.expect_ident("'conf' or 'support'");
      lex.expect_punct("=");
      if (key.text == "conf" && !seen_conf) {
        seen_conf = true;
        Token at = lex.peek();
        c.confidence = parse_rational(lex);
        if (c.confidence < Rational(0) || c.confidence > Rational(1)) lex.fail(at.span, "confidence must lie in [0, 1]");
      } else if (key.text == "support" && !seen_support) {
        seen_support = true;
        Token n = lex.next();
        if (n.kind != TK::Number || n.text.find('.') != std::string::npos) lex.fail_expected(n, {"integer"});
        c.support = std::stoll(n.text);
      } else {
        lex.fail(key.span, "unexpected or repeated annotation '" + key.text + "'", {"conf", "support"});
      }
    }
  }
  lex.expect_punct(":");
  if (lex.accept_keyword("forall")) {
    do {
      VarDecl v;
      v.name = lex.expect_ident("variable").text;
      lex.expect_punct(":");
      v.node = lex.expect_ident("node name").text;
      c.vars.push_back(std::move(v));
    } while (lex.accept_punct(","));
    lex.expect_punct(".");
  }
  if (!lex.at_punct("=>")) {
    do {
      c.body.push_back(parse_clause_atom(lex));
    } while (lex.accept_punct(","));
  }
  lex.expect_punct("=>");
  c.head = parse_clause_atom(lex);
  lex.expect_punct(";");
  return c;
}

std::vector<Token> parse_ident_list(Lexer& lex, std::string_view what) {
  std::vector<Token> out;
  do {
    out.push_back(lex.expect_ident(what));
  } while (lex.accept_punct(","));
  return out;
}

std::vector<std::string> texts(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.text);
  return out;
}

struct ElementSpan {
  ElementRef ref;
  SourceSpan span;
};

// Declarations of one sketch or diagram; constraints are kept as builders
// until every arrow is known.
struct RawSketch {
  std::string name;
  SourceSpan name_span;
  std::vector<Node> nodes;
  std::vector<Arrow> arrows;
  std::vector<std::pair<SourceSpan, std::function<Constraint(const ArrowLookup&)>>> constraints;
  std::vector<HornClause> rules;
  std::vector<ElementSpan> spans;

  // Diagram-only parts.
  std::vector<NodeId> interface;
  std::map<ArrowId, NodeId> anchors;
  std::optional<std::pair<std::string, NodeId>> refines;

  Sketch resolve(const ArrowLookup& lookup) const {
    Sketch s;
    s.name = name;
    s.nodes = nodes;
    s.arrows = arrows;
    s.fuzzy_rules = rules;
    for (const auto& [span, build] : constraints) {
      try {
        s.constraints.push_back(build(lookup));
      } catch (const DesugarError& e) {
        throw ParseError(e.unknown_symbol() ? ParseError::Kind::UnknownSymbol : ParseError::Kind::Wellformedness, span,
                         e.what());
      }
    }
    return s;
  }

  // Location of the declaration a well-formedness error refers to. Duplicate
  // errors point at the later declaration.
  SourceSpan locate(const WellformednessError& e) const {
    using K = WellformednessError::Kind;
    const bool want_last = e.kind == K::DuplicateNode || e.kind == K::DuplicateArrow || e.kind == K::DuplicateLabel ||
                           e.kind == K::DuplicateRule;
    std::optional<SourceSpan> found;
    for (const auto& es : spans) {
      if (es.ref == e.element) {
        found = es.span;
        if (!want_last) break;
      }
    }
    return found ? *found : name_span;
  }
};

void parse_decl(Lexer& lex, RawSketch& raw, bool diagram) {
  Token kw = lex.next();
  if (kw.kind != TK::Ident) {
    lex.fail_expected(kw, {"declaration"});
  }
  auto record = [&](ElementKind kind, const std::string& name, const SourceSpan& start) {
    SourceSpan span = start;
    span.end_line = kw.span.end_line;
    raw.spans.push_back({{kind, name}, span});
  };
  auto add_constraint = [&](const Token& label, std::function<Constraint(const ArrowLookup&)> build) {
    SourceSpan span = kw.span;
    span.end_line = label.span.end_line;
    span.end_column = label.span.end_column;
    raw.spans.push_back({{ElementKind::Constraint, label.text}, span});
    raw.constraints.emplace_back(span, std::move(build));
  };

  const std::string& k = kw.text;
  if (k == "node") {
    Token name = lex.expect_ident("node name");
    Node n{name.text, NodeKind::Entity};
    if (lex.accept_keyword("attr")) n.kind = NodeKind::Attribute;
    lex.expect_punct(";");
    record(ElementKind::Node, n.id, kw.span);
    raw.nodes.push_back(std::move(n));
  } else if (k == "arrow") {
    Token name = lex.expect_ident("arrow name");
    lex.expect_punct(":");
    Token src = lex.expect_ident("source node");
    lex.expect_punct("->");
    Token dst = lex.expect_ident("target node");
    lex.expect_punct(";");
    record(ElementKind::Arrow, name.text, kw.span);
    raw.arrows.push_back({name.text, src.text, dst.text});
  } else if (k == "commute") {
    Token label = lex.expect_ident("constraint label");
    lex.expect_punct(":");
    RawPath left = parse_path(lex);
    lex.expect_punct("=");
    RawPath right = parse_path(lex);
    lex.expect_punct(";");
    add_constraint(label, [=](const ArrowLookup& lookup) -> Constraint {
      return CommutativityConstraint{label.text, resolve_path(left, lookup), resolve_path(right, lookup)};
    });
  } else if (k == "limit") {
    Token label = lex.expect_ident("constraint label");
    lex.expect_punct(":");
    lex.expect_keyword("apex");
    FiniteLimitConstraint c;
    c.label = label.text;
    c.apex = lex.expect_ident("apex node").text;
    lex.expect_keyword("base");
    lex.expect_punct("{");
    if (!lex.at_punct(";") && !lex.at_punct("}")) c.base_nodes = texts(parse_ident_list(lex, "base node"));
    if (lex.accept_punct(";") && !lex.at_punct("}")) c.base_arrows = texts(parse_ident_list(lex, "base arrow"));
    lex.expect_punct("}");
    lex.expect_keyword("legs");
    lex.expect_punct("{");
    if (!lex.at_punct("}")) {
      do {
        Token node = lex.expect_ident("base node");
        lex.expect_punct(":");
        Token leg = lex.expect_ident("leg arrow");
        if (!c.legs.emplace(node.text, leg.text).second) lex.fail(node.span, "second leg for '" + node.text + "'");
      } while (lex.accept_punct(","));
    }
    lex.expect_punct("}");
    lex.expect_punct(";");
    add_constraint(label, [c](const ArrowLookup&) -> Constraint { return c; });
  } else if (k == "terminal") {
    Token label = lex.expect_ident("constraint label");
    lex.expect_punct(":");
    Token apex = lex.expect_ident("node name");
    lex.expect_punct(";");
    add_constraint(label, [=](const ArrowLookup&) -> Constraint { return detail::make_terminal(label.text, apex.text); });
  } else if (k == "product") {
    Token label = lex.expect_ident("constraint label");
    lex.expect_punct(":");
    Token apex = lex.expect_ident("node name");
    lex.expect_punct("=");
    std::vector<NodeId> factors{lex.expect_ident("factor node").text};
    while (lex.accept_punct("*")) factors.push_back(lex.expect_ident("factor node").text);
    lex.expect_keyword("with");
    std::vector<ArrowId> projections = texts(parse_ident_list(lex, "projection arrow"));
    lex.expect_punct(";");
    add_constraint(label, [=](const ArrowLookup&) -> Constraint {
      return detail::make_product(label.text, apex.text, factors, projections);
    });
  } else if (k == "pullback") {
    Token label = lex.expect_ident("constraint label");
    lex.expect_punct(":");
    Token apex = lex.expect_ident("node name");
    lex.expect_punct("=");
    Token f = lex.expect_ident("arrow name");
    NodeId over;
    Token op = lex.next();
    if (op.is_punct("×")) {
      Token sub = lex.expect_ident("'_' followed by a node name");
      if (sub.text.size() < 2 || sub.text[0] != '_') lex.fail_expected(sub, {"'_' followed by a node name"});
      over = sub.text.substr(1);
    } else if (op.kind == TK::Ident && op.text.size() > 2 && op.text.compare(0, 2, "x_") == 0) {
      over = op.text.substr(2);
    } else {
      lex.fail_expected(op, {"'×_C'", "'x_C'"});
    }
    Token g = lex.expect_ident("arrow name");
    lex.expect_keyword("with");
    Token p1 = lex.expect_ident("projection arrow");
    lex.expect_punct(",");
    Token p2 = lex.expect_ident("projection arrow");
    lex.expect_punct(";");
    add_constraint(label, [=](const ArrowLookup& lookup) -> Constraint {
      return detail::make_pullback(label.text, apex.text, f.text, over, g.text, p1.text, p2.text, lookup);
    });
  } else if (k == "equalizer") {
    Token label = lex.expect_ident("constraint label");
    lex.expect_punct(":");
    Token apex = lex.expect_ident("node name");
    lex.expect_punct("=");
    lex.expect_keyword("eq");
    lex.expect_punct("(");
    Token f = lex.expect_ident("arrow name");
    lex.expect_punct(",");
    Token g = lex.expect_ident("arrow name");
    lex.expect_punct(")");
    lex.expect_keyword("with");
    Token e = lex.expect_ident("arrow name");
    lex.expect_punct(";");
    add_constraint(label, [=](const ArrowLookup& lookup) -> Constraint {
      return detail::make_equalizer(label.text, apex.text, f.text, g.text, e.text, lookup);
    });
  } else if (k == "coproduct") {
    Token label = lex.expect_ident("constraint label");
    lex.expect_punct(":");
    CoproductConstraint c;
    c.label = label.text;
    c.apex = lex.expect_ident("node name").text;
    lex.expect_punct("=");
    if (lex.peek().is(TK::Number, "0")) {
      lex.next();
    } else {
      c.summands.push_back(lex.expect_ident("summand node").text);
      while (lex.accept_punct("+")) c.summands.push_back(lex.expect_ident("summand node").text);
      lex.expect_keyword("with");
      c.injections = texts(parse_ident_list(lex, "injection arrow"));
    }
    lex.expect_punct(";");
    add_constraint(label, [c](const ArrowLookup&) -> Constraint { return c; });
  } else if (k == "rule") {
    HornClause rule = parse_rule_body(lex);
    record(ElementKind::Rule, rule.name, kw.span);
    raw.rules.push_back(std::move(rule));
  } else if (diagram && k == "interface") {
    for (auto& t : parse_ident_list(lex, "interface node")) raw.interface.push_back(t.text);
    lex.expect_punct(";");
  } else if (diagram && k == "anchor") {
    Token arrow = lex.expect_ident("arrow name");
    lex.expect_punct("->");
    Token node = lex.expect_ident("interface node");
    lex.expect_punct(";");
    if (!raw.anchors.emplace(arrow.text, node.text).second) lex.fail(arrow.span, "second anchor for '" + arrow.text + "'");
  } else {
    std::vector<std::string> expected{"'node'",    "'arrow'",    "'commute'",   "'limit'", "'terminal'",
                                      "'product'", "'pullback'", "'equalizer'", "'coproduct'", "'rule'"};
    if (diagram) {
      expected.push_back("'interface'");
      expected.push_back("'anchor'");
    }
    lex.fail_expected(kw, expected);
  }
}

void parse_block(Lexer& lex, RawSketch& raw, bool diagram) {
  lex.expect_punct("{");
  while (!lex.accept_punct("}")) {
    if (lex.peek().kind == TK::End) lex.fail_expected(lex.peek(), {"declaration", "'}'"});
    parse_decl(lex, raw, diagram);
  }
}

void expect_end(Lexer& lex) {
  if (lex.peek().kind != TK::End) lex.fail_expected(lex.peek(), {"end of input"});
}

ArrowLookup lookup_in(const std::vector<Arrow>& arrows) {
  return [&arrows](const std::string& id) -> const Arrow* {
    auto it = std::find_if(arrows.begin(), arrows.end(), [&](const Arrow& a) { return a.id == id; });
    return it == arrows.end() ? nullptr : &*it;
  };
}

}  // namespace

Sketch parse_sketch(std::string_view text, std::string_view file) {
  Lexer lex(text, file);
  lex.expect_keyword("sketch");
  RawSketch raw;
  Token name = lex.expect_ident("sketch name");
  raw.name = name.text;
  raw.name_span = name.span;
  parse_block(lex, raw, false);
  expect_end(lex);

  Sketch s = raw.resolve(lookup_in(raw.arrows));
  if (auto errors = check_wellformed(s); !errors.empty()) {
    const auto& e = errors.front();
    throw ParseError(ParseError::Kind::Wellformedness, raw.locate(e),
                     std::string(to_string(e.kind)) + ": " + e.message);
  }
  return s;
}

Hierarchy parse_hierarchy(std::string_view text, std::string_view file) {
  Lexer lex(text, file);
  std::vector<RawSketch> raws;
  while (lex.peek().kind != TK::End) {
    lex.expect_keyword("diagram");
    RawSketch raw;
    Token name = lex.expect_ident("diagram name");
    raw.name = name.text;
    raw.name_span = name.span;
    if (lex.accept_keyword("refines")) {
      Token parent = lex.expect_ident("parent diagram");
      lex.expect_punct(".");
      Token box = lex.expect_ident("box node");
      raw.refines = std::pair(parent.text, box.text);
    }
    parse_block(lex, raw, true);
    for (const auto& other : raws) {
      if (other.name == raw.name) throw ParseError(ParseError::Kind::Wellformedness, name.span, "diagram '" + raw.name + "' declared twice");
    }
    raws.push_back(std::move(raw));
  }

  std::vector<Arrow> all_arrows;
  for (const auto& r : raws) all_arrows.insert(all_arrows.end(), r.arrows.begin(), r.arrows.end());
  const ArrowLookup lookup = lookup_in(all_arrows);

  Hierarchy h;
  const RawSketch* root = nullptr;
  for (const auto& r : raws) {
    ContextDiagram d;
    d.name = r.name;
    d.local = r.resolve(lookup);
    d.interface = r.interface;
    d.anchors = r.anchors;
    if (r.refines) {
      d.parent = r.refines->first;
    } else if (root != nullptr) {
      throw ParseError(ParseError::Kind::Wellformedness, r.name_span,
                       "diagrams '" + root->name + "' and '" + r.name + "' are both top-level");
    } else {
      root = &r;
    }
    h.diagrams.emplace(d.name, std::move(d));
  }
  if (root == nullptr) {
    SourceSpan span{std::string(file), 1, 1, 1, 1};
    throw ParseError(ParseError::Kind::Wellformedness, span, "no top-level diagram");
  }
  h.root = root->name;
  for (const auto& r : raws) {
    if (!r.refines) continue;
    auto parent = h.diagrams.find(r.refines->first);
    if (parent == h.diagrams.end()) {
      throw ParseError(ParseError::Kind::UnknownSymbol, r.name_span,
                       "diagram '" + r.name + "' refines unknown diagram '" + r.refines->first + "'");
    }
    parent->second.children.push_back({r.refines->second, r.name});
  }
  return h;
}

std::vector<HornClause> parse_rules(std::string_view text, std::string_view file) {
  Lexer lex(text, file);
  std::vector<HornClause> rules;
  while (lex.peek().kind != TK::End) {
    lex.expect_keyword("rule");
    rules.push_back(parse_rule_body(lex));
  }
  return rules;
}

Instance parse_instance(std::string_view text, const Sketch& s, std::string_view file) {
  Lexer lex(text, file);
  lex.expect_keyword("instance");
  Instance inst = empty_instance(s, lex.expect_ident("instance name").text);
  lex.expect_keyword("of");
  Token sketch_name = lex.expect_ident("sketch name");
  if (sketch_name.text != s.name) {
    throw ParseError(ParseError::Kind::UnknownSymbol, sketch_name.span,
                     "instance is declared for sketch '" + sketch_name.text + "' but was read against '" + s.name + "'");
  }
  lex.expect_punct("{");

  std::set<NodeId> assigned_nodes;
  std::set<ArrowId> assigned_arrows;
  auto read_atom = [&]() {
    Token t = lex.next_atom();
    if (!is_valid_atom(t.text)) lex.fail(t.span, "atom '" + t.text + "' is empty or contains whitespace");
    return t;
  };

  while (!lex.accept_punct("}")) {
    Token name = lex.expect_ident("node or arrow name");
    lex.expect_punct("=");
    if (!lex.at_raw("{")) lex.fail_expected(lex.next(), {"'{'"});
    lex.expect_punct("{");

    std::vector<std::pair<Token, std::optional<Token>>> items;
    if (!lex.at_raw("}")) {
      for (;;) {
        Token x = read_atom();
        std::optional<Token> y;
        if (lex.at_raw("->")) {
          lex.expect_punct("->");
          y = read_atom();
        }
        items.emplace_back(std::move(x), std::move(y));
        if (lex.at_raw(",")) {
          lex.expect_punct(",");
          continue;
        }
        break;
      }
    }
    lex.expect_punct("}");
    lex.expect_punct(";");

    const bool is_node = s.find_node(name.text) != nullptr;
    const bool is_arrow = s.find_arrow(name.text) != nullptr;
    if (!is_node && !is_arrow) {
      throw ParseError(ParseError::Kind::UnknownSymbol, name.span,
                       "'" + name.text + "' is neither a node nor an arrow of '" + s.name + "'");
    }
    const bool mapping_syntax = !items.empty() && items.front().second.has_value();
    bool as_arrow;
    if (items.empty()) {
      as_arrow = !is_node || assigned_nodes.count(name.text);
    } else {
      as_arrow = mapping_syntax;
    }
    if (as_arrow && !is_arrow) lex.fail(name.span, "'" + name.text + "' is a node; expected a set of atoms");
    if (!as_arrow && !is_node) lex.fail(name.span, "'" + name.text + "' is an arrow; expected 'atom -> atom' pairs");

    if (as_arrow) {
      if (!assigned_arrows.insert(name.text).second) lex.fail(name.span, "arrow '" + name.text + "' assigned twice");
      ArrowMap& m = inst.maps[name.text];
      for (auto& [x, y] : items) {
        if (!y) lex.fail(x.span, "expected 'atom -> atom' in the map of '" + name.text + "'", {"'->'"});
        m.insert(x.text, y->text);
      }
    } else {
      if (!assigned_nodes.insert(name.text).second) lex.fail(name.span, "node '" + name.text + "' assigned twice");
      auto& carrier = inst.carriers[name.text];
      for (auto& [x, y] : items) {
        if (y) lex.fail(y->span, "unexpected mapping in the carrier of '" + name.text + "'");
        carrier.insert(x.text);
      }
    }
  }
  expect_end(lex);
  return inst;
}

SketchMorphism parse_morphism(std::string_view text, const Sketch& dst, std::string_view file) {
  Lexer lex(text, file);
  SketchMorphism m;
  const ArrowLookup lookup = lookup_in(dst.arrows);
  while (lex.peek().kind != TK::End) {
    lex.expect_keyword("map");
    Token kind = lex.next();
    if (kind.is_keyword("node")) {
      Token from = lex.expect_ident("source node");
      lex.expect_punct("->");
      Token to = lex.expect_ident("target node");
      lex.expect_punct(";");
      if (!m.node_map.emplace(from.text, to.text).second) lex.fail(from.span, "node '" + from.text + "' mapped twice");
    } else if (kind.is_keyword("arrow")) {
      Token from = lex.expect_ident("source arrow");
      lex.expect_punct("->");
      RawPath raw = parse_path(lex);
      lex.expect_punct(";");
      if (!m.arrow_map.emplace(from.text, resolve_path(raw, lookup)).second) {
        lex.fail(from.span, "arrow '" + from.text + "' mapped twice");
      }
    } else {
      lex.fail_expected(kind, {"'node'", "'arrow'"});
    }
  }
  return m;
}

View parse_view(std::string_view text, const Sketch& s, std::string_view file) {
  Lexer lex(text, file);
  lex.expect_keyword("view");
  Token name = lex.expect_ident("view name");
  lex.expect_keyword("of");
  Token root = lex.expect_ident("root node");
  lex.expect_punct("{");
  std::vector<ViewColumn> columns;
  std::vector<SourceSpan> spans;
  const ArrowLookup lookup = lookup_in(s.arrows);
  while (!lex.accept_punct("}")) {
    Token col = lex.expect_ident("column name");
    lex.expect_punct("=");
    RawPath raw = parse_path(lex);
    lex.expect_punct(";");
    columns.push_back({col.text, resolve_path(raw, lookup)});
    spans.push_back(col.span);
  }
  expect_end(lex);
  try {
    return define_view(s, name.text, root.text, columns);
  } catch (const ViewError& e) {
    SourceSpan span = root.span;
    if (e.kind() != ViewError::Kind::UnknownNode) {
      for (std::size_t k = 0; k < columns.size(); ++k) {
        if (std::string(e.what()).find("'" + columns[k].name + "'") != std::string::npos) {
          span = spans[k];
          break;
        }
      }
    }
    throw ParseError(e.kind() == ViewError::Kind::UnknownNode ? ParseError::Kind::UnknownSymbol
                                                              : ParseError::Kind::Wellformedness,
                     span, e.what());
  }
}

SpanFile parse_span_file(std::string_view text, std::string_view file) {
  SpanFile out;
  std::map<std::string, std::string*> slots{{"shared", &out.shared},
                                            {"left", &out.left},
                                            {"right", &out.right},
                                            {"into_left", &out.into_left},
                                            {"into_right", &out.into_right}};
  std::set<std::string> seen;
  int line_no = 0;
  std::size_t pos = 0;
  auto trim = [](std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    return v;
  };
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '#' || line.substr(0, 2) == "//") continue;
    SourceSpan span{std::string(file), line_no, 1, line_no, static_cast<int>(line.size()) + 1};
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(ParseError::Kind::Syntax, span, "expected 'key = value'", {"'='"});
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    auto slot = slots.find(key);
    if (slot == slots.end()) {
      throw ParseError(ParseError::Kind::Syntax, span, "unknown key '" + key + "'",
                       {"shared", "left", "right", "into_left", "into_right"});
    }
    if (!seen.insert(key).second) throw ParseError(ParseError::Kind::Syntax, span, "key '" + key + "' given twice");
    if (value.empty()) throw ParseError(ParseError::Kind::Syntax, span, "empty value for '" + key + "'");
    *slot->second = value;
  }
  for (const auto& [key, slot] : slots) {
    if (!seen.count(key)) {
      SourceSpan span{std::string(file), line_no, 1, line_no, 1};
      throw ParseError(ParseError::Kind::Syntax, span, "missing key '" + key + "'");
    }
  }
  return out;
}

}  // namespace sketchkit
