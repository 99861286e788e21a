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
#include <cctype>
#include <sstream>

#include "desugar.hpp"
#include "sketchkit/dsl.hpp"

namespace sketchkit {

namespace {

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k) out += sep;
    out += parts[k];
  }
  return out;
}

std::string path_text(const Path& p) {
  if (p.is_identity()) return "id(" + p.start + ")";
  return join(p.arrows, ".");
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

bool bare_atom(const std::string& a) {
  if (a.empty()) return false;
  if (a.find("->") != std::string::npos || a.find("//") != std::string::npos) return false;
  return std::all_of(a.begin(), a.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || std::string_view("_.:@-+/#").find(c) != std::string_view::npos;
  });
}

std::string atom_text(const std::string& a) { return bare_atom(a) ? a : quote(a); }

std::string clause_atom_text(const ClauseAtom& a) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ArrowAtom>) {
          return x.arrow + "(" + x.in + ", " + x.out + ")";
        } else if constexpr (std::is_same_v<T, EqAtom>) {
          return x.lhs + " = " + x.rhs;
        } else {
          return x.var + " = " + quote(x.literal);
        }
      },
      a);
}

// Surface syntax for limits written with sugar, provided expanding it again
// gives back exactly the stored constraint. Otherwise the general form.
std::string limit_text(const Sketch& s, const FiniteLimitConstraint& c) {
  const detail::ArrowLookup lookup = [&s](const std::string& id) { return s.find_arrow(id); };
  auto leg = [&c](const NodeId& n) {
    auto it = c.legs.find(n);
    return it == c.legs.end() ? std::string() : it->second;
  };
  try {
    switch (c.form) {
      case LimitForm::General:
        break;
      case LimitForm::Terminal:
        if (detail::make_terminal(c.label, c.apex) == c) return "terminal " + c.label + ": " + c.apex + ";";
        break;
      case LimitForm::Product: {
        std::vector<ArrowId> projections;
        for (const auto& n : c.base_nodes) projections.push_back(leg(n));
        if (!c.base_nodes.empty() && detail::make_product(c.label, c.apex, c.base_nodes, projections) == c) {
          return "product " + c.label + ": " + c.apex + " = " + join(c.base_nodes, " * ") + " with " +
                 join(projections, ", ") + ";";
        }
        break;
      }
      case LimitForm::Pullback:
        if (c.base_nodes.size() == 3 && c.base_arrows.size() == 2) {
          const auto& f = c.base_arrows[0];
          const auto& g = c.base_arrows[1];
          const auto p1 = leg(c.base_nodes[0]);
          const auto p2 = leg(c.base_nodes[1]);
          if (detail::make_pullback(c.label, c.apex, f, c.base_nodes[2], g, p1, p2, lookup) == c) {
            return "pullback " + c.label + ": " + c.apex + " = " + f + " ×_" + c.base_nodes[2] + " " + g + " with " +
                   p1 + ", " + p2 + ";";
          }
        }
        break;
      case LimitForm::Equalizer:
        if (c.base_nodes.size() == 2 && c.base_arrows.size() == 2) {
          const auto e = leg(c.base_nodes[0]);
          if (detail::make_equalizer(c.label, c.apex, c.base_arrows[0], c.base_arrows[1], e, lookup) == c) {
            return "equalizer " + c.label + ": " + c.apex + " = eq(" + c.base_arrows[0] + ", " + c.base_arrows[1] +
                   ") with " + e + ";";
          }
        }
        break;
    }
  } catch (const detail::DesugarError&) {
  }
  std::vector<std::string> legs;
  for (const auto& [n, a] : c.legs) legs.push_back(n + ": " + a);
  std::string base = join(c.base_nodes, ", ");
  if (!c.base_arrows.empty()) base += "; " + join(c.base_arrows, ", ");
  return "limit " + c.label + ": apex " + c.apex + " base { " + base + " } legs { " + join(legs, ", ") + " };";
}

std::string constraint_text(const Sketch& s, const Constraint& c) {
  if (const auto* comm = std::get_if<CommutativityConstraint>(&c)) {
    return "commute " + comm->label + ": " + path_text(comm->left) + " = " + path_text(comm->right) + ";";
  }
  if (const auto* lim = std::get_if<FiniteLimitConstraint>(&c)) return limit_text(s, *lim);
  const auto& co = std::get<CoproductConstraint>(c);
  if (co.summands.empty()) return "coproduct " + co.label + ": " + co.apex + " = 0;";
  return "coproduct " + co.label + ": " + co.apex + " = " + join(co.summands, " + ") + " with " +
         join(co.injections, ", ") + ";";
}

}  // namespace

std::string print_rule(const HornClause& c) {
  std::string out = "rule " + c.name;
  if (!c.confidence.is_one() || c.support != 0) {
    out += " [conf=" + c.confidence.str() + " support=" + std::to_string(c.support) + "]";
  }
  out += ":";
  if (!c.vars.empty()) {
    std::vector<std::string> vars;
    for (const auto& v : c.vars) vars.push_back(v.name + ":" + v.node);
    out += " forall " + join(vars, ", ") + " .";
  }
  std::vector<std::string> body;
  for (const auto& a : c.body) body.push_back(clause_atom_text(a));
  if (!body.empty()) out += " " + join(body, ", ");
  return out + " => " + clause_atom_text(c.head) + ";";
}

std::string print_rules(const std::vector<HornClause>& rules) {
  std::string out;
  for (const auto& r : rules) out += print_rule(r) + "\n";
  return out;
}

std::string print_sketch(const Sketch& s) {
  std::ostringstream out;
  out << "sketch " << s.name << " {\n";
  for (const auto& n : s.nodes) {
    out << "  node " << n.id << (n.kind == NodeKind::Attribute ? " attr" : "") << ";\n";
  }
  for (const auto& a : s.arrows) out << "  arrow " << a.id << ": " << a.src << " -> " << a.dst << ";\n";
  for (const auto& c : s.constraints) out << "  " << constraint_text(s, c) << "\n";
  for (const auto& r : s.fuzzy_rules) out << "  " << print_rule(r) << "\n";
  out << "}\n";
  return out.str();
}

std::string print_instance(const Instance& i) {
  std::ostringstream out;
  out << "instance " << i.name << " of " << i.sketch_name << " {\n";
  for (const auto& [node, atoms] : i.carriers) {
    std::vector<std::string> parts;
    for (const auto& a : atoms) parts.push_back(atom_text(a));
    out << "  " << node << " = {" << join(parts, ", ") << "};\n";
  }
  for (const auto& [arrow, m] : i.maps) {
    std::vector<std::string> parts;
    for (const auto& [x, y] : m) parts.push_back(atom_text(x) + " -> " + atom_text(y));
    out << "  " << arrow << " = {" << join(parts, ", ") << "};\n";
  }
  out << "}\n";
  return out.str();
}

std::string print_morphism(const SketchMorphism& m) {
  std::string out;
  for (const auto& [from, to] : m.node_map) out += "map node " + from + " -> " + to + ";\n";
  for (const auto& [from, to] : m.arrow_map) out += "map arrow " + from + " -> " + path_text(to) + ";\n";
  return out;
}

}  // namespace sketchkit
