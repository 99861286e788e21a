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

#include "sketchkit/sketch.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <set>

namespace sketchkit {

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(name.front())) return false;
  return std::all_of(name.begin(), name.end(), [&](char c) { return alpha(c) || digit(c); });
}

const std::string& label_of(const Constraint& c) {
  return std::visit([](const auto& v) -> const std::string& { return v.label; }, c);
}

void set_label(Constraint& c, std::string label) {
  std::visit([&](auto& v) { v.label = std::move(label); }, c);
}

namespace {

template <typename T>
std::vector<T> sorted(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  return v;
}

struct EquivalenceVisitor {
  bool operator()(const CommutativityConstraint& a, const CommutativityConstraint& b) const {
    return (a.left == b.left && a.right == b.right) || (a.left == b.right && a.right == b.left);
  }
  bool operator()(const FiniteLimitConstraint& a, const FiniteLimitConstraint& b) const {
    return a.apex == b.apex && a.legs == b.legs && sorted(a.base_nodes) == sorted(b.base_nodes) &&
           sorted(a.base_arrows) == sorted(b.base_arrows);
  }
  bool operator()(const CoproductConstraint& a, const CoproductConstraint& b) const {
    if (a.apex != b.apex || a.summands.size() != b.summands.size()) return false;
    std::vector<std::pair<NodeId, ArrowId>> pa, pb;
    for (std::size_t i = 0; i < a.summands.size() && i < a.injections.size(); ++i) {
      pa.emplace_back(a.summands[i], a.injections[i]);
    }
    for (std::size_t i = 0; i < b.summands.size() && i < b.injections.size(); ++i) {
      pb.emplace_back(b.summands[i], b.injections[i]);
    }
    return sorted(pa) == sorted(pb);
  }
  template <typename A, typename B>
  bool operator()(const A&, const B&) const {
    return false;
  }
};

}  // namespace

bool equivalent_constraints(const Constraint& a, const Constraint& b) {
  return std::visit(EquivalenceVisitor{}, a, b);
}

const Node* Sketch::find_node(std::string_view id) const {
  auto it = std::find_if(nodes.begin(), nodes.end(), [&](const Node& n) { return n.id == id; });
  return it == nodes.end() ? nullptr : &*it;
}

const Arrow* Sketch::find_arrow(std::string_view id) const {
  auto it = std::find_if(arrows.begin(), arrows.end(), [&](const Arrow& a) { return a.id == id; });
  return it == arrows.end() ? nullptr : &*it;
}

const Constraint* Sketch::find_constraint(std::string_view label) const {
  auto it = std::find_if(constraints.begin(), constraints.end(),
                         [&](const Constraint& c) { return label_of(c) == label; });
  return it == constraints.end() ? nullptr : &*it;
}

HornClause* Sketch::find_rule(std::string_view rule_name) {
  auto it = std::find_if(fuzzy_rules.begin(), fuzzy_rules.end(),
                         [&](const HornClause& c) { return c.name == rule_name; });
  return it == fuzzy_rules.end() ? nullptr : &*it;
}

const HornClause* Sketch::find_rule(std::string_view rule_name) const {
  return const_cast<Sketch*>(this)->find_rule(rule_name);
}

bool structurally_equal(const Sketch& a, const Sketch& b) {
  auto node_key = [](const Node& n) { return std::pair(n.id, n.kind); };
  auto arrow_key = [](const Arrow& x) { return std::tuple(x.id, x.src, x.dst); };
  std::vector<std::pair<NodeId, NodeKind>> na, nb;
  std::vector<std::tuple<ArrowId, NodeId, NodeId>> aa, ab;
  std::transform(a.nodes.begin(), a.nodes.end(), std::back_inserter(na), node_key);
  std::transform(b.nodes.begin(), b.nodes.end(), std::back_inserter(nb), node_key);
  std::transform(a.arrows.begin(), a.arrows.end(), std::back_inserter(aa), arrow_key);
  std::transform(b.arrows.begin(), b.arrows.end(), std::back_inserter(ab), arrow_key);
  return a.name == b.name && sorted(na) == sorted(nb) && sorted(aa) == sorted(ab) &&
         a.constraints == b.constraints && a.fuzzy_rules == b.fuzzy_rules;
}

NodeId path_end(const Sketch& s, const Path& p) {
  NodeId at = p.start;
  for (const auto& id : p.arrows) {
    const Arrow* a = s.find_arrow(id);
    if (a == nullptr) throw NonComposable("unknown arrow '" + id + "' in path");
    if (a->src != at) {
      throw NonComposable("arrow '" + id + "' starts at '" + a->src + "', path is at '" + at + "'");
    }
    at = a->dst;
  }
  return at;
}

Path compose_paths(const Sketch& s, const Path& p, const Path& q) {
  const NodeId end = path_end(s, p);
  if (end != q.start) {
    throw NonComposable("cannot compose: first path ends at '" + end + "', second starts at '" + q.start + "'");
  }
  Path out = p;
  out.arrows.insert(out.arrows.end(), q.arrows.begin(), q.arrows.end());
  return out;
}

std::string_view to_string(WellformednessError::Kind kind) {
  using K = WellformednessError::Kind;
  switch (kind) {
    case K::InvalidIdentifier: return "InvalidIdentifier";
    case K::DuplicateNode: return "DuplicateNode";
    case K::DuplicateArrow: return "DuplicateArrow";
    case K::DuplicateLabel: return "DuplicateLabel";
    case K::DuplicateRule: return "DuplicateRule";
    case K::UnknownNode: return "UnknownNode";
    case K::UnknownArrow: return "UnknownArrow";
    case K::BrokenPath: return "BrokenPath";
    case K::PathEndpointMismatch: return "PathEndpointMismatch";
    case K::ApexInBase: return "ApexInBase";
    case K::DuplicateBaseNode: return "DuplicateBaseNode";
    case K::BaseArrowOutsideBase: return "BaseArrowOutsideBase";
    case K::LegMismatch: return "LegMismatch";
    case K::MissingLeg: return "MissingLeg";
    case K::ApexInSummands: return "ApexInSummands";
    case K::InjectionMismatch: return "InjectionMismatch";
    case K::UnknownVariable: return "UnknownVariable";
    case K::VariableTypeMismatch: return "VariableTypeMismatch";
  }
  return "Unknown";
}

std::map<NodeId, Path> resolve_legs(const Sketch& s, const FiniteLimitConstraint& c) {
  std::map<NodeId, Path> out;
  std::deque<NodeId> queue;
  for (const auto& [base, leg] : c.legs) {
    out.emplace(base, Path{c.apex, {leg}});
    queue.push_back(base);
  }
  while (!queue.empty()) {
    const NodeId from = queue.front();
    queue.pop_front();
    for (const auto& id : c.base_arrows) {
      const Arrow* a = s.find_arrow(id);
      if (a == nullptr || a->src != from || out.count(a->dst)) continue;
      Path p = out.at(from);
      p.arrows.push_back(id);
      out.emplace(a->dst, std::move(p));
      queue.push_back(a->dst);
    }
  }
  return out;
}

namespace {

using Kind = WellformednessError::Kind;

class Checker {
 public:
  explicit Checker(const Sketch& s) : s_(s) {}

  std::vector<WellformednessError> run() {
    if (!s_.name.empty() && !is_identifier(s_.name)) {
      add(Kind::InvalidIdentifier, {ElementKind::Sketch, s_.name}, "sketch name '" + s_.name + "' is not an identifier");
    }
    check_nodes();
    check_arrows();
    check_constraints();
    check_rules();
    return std::move(errors_);
  }

 private:
  void add(Kind kind, ElementRef ref, std::string message) {
    errors_.push_back({kind, std::move(ref), std::move(message)});
  }

  void check_nodes() {
    std::set<std::string> seen;
    for (const auto& n : s_.nodes) {
      ElementRef ref{ElementKind::Node, n.id};
      if (!is_identifier(n.id)) add(Kind::InvalidIdentifier, ref, "node name '" + n.id + "' is not an identifier");
      if (!seen.insert(n.id).second) add(Kind::DuplicateNode, ref, "node '" + n.id + "' declared twice");
    }
  }

  void check_arrows() {
    std::set<std::string> seen;
    for (const auto& a : s_.arrows) {
      ElementRef ref{ElementKind::Arrow, a.id};
      if (!is_identifier(a.id)) add(Kind::InvalidIdentifier, ref, "arrow name '" + a.id + "' is not an identifier");
      if (!seen.insert(a.id).second) add(Kind::DuplicateArrow, ref, "arrow '" + a.id + "' declared twice");
      for (const auto* end : {&a.src, &a.dst}) {
        if (!s_.find_node(*end)) {
          add(Kind::UnknownNode, ref, "arrow '" + a.id + "' refers to unknown node '" + *end + "'");
        }
      }
    }
  }

  bool require_node(const NodeId& id, const ElementRef& ref) {
    if (s_.find_node(id)) return true;
    add(Kind::UnknownNode, ref, "unknown node '" + id + "'");
    return false;
  }

  const Arrow* require_arrow(const ArrowId& id, const ElementRef& ref) {
    if (const Arrow* a = s_.find_arrow(id)) return a;
    add(Kind::UnknownArrow, ref, "unknown arrow '" + id + "'");
    return nullptr;
  }

  // Returns the end node when the path is well-formed.
  std::optional<NodeId> check_path(const Path& p, const ElementRef& ref) {
    if (!require_node(p.start, ref)) return std::nullopt;
    NodeId at = p.start;
    for (const auto& id : p.arrows) {
      const Arrow* a = require_arrow(id, ref);
      if (a == nullptr) return std::nullopt;
      if (a->src != at) {
        add(Kind::BrokenPath, ref, "arrow '" + id + "' starts at '" + a->src + "' but the path is at '" + at + "'");
        return std::nullopt;
      }
      at = a->dst;
    }
    return at;
  }

  void check_constraints() {
    std::set<std::string> labels;
    for (const auto& c : s_.constraints) {
      ElementRef ref{ElementKind::Constraint, label_of(c)};
      if (!is_identifier(ref.name)) add(Kind::InvalidIdentifier, ref, "label '" + ref.name + "' is not an identifier");
      if (!labels.insert(ref.name).second) add(Kind::DuplicateLabel, ref, "constraint label '" + ref.name + "' used twice");
      std::visit([&](const auto& v) { check(v, ref); }, c);
    }
  }

  void check(const CommutativityConstraint& c, const ElementRef& ref) {
    auto l = check_path(c.left, ref);
    auto r = check_path(c.right, ref);
    if (!l || !r) return;
    if (c.left.start != c.right.start) {
      add(Kind::PathEndpointMismatch, ref,
          "paths start at different nodes '" + c.left.start + "' and '" + c.right.start + "'");
    } else if (*l != *r) {
      add(Kind::PathEndpointMismatch, ref, "paths end at different nodes '" + *l + "' and '" + *r + "'");
    }
  }

  void check(const FiniteLimitConstraint& c, const ElementRef& ref) {
    bool ok = require_node(c.apex, ref);
    std::set<NodeId> base;
    for (const auto& n : c.base_nodes) {
      ok = require_node(n, ref) && ok;
      if (!base.insert(n).second) {
        add(Kind::DuplicateBaseNode, ref, "base node '" + n + "' listed twice");
        ok = false;
      }
    }
    if (base.count(c.apex)) {
      add(Kind::ApexInBase, ref, "apex '" + c.apex + "' is also a base node");
      ok = false;
    }
    for (const auto& id : c.base_arrows) {
      const Arrow* a = require_arrow(id, ref);
      if (a == nullptr) {
        ok = false;
      } else if (!base.count(a->src) || !base.count(a->dst)) {
        add(Kind::BaseArrowOutsideBase, ref, "base arrow '" + id + "' leaves the base diagram");
        ok = false;
      }
    }
    for (const auto& [node, leg] : c.legs) {
      if (!base.count(node)) {
        add(Kind::LegMismatch, ref, "leg for '" + node + "', which is not a base node");
        ok = false;
        continue;
      }
      const Arrow* a = require_arrow(leg, ref);
      if (a == nullptr) {
        ok = false;
      } else if (a->src != c.apex || a->dst != node) {
        add(Kind::LegMismatch, ref, "leg '" + leg + "' must go from '" + c.apex + "' to '" + node + "'");
        ok = false;
      }
    }
    if (!ok) return;
    const auto resolved = resolve_legs(s_, c);
    for (const auto& n : c.base_nodes) {
      if (!resolved.count(n)) {
        add(Kind::MissingLeg, ref, "base node '" + n + "' has no leg and is unreachable from a legged node");
      }
    }
  }

  void check(const CoproductConstraint& c, const ElementRef& ref) {
    require_node(c.apex, ref);
    for (const auto& n : c.summands) {
      require_node(n, ref);
      if (n == c.apex) add(Kind::ApexInSummands, ref, "apex '" + c.apex + "' is also a summand");
    }
    if (c.injections.size() != c.summands.size()) {
      add(Kind::InjectionMismatch, ref,
          std::to_string(c.summands.size()) + " summands but " + std::to_string(c.injections.size()) + " injections");
      return;
    }
    std::set<ArrowId> seen;
    for (std::size_t i = 0; i < c.summands.size(); ++i) {
      const Arrow* a = require_arrow(c.injections[i], ref);
      if (a == nullptr) continue;
      if (a->src != c.summands[i] || a->dst != c.apex) {
        add(Kind::InjectionMismatch, ref,
            "injection '" + a->id + "' must go from '" + c.summands[i] + "' to '" + c.apex + "'");
      }
      if (!seen.insert(a->id).second) {
        add(Kind::InjectionMismatch, ref, "injection '" + a->id + "' used for two summands");
      }
    }
  }

  void check_rules() {
    std::set<std::string> names;
    for (const auto& rule : s_.fuzzy_rules) {
      ElementRef ref{ElementKind::Rule, rule.name};
      if (!is_identifier(rule.name)) add(Kind::InvalidIdentifier, ref, "rule name '" + rule.name + "' is not an identifier");
      if (!names.insert(rule.name).second) add(Kind::DuplicateRule, ref, "rule '" + rule.name + "' declared twice");
      std::set<std::string> vars;
      for (const auto& v : rule.vars) {
        if (!vars.insert(v.name).second) add(Kind::UnknownVariable, ref, "variable '" + v.name + "' declared twice");
        require_node(v.node, ref);
      }
      for (const auto& atom : rule.body) check_atom(rule, atom, ref);
      check_atom(rule, rule.head, ref);
    }
  }

  const VarDecl* require_var(const HornClause& rule, const std::string& var, const ElementRef& ref) {
    if (const VarDecl* v = rule.find_var(var)) return v;
    add(Kind::UnknownVariable, ref, "variable '" + var + "' is not declared");
    return nullptr;
  }

  void check_atom(const HornClause& rule, const ClauseAtom& atom, const ElementRef& ref) {
    if (const auto* a = std::get_if<ArrowAtom>(&atom)) {
      const Arrow* arrow = require_arrow(a->arrow, ref);
      const VarDecl* in = require_var(rule, a->in, ref);
      const VarDecl* out = require_var(rule, a->out, ref);
      if (arrow && in && in->node != arrow->src) {
        add(Kind::VariableTypeMismatch, ref, "'" + a->in + "' has type '" + in->node + "' but '" + arrow->id + "' starts at '" + arrow->src + "'");
      }
      if (arrow && out && out->node != arrow->dst) {
        add(Kind::VariableTypeMismatch, ref, "'" + a->out + "' has type '" + out->node + "' but '" + arrow->id + "' ends at '" + arrow->dst + "'");
      }
    } else if (const auto* e = std::get_if<EqAtom>(&atom)) {
      const VarDecl* l = require_var(rule, e->lhs, ref);
      const VarDecl* r = require_var(rule, e->rhs, ref);
      if (l && r && l->node != r->node) {
        add(Kind::VariableTypeMismatch, ref, "cannot equate '" + e->lhs + "' : '" + l->node + "' with '" + e->rhs + "' : '" + r->node + "'");
      }
    } else {
      require_var(rule, std::get<ConstAtom>(atom).var, ref);
    }
  }

  const Sketch& s_;
  std::vector<WellformednessError> errors_;
};

}  // namespace

std::vector<WellformednessError> check_wellformed(const Sketch& s) { return Checker(s).run(); }

}  // namespace sketchkit
