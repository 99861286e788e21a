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

#include "sketchkit/hierarchy.hpp"

#include <algorithm>
#include <set>

namespace sketchkit {

namespace {

using FK = FlattenError::Kind;

class Flattener {
 public:
  explicit Flattener(const Hierarchy& h) : h_(h) {}

  Sketch run() {
    Sketch out = flatten_diagram(h_.root);
    out.name = h_.root;
    if (auto errors = check_wellformed(out); !errors.empty()) {
      throw FlattenError(FK::InterfaceMismatch, "flattened sketch is not well-formed: " + errors.front().message);
    }
    return out;
  }

 private:
  Sketch flatten_diagram(const std::string& name) {
    if (std::find(stack_.begin(), stack_.end(), name) != stack_.end()) {
      std::string cycle;
      for (const auto& n : stack_) cycle += n + " -> ";
      throw FlattenError(FK::CyclicHierarchy, "cyclic diagram hierarchy: " + cycle + name);
    }
    auto it = h_.diagrams.find(name);
    if (it == h_.diagrams.end()) throw FlattenError(FK::UnresolvedChild, "unknown diagram '" + name + "'");
    stack_.push_back(name);

    const ContextDiagram& d = it->second;
    Sketch result = d.local;
    for (const auto& ref : d.children) {
      if (!result.find_node(ref.box)) {
        throw FlattenError(FK::UnresolvedChild,
                           "diagram '" + name + "' refines '" + ref.box + "', which is not one of its nodes");
      }
      auto child_it = h_.diagrams.find(ref.child);
      if (child_it == h_.diagrams.end()) {
        throw FlattenError(FK::UnresolvedChild, "box '" + ref.box + "' refers to unknown diagram '" + ref.child + "'");
      }
      Sketch child = flatten_diagram(ref.child);
      const std::size_t constraint_count = result.constraints.size();
      const std::size_t rule_count = result.fuzzy_rules.size();
      reanchor_arrows(result, ref.box, child_it->second, child);
      absorb(result, child);
      reanchor_references(result, constraint_count, rule_count, ref.box, child_it->second);
    }

    stack_.pop_back();
    return result;
  }

  NodeId default_anchor(const NodeId& box, const ContextDiagram& child, const std::string& what) const {
    if (child.interface.size() == 1) return resolve_interface(child, child.interface.front(), 0);
    throw FlattenError(FK::InterfaceMismatch,
                       what + " refers to box '" + box + "' but '" + child.name + "' has no unique interface node");
  }

  // An interface node that is itself refined stands for the grandchild's
  // sole interface node.
  NodeId resolve_interface(const ContextDiagram& d, const NodeId& n, std::size_t depth) const {
    if (depth > h_.diagrams.size()) throw FlattenError(FK::CyclicHierarchy, "cyclic refinement of '" + n + "'");
    for (const auto& ref : d.children) {
      if (ref.box != n) continue;
      auto it = h_.diagrams.find(ref.child);
      if (it == h_.diagrams.end()) break;
      if (it->second.interface.size() != 1) {
        throw FlattenError(FK::InterfaceMismatch, "interface node '" + n + "' of '" + d.name + "' is refined by '" +
                                                      ref.child + "', which has no unique interface node");
      }
      return resolve_interface(it->second, it->second.interface.front(), depth + 1);
    }
    return n;
  }

  // Moves arrow endpoints off the box and drops the box node.
  void reanchor_arrows(Sketch& s, const NodeId& box, const ContextDiagram& child_diagram, const Sketch& child) const {
    const auto& iface = child_diagram.interface;
    for (const auto& n : iface) {
      if (!child.find_node(resolve_interface(child_diagram, n, 0))) {
        throw FlattenError(FK::InterfaceMismatch, "interface node '" + n + "' of '" + child_diagram.name + "' is not declared");
      }
    }
    for (auto& a : s.arrows) {
      if (a.src != box && a.dst != box) continue;
      NodeId anchor;
      if (auto it = child_diagram.anchors.find(a.id); it != child_diagram.anchors.end()) {
        if (std::find(iface.begin(), iface.end(), it->second) == iface.end()) {
          throw FlattenError(FK::InterfaceMismatch, "anchor '" + it->second + "' for arrow '" + a.id +
                                                        "' is not an interface node of '" + child_diagram.name + "'");
        }
        anchor = resolve_interface(child_diagram, it->second, 0);
      } else {
        anchor = default_anchor(box, child_diagram, "arrow '" + a.id + "'");
      }
      if (a.src == box) a.src = anchor;
      if (a.dst == box) a.dst = anchor;
    }
    s.nodes.erase(std::remove_if(s.nodes.begin(), s.nodes.end(), [&](const Node& n) { return n.id == box; }),
                  s.nodes.end());
  }

  // Rewrites node references to the box in the first `constraint_count`
  // constraints and `rule_count` rules (those that came from the parent).
  void reanchor_references(Sketch& s, std::size_t constraint_count, std::size_t rule_count, const NodeId& box,
                           const ContextDiagram& child_diagram) const {
    auto fix_node = [&](NodeId& n, const std::string& what) {
      if (n == box) n = default_anchor(box, child_diagram, what);
    };
    auto fix_path = [&](Path& p, const std::string& what) {
      if (p.start != box) return;
      const Arrow* first = p.arrows.empty() ? nullptr : s.find_arrow(p.arrows.front());
      p.start = first ? first->src : default_anchor(box, child_diagram, what);
    };

    for (std::size_t i = 0; i < constraint_count; ++i) {
      Constraint& c = s.constraints[i];
      const std::string what = "constraint '" + label_of(c) + "'";
      if (auto* cc = std::get_if<CommutativityConstraint>(&c)) {
        fix_path(cc->left, what);
        fix_path(cc->right, what);
      } else if (auto* lc = std::get_if<FiniteLimitConstraint>(&c)) {
        fix_node(lc->apex, what);
        for (auto& n : lc->base_nodes) fix_node(n, what);
        if (auto leg = lc->legs.find(box); leg != lc->legs.end()) {
          ArrowId arrow = leg->second;
          lc->legs.erase(leg);
          lc->legs.emplace(default_anchor(box, child_diagram, what), arrow);
        }
      } else if (auto* pc = std::get_if<CoproductConstraint>(&c)) {
        fix_node(pc->apex, what);
        for (auto& n : pc->summands) fix_node(n, what);
      }
    }
    for (std::size_t i = 0; i < rule_count; ++i) {
      HornClause& rule = s.fuzzy_rules[i];
      for (auto& v : rule.vars) fix_node(v.node, "rule '" + rule.name + "'");
    }
  }

  // Union of `from` into `into`, identifying equal names.
  static void absorb(Sketch& into, const Sketch& from) {
    for (const auto& n : from.nodes) {
      if (const Node* existing = into.find_node(n.id)) {
        if (existing->kind != n.kind) {
          throw FlattenError(FK::ConflictingDefinition, "node '" + n.id + "' is declared with different kinds");
        }
      } else {
        into.nodes.push_back(n);
      }
    }
    for (const auto& a : from.arrows) {
      if (const Arrow* existing = into.find_arrow(a.id)) {
        if (!(*existing == a)) {
          throw FlattenError(FK::ConflictingDefinition, "arrow '" + a.id + "' is declared with different endpoints");
        }
      } else {
        into.arrows.push_back(a);
      }
    }
    for (const auto& c : from.constraints) {
      if (const Constraint* existing = into.find_constraint(label_of(c))) {
        if (!(*existing == c)) {
          throw FlattenError(FK::ConflictingDefinition, "constraint '" + label_of(c) + "' is declared twice differently");
        }
      } else {
        into.constraints.push_back(c);
      }
    }
    for (const auto& r : from.fuzzy_rules) {
      if (const HornClause* existing = into.find_rule(r.name)) {
        if (!(*existing == r)) {
          throw FlattenError(FK::ConflictingDefinition, "rule '" + r.name + "' is declared twice differently");
        }
      } else {
        into.fuzzy_rules.push_back(r);
      }
    }
  }

  const Hierarchy& h_;
  std::vector<std::string> stack_;
};

}  // namespace

Sketch flatten(const Hierarchy& h) { return Flattener(h).run(); }

Hierarchy wrap(const Sketch& s) {
  Hierarchy h;
  h.root = s.name;
  h.diagrams.emplace(s.name, ContextDiagram{s.name, s, {}, std::nullopt, {}, {}});
  return h;
}

}  // namespace sketchkit
