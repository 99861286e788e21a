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

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sketchkit/horn_clause.hpp"

namespace sketchkit {

using NodeId = std::string;
using ArrowId = std::string;

/// `[A-Za-z_][A-Za-z0-9_]*`
bool is_identifier(std::string_view name);

enum class NodeKind { Entity, Attribute };

struct Node {
  NodeId id;
  NodeKind kind = NodeKind::Entity;

  friend bool operator==(const Node&, const Node&) = default;
};

struct Arrow {
  ArrowId id;
  NodeId src;
  NodeId dst;

  friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// A chain of arrows starting at `start`. The empty chain is the identity.
struct Path {
  NodeId start;
  std::vector<ArrowId> arrows;

  bool is_identity() const { return arrows.empty(); }

  static Path identity(NodeId at) { return Path{std::move(at), {}}; }

  friend bool operator==(const Path&, const Path&) = default;
};

struct CommutativityConstraint {
  std::string label;
  Path left;
  Path right;

  friend bool operator==(const CommutativityConstraint&, const CommutativityConstraint&) = default;
};

/// Surface form a limit was written in. Presentational only; ignored by
/// validation and by constraint equivalence.
enum class LimitForm { General, Terminal, Product, Pullback, Equalizer };

/// `apex` is the limit of the finite diagram (base_nodes, base_arrows).
///
/// `legs` may omit a base node that is reachable from a legged node along
/// base arrows; its leg is then the composite through those arrows. Every
/// base arrow m -> n imposes legs[m];f = legs[n] on the cone.
struct FiniteLimitConstraint {
  std::string label;
  std::vector<NodeId> base_nodes;
  std::vector<ArrowId> base_arrows;
  NodeId apex;
  std::map<NodeId, ArrowId> legs;
  LimitForm form = LimitForm::General;

  friend bool operator==(const FiniteLimitConstraint&, const FiniteLimitConstraint&) = default;
};

/// `apex` is the disjoint union of `summands` via `injections` (one per
/// summand, same order). No summands means `apex` must be empty.
struct CoproductConstraint {
  std::string label;
  std::vector<NodeId> summands;
  NodeId apex;
  std::vector<ArrowId> injections;

  friend bool operator==(const CoproductConstraint&, const CoproductConstraint&) = default;
};

using Constraint = std::variant<CommutativityConstraint, FiniteLimitConstraint, CoproductConstraint>;

const std::string& label_of(const Constraint& c);
void set_label(Constraint& c, std::string label);

/// Same constraint up to label, surface form, orientation of a commutativity
/// pair, and ordering of limit base sets.
bool equivalent_constraints(const Constraint& a, const Constraint& b);

struct Sketch {
  std::string name;
  std::vector<Node> nodes;
  std::vector<Arrow> arrows;
  std::vector<Constraint> constraints;
  std::vector<HornClause> fuzzy_rules;

  const Node* find_node(std::string_view id) const;
  const Arrow* find_arrow(std::string_view id) const;
  const Constraint* find_constraint(std::string_view label) const;
  HornClause* find_rule(std::string_view rule_name);
  const HornClause* find_rule(std::string_view rule_name) const;

  friend bool operator==(const Sketch&, const Sketch&) = default;
};

/// Equality ignoring the declaration order of nodes and arrows. Constraint
/// and rule order is significant.
bool structurally_equal(const Sketch& a, const Sketch& b);

class NonComposable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// End node of `p`; throws NonComposable if an arrow is unknown or the chain
/// breaks.
NodeId path_end(const Sketch& s, const Path& p);

/// Concatenation of `p` then `q`.
Path compose_paths(const Sketch& s, const Path& p, const Path& q);

/// Which sketch element a diagnostic refers to.
enum class ElementKind { Sketch, Node, Arrow, Constraint, Rule };

struct ElementRef {
  ElementKind kind = ElementKind::Sketch;
  std::string name;

  friend bool operator==(const ElementRef&, const ElementRef&) = default;
};

struct WellformednessError {
  enum class Kind {
    InvalidIdentifier,
    DuplicateNode,
    DuplicateArrow,
    DuplicateLabel,
    DuplicateRule,
    UnknownNode,
    UnknownArrow,
    BrokenPath,
    PathEndpointMismatch,
    ApexInBase,
    DuplicateBaseNode,
    BaseArrowOutsideBase,
    LegMismatch,
    MissingLeg,
    ApexInSummands,
    InjectionMismatch,
    UnknownVariable,
    VariableTypeMismatch,
  };

  Kind kind;
  ElementRef element;
  std::string message;
};

std::string_view to_string(WellformednessError::Kind kind);

std::vector<WellformednessError> check_wellformed(const Sketch& s);

/// Leg arrows of a limit resolved to paths from the apex, one per base node.
/// Nodes without an explicit leg get the composite along the first base arrow
/// (breadth-first) reaching them. Base nodes left unreachable are absent.
std::map<NodeId, Path> resolve_legs(const Sketch& s, const FiniteLimitConstraint& c);

}  // namespace sketchkit
