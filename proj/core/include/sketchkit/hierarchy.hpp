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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sketchkit/sketch.hpp"

namespace sketchkit {

struct BoxRefinement {
  NodeId box;
  std::string child;

  friend bool operator==(const BoxRefinement&, const BoxRefinement&) = default;
};

/// One diagram of a hierarchical sketch. A box of the local fragment
/// may be refined by a child diagram; on flattening the box disappears and
/// arrows incident to it are re-anchored to one of the child's interface
/// nodes.
///
/// Anchoring rule for an arrow incident to a refined box: the child's explicit
/// `anchors` entry for that arrow if present, otherwise the sole interface
/// node. Anything else is an InterfaceMismatch.
struct ContextDiagram {
  std::string name;
  Sketch local;
  std::vector<BoxRefinement> children;
  std::optional<std::string> parent;
  std::vector<NodeId> interface;
  std::map<ArrowId, NodeId> anchors;

  friend bool operator==(const ContextDiagram&, const ContextDiagram&) = default;
};

struct Hierarchy {
  std::string root;
  std::map<std::string, ContextDiagram> diagrams;
};

class FlattenError : public std::runtime_error {
 public:
  enum class Kind { CyclicHierarchy, UnresolvedChild, InterfaceMismatch, ConflictingDefinition };

  FlattenError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Single sketch named after the root diagram with every refined box
/// replaced by the (recursively flattened) child content. Elements declared
/// in several fragments under the same name are identified; their
/// definitions must agree.
Sketch flatten(const Hierarchy& h);

/// Wraps a flat sketch as a one-diagram hierarchy.
Hierarchy wrap(const Sketch& s);

}  // namespace sketchkit
