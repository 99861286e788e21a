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
#include <string>
#include <vector>

#include "sketchkit/sketch.hpp"

namespace sketchkit {

/// Structure-preserving map between sketches. Arrows may map to composite
/// paths (including identities).
struct SketchMorphism {
  std::map<NodeId, NodeId> node_map;
  std::map<ArrowId, Path> arrow_map;

  friend bool operator==(const SketchMorphism&, const SketchMorphism&) = default;
};

SketchMorphism identity_morphism(const Sketch& s);

/// Image of a path: the concatenation of the arrow images, starting at the
/// image of the start node. nullopt if some element is unmapped.
std::optional<Path> map_path(const SketchMorphism& m, const Path& p);

/// Image of a constraint under `m`, keeping its label. nullopt if some
/// element is unmapped, or if a limit/coproduct arrow maps to something
/// other than a single arrow (those have no syntactic image).
std::optional<Constraint> map_constraint(const SketchMorphism& m, const Constraint& c);

/// Image of a clause: variable types and arrow predicates renamed. nullopt
/// when a used arrow does not map to a single arrow.
std::optional<HornClause> map_clause(const SketchMorphism& m, const HornClause& c);

/// `second` after `first`.
SketchMorphism compose(const SketchMorphism& first, const SketchMorphism& second);

struct MorphismError {
  enum class Kind { UnmappedNode, UnmappedArrow, UnknownTarget, BrokenPath, EndpointMismatch, ConstraintNotEntailed };

  Kind kind;
  std::string element;
  std::string message;
};

std::string_view to_string(MorphismError::Kind kind);

/// Empty iff `m` is total on `src`, every image exists in `dst`, arrow
/// images run between the images of their endpoints, and every constraint of
/// `src` maps to an entailed constraint of `dst`.
///
/// Entailment is syntactic: `dst` holds an equivalent constraint (see
/// equivalent_constraints), or the image is a commutativity whose two paths
/// coincide.
std::vector<MorphismError> check_morphism(const SketchMorphism& m, const Sketch& src, const Sketch& dst);

}  // namespace sketchkit
