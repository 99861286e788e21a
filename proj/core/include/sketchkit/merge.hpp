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
#include <stdexcept>
#include <string>
#include <vector>

#include "sketchkit/horn.hpp"
#include "sketchkit/morphism.hpp"
#include "sketchkit/validator.hpp"

namespace sketchkit {

/// Two sketches glued along a shared one.
struct MergeSpan {
  Sketch shared;
  Sketch left;
  Sketch right;
  SketchMorphism into_left;
  SketchMorphism into_right;
};

class MergeError : public std::runtime_error {
 public:
  enum class Kind { MorphismInvalid, CompositePathInSpan, IllFormedResult };

  MergeError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

enum class MergeSide { Left, Right };

std::string_view to_string(MergeSide side);

/// Elements of both sides that became one element of the merged sketch.
struct Identification {
  std::string kind;  // "node" or "arrow"
  std::string merged;
  std::vector<std::string> left;
  std::vector<std::string> right;
};

struct Renaming {
  MergeSide side;
  std::string kind;  // "node", "arrow", "constraint" or "rule"
  std::string from;
  std::string to;
};

/// A constraint dropped because an equivalent one was already merged.
struct ConstraintDedup {
  MergeSide side;
  std::string label;
  std::string kept;
};

struct MergeResult {
  Sketch merged;
  SketchMorphism into_merged_left;
  SketchMorphism into_merged_right;
  std::vector<Identification> identifications;
  std::vector<Renaming> renamings;
  std::vector<ConstraintDedup> constraint_dedups;
  std::vector<DedupDecision> rule_dedups;
};

/// Pushout of the span. Elements of left and right are identified exactly
/// when the shared sketch relates them; left names win and clashing right
/// names get a `_2`, `_3`, ... suffix. Constraints and fuzzy rules of both
/// sides are carried over and deduplicated.
///
/// Both span morphisms must pass check_morphism and send every arrow to a
/// single arrow.
MergeResult pushout_merge(const MergeSpan& span);

std::string format_merge_report(const MergeResult& r);

struct RuleOutcome {
  std::string rule;
  InjectOutcome outcome;
  std::string detail;
};

struct TheoryMergeResult {
  Sketch sketch;
  std::vector<RuleOutcome> outcomes;
  std::vector<DedupDecision> dedups;
};

/// deduplicate_rules(rules1 ++ rules2), then inject_clause each survivor.
/// Throws ClauseError if a rule does not type-check against `s`.
TheoryMergeResult merge_theories(const Sketch& s, const std::vector<HornClause>& rules1,
                                 const std::vector<HornClause>& rules2, const Rational& threshold);

struct Finding {
  enum class Kind { DuplicateConstraint, DuplicateLabel, Unsatisfiable, ContradictedRule };

  Kind kind;
  std::string message;
};

std::string_view to_string(Finding::Kind kind);

struct RuleConfidence {
  std::string rule;
  ClauseEvaluation evaluation;
};

struct ConsistencyReport {
  std::vector<Finding> findings;
  std::optional<ViolationReport> validation;
  std::vector<RuleConfidence> rules;

  bool clean() const { return findings.empty() && (!validation || validation->ok()); }
};

/// Structural checks that are decidable on the sketch alone:
///   - equivalent constraints and repeated labels;
///   - a terminal apex that is also a coproduct of no summands or of two or
///     more terminal summands (no model exists);
///   - a fuzzy rule that translates to a hard commutativity of the sketch
///     but was measured below confidence 1 on nonzero support.
/// With an instance, the validation report and every fuzzy rule's measured
/// confidence are added.
ConsistencyReport consistency_report(const Sketch& s, const Instance* i = nullptr);

std::string format_consistency_report(const ConsistencyReport& r);

}  // namespace sketchkit
