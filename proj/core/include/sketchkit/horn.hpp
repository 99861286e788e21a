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

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "sketchkit/horn_clause.hpp"
#include "sketchkit/instance.hpp"
#include "sketchkit/sketch.hpp"

namespace sketchkit {

/// A clause mentions a node, arrow or variable that does not exist.
class ClauseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ClauseEvaluation {
  std::int64_t support = 0;
  Rational confidence{1};
  bool vacuous = false;  // support 0; confidence is 1 by convention

  friend bool operator==(const ClauseEvaluation&, const ClauseEvaluation&) = default;
};

/// Grounds `c` over every type-respecting assignment of its variables.
/// support counts the groundings satisfying the body, confidence is the
/// fraction of those that also satisfy the head.
ClauseEvaluation eval_clause(const Instance& i, const HornClause& c);

/// Throws ClauseError if `c` does not type-check against `s`.
void check_clause(const Sketch& s, const HornClause& c);

/// The constraint as a clause: variables x (start), l1..ln along the left
/// path and r1..rm along the right, one arrow atom per step, head
/// `end(left) = end(right)`. Named after the constraint label.
HornClause clause_from_commutativity(const Sketch& s, const CommutativityConstraint& c);

struct NotTranslatable {
  std::string reason;
};

/// Inverse of clause_from_commutativity, up to variable names: succeeds iff
/// the head equates the ends of two arrow chains from one shared root
/// variable and the body consists of exactly those chains. The label is the
/// clause name.
std::variant<CommutativityConstraint, NotTranslatable> commutativity_from_clause(const HornClause& c, const Sketch& s);

enum class InjectOutcome { Promoted, AlreadyPresent, StoredFuzzy, Rejected };

std::string_view to_string(InjectOutcome outcome);

struct InjectResult {
  Sketch sketch;
  InjectOutcome outcome = InjectOutcome::Rejected;
  std::string detail;
};

/// Adds `c` to `s`: as a hard commutativity constraint when its confidence
/// is exactly 1 and it translates, otherwise as a fuzzy rule if its
/// confidence reaches `threshold`, otherwise not at all. A stored fuzzy rule
/// replaces one of the same name or an alpha-equivalent one.
InjectResult inject_clause(const Sketch& s, const HornClause& c, const Rational& threshold);

struct RefreshResult {
  Sketch sketch;
  std::vector<std::string> promotion_candidates;  // confidence 1 over nonzero support
  std::vector<std::string> vacuous;
};

/// Re-evaluates every fuzzy rule of `s` against `i`. Nothing is promoted.
RefreshResult update_confidences(const Sketch& s, const Instance& i);

/// Same variables up to a type-preserving bijection, same body (as a set)
/// and same head. Names and annotations are ignored.
bool alpha_equivalent(const HornClause& a, const HornClause& b);

/// True if some injective type-preserving renaming maps the variables of
/// `general` into those of `specific` so that its body lands inside
/// `specific`'s body and its head onto `specific`'s head.
bool subsumes(const HornClause& general, const HornClause& specific);

struct DedupDecision {
  enum class Reason { AlphaEquivalent, Subsumed };

  std::string dropped;
  std::string kept;
  Reason reason;
};

/// Drops later alpha-duplicates and clauses strictly subsumed by another
/// clause of the list. Survivors keep their order.
std::vector<HornClause> deduplicate_rules(const std::vector<HornClause>& rules,
                                          std::vector<DedupDecision>* decisions = nullptr);

}  // namespace sketchkit
