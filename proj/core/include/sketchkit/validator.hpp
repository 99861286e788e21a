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

#include <cstddef>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sketchkit/instance.hpp"
#include "sketchkit/sketch.hpp"

namespace sketchkit {

enum class ViolationKind { CommutationFailure, LimitFailure, CoproductFailure, ConeFailure, TotalityFailure };

std::string_view to_string(ViolationKind kind);

struct Violation {
  std::string label;  // constraint label, or the arrow name for totality failures
  ViolationKind kind;
  std::string witness;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Witnesses dropped for one constraint once the cap was reached.
struct Suppressed {
  std::string label;
  std::size_t count = 0;

  friend bool operator==(const Suppressed&, const Suppressed&) = default;
};

struct ViolationReport {
  std::vector<Violation> violations;
  std::vector<Suppressed> suppressed;

  bool ok() const { return violations.empty(); }

  friend bool operator==(const ViolationReport&, const ViolationReport&) = default;
};

inline constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

/// Assignment of one atom per base node, compatible with every base arrow.
using MatchingFamily = std::map<NodeId, Atom>;

std::vector<Violation> check_commutativity(const Instance& i, const CommutativityConstraint& c,
                                           std::size_t max_witnesses = kUnlimited);

/// All matching families of the base diagram of `c`. The empty base yields
/// exactly one (empty) family.
std::set<MatchingFamily> compute_canonical_limit(const Instance& i, const Sketch& s, const FiniteLimitConstraint& c);

/// Cone commutativity plus bijectivity of the comparison map
/// apex -> compute_canonical_limit.
std::vector<Violation> check_limit(const Instance& i, const Sketch& s, const FiniteLimitConstraint& c,
                                   std::size_t max_witnesses = kUnlimited);

/// Injections injective, images pairwise disjoint, union equal to the apex.
std::vector<Violation> check_coproduct(const Instance& i, const CoproductConstraint& c,
                                       std::size_t max_witnesses = kUnlimited);

struct ValidateOptions {
  std::size_t max_witnesses = 20;
  bool parallel = false;
};

/// Totality failures followed by per-constraint failures in constraint
/// order. A constraint that uses an arrow with a totality defect is not
/// evaluated; the totality failure already makes the instance invalid.
ViolationReport validate(const Instance& i, const Sketch& s, const ValidateOptions& options = {});

/// `label: Kind: witness` lines, then one line per suppression.
std::string format_report_text(const ViolationReport& report);

/// One JSON object per line: {"label","kind","witness"} for violations and
/// {"label","kind":"Suppressed","count"} for suppressions.
std::string format_report_machine(const ViolationReport& report);

}  // namespace sketchkit
