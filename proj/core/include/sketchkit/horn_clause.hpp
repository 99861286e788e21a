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

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "sketchkit/rational.hpp"

namespace sketchkit {

struct VarDecl {
  std::string name;
  std::string node;

  friend bool operator==(const VarDecl&, const VarDecl&) = default;
};

/// `arrow(in, out)`: the arrow maps `in` to `out`.
struct ArrowAtom {
  std::string arrow;
  std::string in;
  std::string out;

  friend bool operator==(const ArrowAtom&, const ArrowAtom&) = default;
};

/// `lhs = rhs` between two variables.
struct EqAtom {
  std::string lhs;
  std::string rhs;

  friend bool operator==(const EqAtom&, const EqAtom&) = default;
};

/// `var = "literal"`.
struct ConstAtom {
  std::string var;
  std::string literal;

  friend bool operator==(const ConstAtom&, const ConstAtom&) = default;
};

using ClauseAtom = std::variant<ArrowAtom, EqAtom, ConstAtom>;

/// Definite clause over arrow predicates, annotated with the support and
/// confidence last measured for it. Attached to a sketch it acts as a fuzzy
/// predicate: soft knowledge that is not (yet) a hard constraint.
struct HornClause {
  std::string name;
  std::vector<VarDecl> vars;
  std::vector<ClauseAtom> body;
  ClauseAtom head;
  Rational confidence{1};
  std::int64_t support = 0;

  const VarDecl* find_var(const std::string& var) const {
    for (const auto& v : vars) {
      if (v.name == var) return &v;
    }
    return nullptr;
  }

  /// Confidence exactly one, measured over at least one grounding.
  bool promotable() const { return confidence.is_one() && support > 0; }

  friend bool operator==(const HornClause&, const HornClause&) = default;
};

}  // namespace sketchkit
