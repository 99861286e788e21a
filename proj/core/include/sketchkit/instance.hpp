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
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sketchkit/sketch.hpp"

namespace sketchkit {

/// Opaque value token; compared by exact equality.
using Atom = std::string;

/// Nonempty and free of whitespace.
bool is_valid_atom(std::string_view atom);

/// The relation an instance assigns to an arrow. Well-typed instances hold a
/// total function here; the relation form lets ill-typed input (an atom with
/// two images) be represented and reported.
class ArrowMap {
 public:
  ArrowMap() = default;
  ArrowMap(std::initializer_list<std::pair<const Atom, Atom>> pairs) {
    for (const auto& [x, y] : pairs) insert(x, y);
  }

  void insert(const Atom& x, const Atom& y) { pairs_.emplace(x, y); }

  /// First image of `x`, or nullptr when `x` has none.
  const Atom* image(const Atom& x) const {
    auto it = pairs_.lower_bound({x, Atom{}});
    return it != pairs_.end() && it->first == x ? &it->second : nullptr;
  }

  std::size_t image_count(const Atom& x) const;

  auto begin() const { return pairs_.begin(); }
  auto end() const { return pairs_.end(); }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

  friend bool operator==(const ArrowMap&, const ArrowMap&) = default;

 private:
  std::set<std::pair<Atom, Atom>> pairs_;
};

/// A database state: a finite set per node and a function per arrow.
struct Instance {
  std::string name;
  std::string sketch_name;
  std::map<NodeId, std::set<Atom>> carriers;
  std::map<ArrowId, ArrowMap> maps;

  /// Carrier of `node`; empty if the instance has no entry for it.
  const std::set<Atom>& carrier(const NodeId& node) const;
  const ArrowMap& map(const ArrowId& arrow) const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Instance over `s` with an empty carrier for every node and an empty map
/// for every arrow.
Instance empty_instance(const Sketch& s, std::string name = "I");

class AtomNotInCarrier : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Applies the arrow maps of `p` in order to `x`; the identity path returns
/// `x`. Throws AtomNotInCarrier when `x` is not in the start carrier or an
/// intermediate atom has no image.
Atom eval_path(const Instance& i, const Path& p, const Atom& x);

struct TotalityError {
  enum class Kind { MissingImage, ForeignImage, ForeignDomain, DuplicateDefinition, UnknownSymbol };

  Kind kind;
  std::string element;  // arrow or node name
  Atom atom;            // offending atom, empty for UnknownSymbol
  std::string message;
};

std::string_view to_string(TotalityError::Kind kind);

/// Empty iff every arrow of `s` is a total function carrier(src) ->
/// carrier(dst) in `i` and `i` names nothing outside `s`.
std::vector<TotalityError> check_totality(const Instance& i, const Sketch& s);

/// Pulls `i` (an instance of `dst`) back along a morphism whose node map and
/// arrow map are given: node n gets carrier(node_map[n]); arrow f gets the
/// composite of the image path.
Instance restrict_instance(const Instance& i, const Sketch& src,
                           const std::map<NodeId, NodeId>& node_map, const std::map<ArrowId, Path>& arrow_map);

}  // namespace sketchkit
