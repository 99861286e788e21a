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

#include "sketchkit/instance.hpp"

#include <algorithm>
#include <cctype>

namespace sketchkit {

bool is_valid_atom(std::string_view atom) {
  return !atom.empty() &&
         std::none_of(atom.begin(), atom.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

std::size_t ArrowMap::image_count(const Atom& x) const {
  std::size_t n = 0;
  for (auto it = pairs_.lower_bound({x, Atom{}}); it != pairs_.end() && it->first == x; ++it) ++n;
  return n;
}

const std::set<Atom>& Instance::carrier(const NodeId& node) const {
  static const std::set<Atom> kEmpty;
  auto it = carriers.find(node);
  return it == carriers.end() ? kEmpty : it->second;
}

const ArrowMap& Instance::map(const ArrowId& arrow) const {
  static const ArrowMap kEmpty;
  auto it = maps.find(arrow);
  return it == maps.end() ? kEmpty : it->second;
}

Instance empty_instance(const Sketch& s, std::string name) {
  Instance i;
  i.name = std::move(name);
  i.sketch_name = s.name;
  for (const auto& n : s.nodes) i.carriers[n.id];
  for (const auto& a : s.arrows) i.maps[a.id];
  return i;
}

Atom eval_path(const Instance& i, const Path& p, const Atom& x) {
  if (!i.carrier(p.start).count(x)) {
    throw AtomNotInCarrier("atom '" + x + "' is not in the carrier of '" + p.start + "'");
  }
  Atom at = x;
  for (const auto& f : p.arrows) {
    const Atom* next = i.map(f).image(at);
    if (next == nullptr) throw AtomNotInCarrier("arrow '" + f + "' has no image for atom '" + at + "'");
    at = *next;
  }
  return at;
}

std::string_view to_string(TotalityError::Kind kind) {
  using K = TotalityError::Kind;
  switch (kind) {
    case K::MissingImage: return "MissingImage";
    case K::ForeignImage: return "ForeignImage";
    case K::ForeignDomain: return "ForeignDomain";
    case K::DuplicateDefinition: return "DuplicateDefinition";
    case K::UnknownSymbol: return "UnknownSymbol";
  }
  return "Unknown";
}

std::vector<TotalityError> check_totality(const Instance& i, const Sketch& s) {
  using K = TotalityError::Kind;
  std::vector<TotalityError> errors;
  for (const auto& [node, atoms] : i.carriers) {
    if (!s.find_node(node)) errors.push_back({K::UnknownSymbol, node, {}, "carrier for unknown node '" + node + "'"});
  }
  for (const auto& [arrow, pairs] : i.maps) {
    if (!s.find_arrow(arrow)) errors.push_back({K::UnknownSymbol, arrow, {}, "map for unknown arrow '" + arrow + "'"});
  }
  for (const auto& a : s.arrows) {
    const auto& domain = i.carrier(a.src);
    const auto& codomain = i.carrier(a.dst);
    const ArrowMap& m = i.map(a.id);
    for (const auto& x : domain) {
      const std::size_t n = m.image_count(x);
      if (n == 0) {
        errors.push_back({K::MissingImage, a.id, x, a.id + "(" + x + ") is undefined"});
      } else if (n > 1) {
        errors.push_back({K::DuplicateDefinition, a.id, x, a.id + "(" + x + ") has " + std::to_string(n) + " images"});
      }
    }
    for (const auto& [x, y] : m) {
      if (!domain.count(x)) {
        errors.push_back({K::ForeignDomain, a.id, x, a.id + " maps '" + x + "', which is not in '" + a.src + "'"});
      }
      if (!codomain.count(y)) {
        errors.push_back({K::ForeignImage, a.id, y, a.id + "(" + x + ") = '" + y + "', which is not in '" + a.dst + "'"});
      }
    }
  }
  return errors;
}

Instance restrict_instance(const Instance& i, const Sketch& src,
                           const std::map<NodeId, NodeId>& node_map, const std::map<ArrowId, Path>& arrow_map) {
  Instance out;
  out.name = i.name;
  out.sketch_name = src.name;
  for (const auto& n : src.nodes) {
    auto it = node_map.find(n.id);
    out.carriers[n.id] = it == node_map.end() ? std::set<Atom>{} : i.carrier(it->second);
  }
  for (const auto& a : src.arrows) {
    ArrowMap& m = out.maps[a.id];
    auto it = arrow_map.find(a.id);
    if (it == arrow_map.end()) continue;
    for (const auto& x : out.carriers[a.src]) {
      try {
        m.insert(x, eval_path(i, it->second, x));
      } catch (const AtomNotInCarrier&) {
        // Left undefined; check_totality on the result reports it.
      }
    }
  }
  return out;
}

}  // namespace sketchkit
