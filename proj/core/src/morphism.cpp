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

#include "sketchkit/morphism.hpp"

#include <algorithm>

namespace sketchkit {

SketchMorphism identity_morphism(const Sketch& s) {
  SketchMorphism m;
  for (const auto& n : s.nodes) m.node_map[n.id] = n.id;
  for (const auto& a : s.arrows) m.arrow_map[a.id] = Path{a.src, {a.id}};
  return m;
}

std::optional<Path> map_path(const SketchMorphism& m, const Path& p) {
  auto start = m.node_map.find(p.start);
  if (start == m.node_map.end()) return std::nullopt;
  Path out{start->second, {}};
  for (const auto& f : p.arrows) {
    auto it = m.arrow_map.find(f);
    if (it == m.arrow_map.end()) return std::nullopt;
    out.arrows.insert(out.arrows.end(), it->second.arrows.begin(), it->second.arrows.end());
  }
  return out;
}

namespace {

std::optional<NodeId> map_node(const SketchMorphism& m, const NodeId& n) {
  auto it = m.node_map.find(n);
  if (it == m.node_map.end()) return std::nullopt;
  return it->second;
}

std::optional<ArrowId> map_single(const SketchMorphism& m, const ArrowId& f) {
  auto it = m.arrow_map.find(f);
  if (it == m.arrow_map.end() || it->second.arrows.size() != 1) return std::nullopt;
  return it->second.arrows.front();
}

struct ConstraintMapper {
  const SketchMorphism& m;

  std::optional<Constraint> operator()(const CommutativityConstraint& c) const {
    auto l = map_path(m, c.left);
    auto r = map_path(m, c.right);
    if (!l || !r) return std::nullopt;
    return CommutativityConstraint{c.label, *l, *r};
  }

  std::optional<Constraint> operator()(const FiniteLimitConstraint& c) const {
    FiniteLimitConstraint out;
    out.label = c.label;
    out.form = c.form;
    auto apex = map_node(m, c.apex);
    if (!apex) return std::nullopt;
    out.apex = *apex;
    for (const auto& n : c.base_nodes) {
      auto img = map_node(m, n);
      if (!img) return std::nullopt;
      out.base_nodes.push_back(*img);
    }
    for (const auto& f : c.base_arrows) {
      auto img = map_single(m, f);
      if (!img) return std::nullopt;
      out.base_arrows.push_back(*img);
    }
    for (const auto& [n, leg] : c.legs) {
      auto node = map_node(m, n);
      auto arrow = map_single(m, leg);
      if (!node || !arrow) return std::nullopt;
      out.legs[*node] = *arrow;
    }
    return out;
  }

  std::optional<Constraint> operator()(const CoproductConstraint& c) const {
    CoproductConstraint out;
    out.label = c.label;
    auto apex = map_node(m, c.apex);
    if (!apex) return std::nullopt;
    out.apex = *apex;
    for (const auto& n : c.summands) {
      auto img = map_node(m, n);
      if (!img) return std::nullopt;
      out.summands.push_back(*img);
    }
    for (const auto& f : c.injections) {
      auto img = map_single(m, f);
      if (!img) return std::nullopt;
      out.injections.push_back(*img);
    }
    return out;
  }
};

}  // namespace

std::optional<Constraint> map_constraint(const SketchMorphism& m, const Constraint& c) {
  return std::visit(ConstraintMapper{m}, c);
}

std::optional<HornClause> map_clause(const SketchMorphism& m, const HornClause& c) {
  HornClause out = c;
  for (auto& v : out.vars) {
    auto img = map_node(m, v.node);
    if (!img) return std::nullopt;
    v.node = *img;
  }
  auto map_atom = [&](ClauseAtom& atom) -> bool {
    auto* a = std::get_if<ArrowAtom>(&atom);
    if (a == nullptr) return true;
    auto it = m.arrow_map.find(a->arrow);
    if (it == m.arrow_map.end()) return false;
    if (it->second.arrows.empty()) {
      atom = EqAtom{a->in, a->out};
      return true;
    }
    if (it->second.arrows.size() != 1) return false;
    a->arrow = it->second.arrows.front();
    return true;
  };
  for (auto& atom : out.body) {
    if (!map_atom(atom)) return std::nullopt;
  }
  if (!map_atom(out.head)) return std::nullopt;
  return out;
}

SketchMorphism compose(const SketchMorphism& first, const SketchMorphism& second) {
  SketchMorphism out;
  for (const auto& [n, img] : first.node_map) {
    if (auto it = second.node_map.find(img); it != second.node_map.end()) out.node_map[n] = it->second;
  }
  for (const auto& [f, path] : first.arrow_map) {
    if (auto img = map_path(second, path)) out.arrow_map[f] = *img;
  }
  return out;
}

std::string_view to_string(MorphismError::Kind kind) {
  using K = MorphismError::Kind;
  switch (kind) {
    case K::UnmappedNode: return "UnmappedNode";
    case K::UnmappedArrow: return "UnmappedArrow";
    case K::UnknownTarget: return "UnknownTarget";
    case K::BrokenPath: return "BrokenPath";
    case K::EndpointMismatch: return "EndpointMismatch";
    case K::ConstraintNotEntailed: return "ConstraintNotEntailed";
  }
  return "Unknown";
}

std::vector<MorphismError> check_morphism(const SketchMorphism& m, const Sketch& src, const Sketch& dst) {
  using K = MorphismError::Kind;
  std::vector<MorphismError> errors;

  for (const auto& n : src.nodes) {
    auto img = map_node(m, n.id);
    if (!img) {
      errors.push_back({K::UnmappedNode, n.id, "node '" + n.id + "' has no image"});
    } else if (!dst.find_node(*img)) {
      errors.push_back({K::UnknownTarget, n.id, "node '" + n.id + "' maps to unknown node '" + *img + "'"});
    }
  }

  for (const auto& a : src.arrows) {
    auto it = m.arrow_map.find(a.id);
    if (it == m.arrow_map.end()) {
      errors.push_back({K::UnmappedArrow, a.id, "arrow '" + a.id + "' has no image"});
      continue;
    }
    const Path& img = it->second;
    auto unknown = std::find_if(img.arrows.begin(), img.arrows.end(), [&](const ArrowId& f) { return !dst.find_arrow(f); });
    if (unknown != img.arrows.end()) {
      errors.push_back({K::UnknownTarget, a.id, "arrow '" + a.id + "' maps through unknown arrow '" + *unknown + "'"});
      continue;
    }
    if (!dst.find_node(img.start)) {
      errors.push_back({K::UnknownTarget, a.id, "image of arrow '" + a.id + "' starts at unknown node '" + img.start + "'"});
      continue;
    }
    NodeId end;
    try {
      end = path_end(dst, img);
    } catch (const NonComposable& e) {
      errors.push_back({K::BrokenPath, a.id, "image of arrow '" + a.id + "' is not a path: " + e.what()});
      continue;
    }
    auto src_img = map_node(m, a.src);
    auto dst_img = map_node(m, a.dst);
    if (!src_img || !dst_img) continue;  // already reported as UnmappedNode
    if (img.start != *src_img || end != *dst_img) {
      errors.push_back({K::EndpointMismatch, a.id,
                        "arrow '" + a.id + "': " + a.src + " -> " + a.dst + " must map to a path " + *src_img + " -> " +
                            *dst_img + ", got " + img.start + " -> " + end});
    }
  }

  for (const auto& c : src.constraints) {
    const std::string& label = label_of(c);
    auto img = map_constraint(m, c);
    if (!img) {
      errors.push_back({K::ConstraintNotEntailed, label, "constraint '" + label + "' has no syntactic image"});
      continue;
    }
    if (const auto* cc = std::get_if<CommutativityConstraint>(&*img); cc && cc->left == cc->right) continue;
    const bool found = std::any_of(dst.constraints.begin(), dst.constraints.end(),
                                   [&](const Constraint& d) { return equivalent_constraints(*img, d); });
    if (!found) {
      errors.push_back({K::ConstraintNotEntailed, label, "image of constraint '" + label + "' is not present in the target"});
    }
  }
  return errors;
}

}  // namespace sketchkit
