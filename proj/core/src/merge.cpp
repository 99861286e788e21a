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

#include "sketchkit/merge.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace sketchkit {

std::string_view to_string(MergeSide side) { return side == MergeSide::Left ? "left" : "right"; }

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  // The smaller index stays the root so that left elements represent
  // mixed classes.
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

template <typename T>
std::size_t position(const std::vector<T>& items, const std::string& id) {
  auto it = std::find_if(items.begin(), items.end(), [&](const T& x) { return x.id == id; });
  return static_cast<std::size_t>(it - items.begin());
}

// Quotient of left ⊔ right for one kind of element. Index k < left_count
// is the k-th left element, the rest are right elements.
struct Quotient {
  std::size_t left_count = 0;
  std::vector<std::string> ids;       // original id per index
  std::vector<std::string> names;     // merged name per index
  std::vector<std::size_t> classes;   // class roots in first-appearance order

  std::string name(MergeSide side, std::size_t k) const { return names[side == MergeSide::Left ? k : left_count + k]; }
};

template <typename T>
Quotient quotient(const std::vector<T>& left, const std::vector<T>& right,
                  const std::vector<std::pair<std::string, std::string>>& glue, const std::string& kind,
                  MergeResult& out) {
  Quotient q;
  q.left_count = left.size();
  for (const auto& x : left) q.ids.push_back(x.id);
  for (const auto& x : right) q.ids.push_back(x.id);
  UnionFind uf(q.ids.size());
  for (const auto& [l, r] : glue) uf.unite(position(left, l), left.size() + position(right, r));

  std::map<std::size_t, std::vector<std::size_t>> members;
  for (std::size_t k = 0; k < q.ids.size(); ++k) {
    const std::size_t root = uf.find(k);
    if (!members.count(root)) q.classes.push_back(root);
    members[root].push_back(k);
  }

  // Left-rooted classes keep their root's name; names are unique within
  // left, so these never clash. Right-only classes may.
  std::set<std::string> used;
  std::map<std::size_t, std::string> class_name;
  for (std::size_t root : q.classes) {
    if (root < left.size()) {
      class_name[root] = q.ids[root];
      used.insert(q.ids[root]);
    }
  }
  for (std::size_t root : q.classes) {
    if (root < left.size()) continue;
    std::string name = q.ids[root];
    for (int k = 2; used.count(name); ++k) name = q.ids[root] + "_" + std::to_string(k);
    used.insert(name);
    class_name[root] = name;
  }

  q.names.resize(q.ids.size());
  for (std::size_t root : q.classes) {
    const auto& ms = members[root];
    Identification ident{kind, class_name[root], {}, {}};
    for (std::size_t k : ms) {
      q.names[k] = class_name[root];
      (k < left.size() ? ident.left : ident.right).push_back(q.ids[k]);
    }
    if (!ident.left.empty() && !ident.right.empty()) {
      out.identifications.push_back(std::move(ident));
    } else if (ms.size() == 1 && q.ids[root] != class_name[root]) {
      out.renamings.push_back({MergeSide::Right, kind, q.ids[root], class_name[root]});
    } else if (ms.size() > 1) {
      out.identifications.push_back(std::move(ident));
    }
  }
  return q;
}

void check_span_morphism(const SketchMorphism& m, const Sketch& shared, const Sketch& target, MergeSide side) {
  const std::string which(to_string(side));
  for (const auto& [f, img] : m.arrow_map) {
    if (img.arrows.size() != 1) {
      throw MergeError(MergeError::Kind::CompositePathInSpan,
                       "span morphism into " + which + " sends arrow '" + f + "' to a path of length " +
                           std::to_string(img.arrows.size()) + "; merge needs single arrows");
    }
  }
  auto errors = check_morphism(m, shared, target);
  if (!errors.empty()) {
    throw MergeError(MergeError::Kind::MorphismInvalid, "span morphism into " + which + ": " +
                                                            std::string(to_string(errors.front().kind)) + ": " +
                                                            errors.front().message);
  }
}

std::string fresh(const std::set<std::string>& used, const std::string& base) {
  std::string name = base;
  for (int k = 2; used.count(name); ++k) name = base + "_" + std::to_string(k);
  return name;
}

}  // namespace

MergeResult pushout_merge(const MergeSpan& span) {
  check_span_morphism(span.into_left, span.shared, span.left, MergeSide::Left);
  check_span_morphism(span.into_right, span.shared, span.right, MergeSide::Right);

  MergeResult out;
  std::vector<std::pair<std::string, std::string>> node_glue;
  for (const auto& n : span.shared.nodes) node_glue.emplace_back(span.into_left.node_map.at(n.id), span.into_right.node_map.at(n.id));
  std::vector<std::pair<std::string, std::string>> arrow_glue;
  for (const auto& a : span.shared.arrows) {
    arrow_glue.emplace_back(span.into_left.arrow_map.at(a.id).arrows.front(),
                            span.into_right.arrow_map.at(a.id).arrows.front());
  }
  const Quotient nodes = quotient(span.left.nodes, span.right.nodes, node_glue, "node", out);
  const Quotient arrows = quotient(span.left.arrows, span.right.arrows, arrow_glue, "arrow", out);

  Sketch& m = out.merged;
  m.name = span.left.name == span.right.name ? span.left.name : span.left.name + "_" + span.right.name;
  for (std::size_t root : nodes.classes) {
    const Node& n = root < nodes.left_count ? span.left.nodes[root] : span.right.nodes[root - nodes.left_count];
    m.nodes.push_back({nodes.names[root], n.kind});
  }

  auto build = [&](MergeSide side, const Sketch& src) {
    SketchMorphism into;
    for (std::size_t k = 0; k < src.nodes.size(); ++k) into.node_map[src.nodes[k].id] = nodes.name(side, k);
    for (std::size_t k = 0; k < src.arrows.size(); ++k) {
      into.arrow_map[src.arrows[k].id] = Path{into.node_map.at(src.arrows[k].src), {arrows.name(side, k)}};
    }
    return into;
  };
  out.into_merged_left = build(MergeSide::Left, span.left);
  out.into_merged_right = build(MergeSide::Right, span.right);

  for (std::size_t root : arrows.classes) {
    const bool from_left = root < arrows.left_count;
    const Arrow& a = from_left ? span.left.arrows[root] : span.right.arrows[root - arrows.left_count];
    const SketchMorphism& into = from_left ? out.into_merged_left : out.into_merged_right;
    m.arrows.push_back({arrows.names[root], into.node_map.at(a.src), into.node_map.at(a.dst)});
  }

  std::set<std::string> labels;
  auto add_constraints = [&](MergeSide side, const Sketch& src, const SketchMorphism& into) {
    for (const auto& c : src.constraints) {
      Constraint img = *map_constraint(into, c);
      auto same = std::find_if(m.constraints.begin(), m.constraints.end(),
                               [&](const Constraint& d) { return equivalent_constraints(img, d); });
      if (same != m.constraints.end()) {
        out.constraint_dedups.push_back({side, label_of(c), label_of(*same)});
        continue;
      }
      const std::string label = fresh(labels, label_of(c));
      if (label != label_of(c)) {
        out.renamings.push_back({side, "constraint", label_of(c), label});
        set_label(img, label);
      }
      labels.insert(label);
      m.constraints.push_back(std::move(img));
    }
  };
  add_constraints(MergeSide::Left, span.left, out.into_merged_left);
  add_constraints(MergeSide::Right, span.right, out.into_merged_right);

  // Rule names of each side are made distinct before deduplication so that
  // the decisions can name them unambiguously.
  std::vector<HornClause> rules;
  std::set<std::string> rule_names;
  auto add_rules = [&](MergeSide side, const Sketch& src, const SketchMorphism& into) {
    for (const auto& r : src.fuzzy_rules) {
      auto img = map_clause(into, r);
      if (!img) continue;  // unreachable: span arrows map to single arrows
      img->name = fresh(rule_names, r.name);
      if (img->name != r.name) out.renamings.push_back({side, "rule", r.name, img->name});
      rule_names.insert(img->name);
      rules.push_back(std::move(*img));
    }
  };
  add_rules(MergeSide::Left, span.left, out.into_merged_left);
  add_rules(MergeSide::Right, span.right, out.into_merged_right);
  m.fuzzy_rules = deduplicate_rules(rules, &out.rule_dedups);

  if (auto errors = check_wellformed(m); !errors.empty()) {
    throw MergeError(MergeError::Kind::IllFormedResult,
                     "merged sketch is not well-formed: " + std::string(to_string(errors.front().kind)) + ": " +
                         errors.front().message);
  }
  return out;
}

std::string format_merge_report(const MergeResult& r) {
  std::ostringstream out;
  auto join = [](const std::vector<std::string>& xs) {
    std::string s;
    for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? "," : "") + xs[k];
    return s;
  };
  for (const auto& i : r.identifications) {
    out << "identify " << i.kind << " " << i.merged << " left=" << join(i.left) << " right=" << join(i.right) << "\n";
  }
  for (const auto& n : r.renamings) {
    out << "rename " << to_string(n.side) << " " << n.kind << " " << n.from << " -> " << n.to << "\n";
  }
  for (const auto& d : r.constraint_dedups) {
    out << "dedup " << to_string(d.side) << " constraint " << d.label << " duplicates " << d.kept << "\n";
  }
  for (const auto& d : r.rule_dedups) {
    out << "dedup rule " << d.dropped
        << (d.reason == DedupDecision::Reason::AlphaEquivalent ? " duplicates " : " subsumed by ") << d.kept << "\n";
  }
  return out.str();
}

TheoryMergeResult merge_theories(const Sketch& s, const std::vector<HornClause>& rules1,
                                 const std::vector<HornClause>& rules2, const Rational& threshold) {
  std::vector<HornClause> all = rules1;
  all.insert(all.end(), rules2.begin(), rules2.end());
  for (const auto& r : all) check_clause(s, r);

  TheoryMergeResult result{s, {}, {}};
  for (const auto& r : deduplicate_rules(all, &result.dedups)) {
    InjectResult step = inject_clause(result.sketch, r, threshold);
    result.outcomes.push_back({r.name, step.outcome, step.detail});
    result.sketch = std::move(step.sketch);
  }
  return result;
}

std::string_view to_string(Finding::Kind kind) {
  switch (kind) {
    case Finding::Kind::DuplicateConstraint: return "DuplicateConstraint";
    case Finding::Kind::DuplicateLabel: return "DuplicateLabel";
    case Finding::Kind::Unsatisfiable: return "Unsatisfiable";
    case Finding::Kind::ContradictedRule: return "ContradictedRule";
  }
  return "Unknown";
}

ConsistencyReport consistency_report(const Sketch& s, const Instance* i) {
  using K = Finding::Kind;
  ConsistencyReport r;

  std::map<std::string, int> label_count;
  for (std::size_t a = 0; a < s.constraints.size(); ++a) {
    if (++label_count[label_of(s.constraints[a])] == 2) {
      r.findings.push_back({K::DuplicateLabel, "label '" + label_of(s.constraints[a]) + "' is used more than once"});
    }
    for (std::size_t b = a + 1; b < s.constraints.size(); ++b) {
      if (equivalent_constraints(s.constraints[a], s.constraints[b])) {
        r.findings.push_back({K::DuplicateConstraint, "'" + label_of(s.constraints[b]) + "' repeats '" +
                                                          label_of(s.constraints[a]) + "'"});
      }
    }
  }

  std::set<NodeId> terminal;
  for (const auto& c : s.constraints) {
    const auto* lim = std::get_if<FiniteLimitConstraint>(&c);
    if (lim && lim->base_nodes.empty()) terminal.insert(lim->apex);
  }
  for (const auto& c : s.constraints) {
    const auto* co = std::get_if<CoproductConstraint>(&c);
    if (!co || !terminal.count(co->apex)) continue;
    const auto nonempty = std::count_if(co->summands.begin(), co->summands.end(),
                                        [&](const NodeId& n) { return terminal.count(n) > 0; });
    if (co->summands.empty()) {
      r.findings.push_back({K::Unsatisfiable, "'" + co->apex + "' is terminal but '" + co->label +
                                                  "' makes it the empty coproduct"});
    } else if (nonempty >= 2) {
      r.findings.push_back({K::Unsatisfiable, "'" + co->apex + "' is terminal but '" + co->label + "' makes it a sum of " +
                                                  std::to_string(nonempty) + " one-element summands"});
    }
  }

  for (const auto& rule : s.fuzzy_rules) {
    if (rule.confidence.is_one() || rule.support == 0) continue;
    auto translated = commutativity_from_clause(rule, s);
    const auto* cc = std::get_if<CommutativityConstraint>(&translated);
    if (!cc) continue;
    const Constraint candidate = *cc;
    for (const auto& c : s.constraints) {
      if (equivalent_constraints(candidate, c)) {
        r.findings.push_back({K::ContradictedRule, "rule '" + rule.name + "' was measured at confidence " +
                                                       rule.confidence.str() + " but '" + label_of(c) +
                                                       "' requires it to hold everywhere"});
        break;
      }
    }
  }

  if (i != nullptr) {
    r.validation = validate(*i, s);
    for (const auto& rule : s.fuzzy_rules) r.rules.push_back({rule.name, eval_clause(*i, rule)});
  }
  return r;
}

std::string format_consistency_report(const ConsistencyReport& r) {
  std::ostringstream out;
  for (const auto& f : r.findings) out << "finding " << to_string(f.kind) << ": " << f.message << "\n";
  if (r.validation) {
    for (const auto& v : r.validation->violations) {
      out << "violation " << v.label << ": " << to_string(v.kind) << ": " << v.witness << "\n";
    }
    for (const auto& sup : r.validation->suppressed) {
      out << "violation " << sup.label << ": " << sup.count << " further witnesses suppressed\n";
    }
  }
  for (const auto& rc : r.rules) {
    out << "rule " << rc.rule << " support=" << rc.evaluation.support << " conf=" << rc.evaluation.confidence.str()
        << (rc.evaluation.vacuous ? " vacuous" : "") << "\n";
  }
  return out.str();
}

}  // namespace sketchkit
