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

#include "sketchkit/horn.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

namespace sketchkit {

namespace {

// Clause atoms over variable indices, ready for grounding.
struct Compiled {
  enum class Kind { Arrow, Eq, Const };
  Kind kind;
  int a = -1;
  int b = -1;
  const ArrowMap* map = nullptr;
  const Atom* literal = nullptr;
};

class Grounder {
 public:
  Grounder(const Instance& i, const HornClause& c) {
    for (const auto& v : c.vars) {
      if (index_.count(v.name)) throw ClauseError("variable '" + v.name + "' declared twice in '" + c.name + "'");
      auto it = i.carriers.find(v.node);
      if (it == i.carriers.end()) throw ClauseError("unknown node '" + v.node + "' in '" + c.name + "'");
      index_.emplace(v.name, static_cast<int>(carriers_.size()));
      carriers_.push_back(&it->second);
    }
    for (const auto& atom : c.body) body_.push_back(compile(i, c, atom));
    head_ = compile(i, c, c.head);
    value_.assign(carriers_.size(), nullptr);
  }

  ClauseEvaluation run() {
    assign(0);
    ClauseEvaluation e;
    e.support = support_;
    if (support_ == 0) {
      e.vacuous = true;
    } else {
      e.confidence = Rational(hits_, support_);
    }
    return e;
  }

 private:
  Compiled compile(const Instance& i, const HornClause& c, const ClauseAtom& atom) {
    Compiled out;
    if (const auto* a = std::get_if<ArrowAtom>(&atom)) {
      auto it = i.maps.find(a->arrow);
      if (it == i.maps.end()) throw ClauseError("unknown arrow '" + a->arrow + "' in '" + c.name + "'");
      out.kind = Compiled::Kind::Arrow;
      out.map = &it->second;
      out.a = var(c, a->in);
      out.b = var(c, a->out);
    } else if (const auto* e = std::get_if<EqAtom>(&atom)) {
      out.kind = Compiled::Kind::Eq;
      out.a = var(c, e->lhs);
      out.b = var(c, e->rhs);
    } else {
      const auto& k = std::get<ConstAtom>(atom);
      out.kind = Compiled::Kind::Const;
      out.a = var(c, k.var);
      out.literal = &k.literal;
    }
    return out;
  }

  int var(const HornClause& c, const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw ClauseError("variable '" + name + "' is not declared in '" + c.name + "'");
    return it->second;
  }

  bool assigned(int v) const { return v < 0 || value_[v] != nullptr; }

  bool holds(const Compiled& x) const {
    switch (x.kind) {
      case Compiled::Kind::Arrow: {
        const Atom* img = x.map->image(*value_[x.a]);
        return img != nullptr && *img == *value_[x.b];
      }
      case Compiled::Kind::Eq: return *value_[x.a] == *value_[x.b];
      case Compiled::Kind::Const: return *value_[x.a] == *x.literal;
    }
    return false;
  }

  // A value some body atom forces on an unassigned variable, if any.
  // `dead` is set when the forced value cannot exist.
  std::optional<std::pair<int, Atom>> forced(bool& dead) const {
    for (const auto& x : body_) {
      switch (x.kind) {
        case Compiled::Kind::Arrow:
          if (assigned(x.a) && !assigned(x.b)) {
            const Atom* img = x.map->image(*value_[x.a]);
            if (img == nullptr) {
              dead = true;
              return std::nullopt;
            }
            return std::pair(x.b, *img);
          }
          break;
        case Compiled::Kind::Eq:
          if (assigned(x.a) != assigned(x.b)) {
            return assigned(x.a) ? std::pair(x.b, *value_[x.a]) : std::pair(x.a, *value_[x.b]);
          }
          break;
        case Compiled::Kind::Const:
          if (!assigned(x.a)) return std::pair(x.a, *x.literal);
          break;
      }
    }
    return std::nullopt;
  }

  bool consistent(int v) const {
    for (const auto& x : body_) {
      if ((x.a == v || x.b == v) && assigned(x.a) && assigned(x.b) && !holds(x)) return false;
    }
    return true;
  }

  void try_value(int v, const Atom* atom, std::size_t depth) {
    value_[v] = atom;
    if (consistent(v)) assign(depth + 1);
    value_[v] = nullptr;
  }

  void assign(std::size_t depth) {
    if (depth == value_.size()) {
      ++support_;
      if (holds(head_)) ++hits_;
      return;
    }
    bool dead = false;
    if (auto f = forced(dead)) {
      auto it = carriers_[f->first]->find(f->second);
      if (it != carriers_[f->first]->end()) try_value(f->first, &*it, depth);
      return;
    }
    if (dead) return;
    const int v = static_cast<int>(std::find(value_.begin(), value_.end(), nullptr) - value_.begin());
    for (const Atom& atom : *carriers_[v]) try_value(v, &atom, depth);
  }

  std::map<std::string, int> index_;
  std::vector<const std::set<Atom>*> carriers_;
  std::vector<Compiled> body_;
  Compiled head_;
  std::vector<const Atom*> value_;
  std::int64_t support_ = 0;
  std::int64_t hits_ = 0;
};

}  // namespace

ClauseEvaluation eval_clause(const Instance& i, const HornClause& c) { return Grounder(i, c).run(); }

void check_clause(const Sketch& s, const HornClause& c) {
  Sketch probe;
  probe.name = s.name;
  probe.nodes = s.nodes;
  probe.arrows = s.arrows;
  probe.fuzzy_rules = {c};
  for (const auto& e : check_wellformed(probe)) {
    if (e.element.kind == ElementKind::Rule) throw ClauseError(e.message);
  }
}

HornClause clause_from_commutativity(const Sketch& s, const CommutativityConstraint& c) {
  HornClause out;
  out.name = c.label;
  out.vars.push_back({"x", c.left.start});
  auto chain = [&](const Path& p, const std::string& prefix) {
    std::string prev = "x";
    for (std::size_t k = 0; k < p.arrows.size(); ++k) {
      const Arrow* a = s.find_arrow(p.arrows[k]);
      if (a == nullptr) throw ClauseError("unknown arrow '" + p.arrows[k] + "' in '" + c.label + "'");
      std::string var = prefix + std::to_string(k + 1);
      out.vars.push_back({var, a->dst});
      out.body.push_back(ArrowAtom{a->id, prev, var});
      prev = std::move(var);
    }
    return prev;
  };
  const std::string l = chain(c.left, "l");
  const std::string r = chain(c.right, "r");
  out.head = EqAtom{l, r};
  return out;
}

std::variant<CommutativityConstraint, NotTranslatable> commutativity_from_clause(const HornClause& c, const Sketch& s) {
  auto fail = [](std::string reason) { return NotTranslatable{std::move(reason)}; };
  const auto* head = std::get_if<EqAtom>(&c.head);
  if (head == nullptr) return fail("head is not an equation between variables");

  std::map<std::string, const std::string*> type;
  for (const auto& v : c.vars) {
    if (!type.emplace(v.name, &v.node).second) return fail("variable '" + v.name + "' declared twice");
  }
  std::map<std::string, std::size_t> producer;  // variable -> body atom defining it
  for (std::size_t k = 0; k < c.body.size(); ++k) {
    const auto* a = std::get_if<ArrowAtom>(&c.body[k]);
    if (a == nullptr) return fail("body contains a non-arrow atom");
    if (!type.count(a->in) || !type.count(a->out)) return fail("undeclared variable in body");
    const Arrow* arrow = s.find_arrow(a->arrow);
    if (arrow == nullptr) return fail("unknown arrow '" + a->arrow + "'");
    if (*type[a->in] != arrow->src || *type[a->out] != arrow->dst) return fail("atom '" + a->arrow + "' is mistyped");
    if (!producer.emplace(a->out, k).second) return fail("variable '" + a->out + "' is the output of two atoms");
  }
  if (!type.count(head->lhs) || !type.count(head->rhs)) return fail("undeclared variable in head");

  std::vector<bool> used(c.body.size(), false);
  std::set<std::string> seen_vars;
  auto walk = [&](const std::string& end, std::string& root) -> std::optional<std::vector<ArrowId>> {
    std::vector<ArrowId> arrows;
    std::string v = end;
    std::set<std::string> visited{v};
    seen_vars.insert(v);
    for (auto it = producer.find(v); it != producer.end(); it = producer.find(v)) {
      if (used[it->second]) return std::nullopt;
      used[it->second] = true;
      const auto& a = std::get<ArrowAtom>(c.body[it->second]);
      arrows.push_back(a.arrow);
      v = a.in;
      if (!visited.insert(v).second) return std::nullopt;
      seen_vars.insert(v);
    }
    std::reverse(arrows.begin(), arrows.end());
    root = v;
    return arrows;
  };
  std::string left_root;
  std::string right_root;
  auto left = walk(head->lhs, left_root);
  if (!left) return fail("left chain is cyclic or shares atoms");
  auto right = walk(head->rhs, right_root);
  if (!right) return fail("right chain is cyclic or shares atoms with the left chain");
  if (left_root != right_root) return fail("the two chains start at different variables");
  if (std::find(used.begin(), used.end(), false) != used.end()) return fail("body has atoms outside the two chains");
  if (seen_vars.size() != c.vars.size()) return fail("some variables lie outside the two chains");

  const NodeId& start = *type[left_root];
  return CommutativityConstraint{c.name, Path{start, std::move(*left)}, Path{start, std::move(*right)}};
}

std::string_view to_string(InjectOutcome outcome) {
  switch (outcome) {
    case InjectOutcome::Promoted: return "promoted";
    case InjectOutcome::AlreadyPresent: return "already-present";
    case InjectOutcome::StoredFuzzy: return "fuzzy";
    case InjectOutcome::Rejected: return "rejected";
  }
  return "unknown";
}

namespace {

std::string fresh_label(const Sketch& s, const std::string& base) {
  if (!s.find_constraint(base)) return base;
  for (int k = 2;; ++k) {
    std::string candidate = base + "_" + std::to_string(k);
    if (!s.find_constraint(candidate)) return candidate;
  }
}

}  // namespace

InjectResult inject_clause(const Sketch& s, const HornClause& c, const Rational& threshold) {
  check_clause(s, c);
  InjectResult result{s, InjectOutcome::Rejected, {}};
  Sketch& out = result.sketch;

  std::string untranslatable;
  if (c.confidence.is_one()) {
    auto translated = commutativity_from_clause(c, s);
    if (auto* cc = std::get_if<CommutativityConstraint>(&translated)) {
      const Constraint candidate = *cc;
      auto same = std::find_if(out.constraints.begin(), out.constraints.end(),
                               [&](const Constraint& d) { return equivalent_constraints(candidate, d); });
      if (same != out.constraints.end()) {
        result.outcome = InjectOutcome::AlreadyPresent;
        result.detail = "constraint '" + label_of(*same) + "'";
        return result;
      }
      cc->label = fresh_label(out, cc->label);
      result.outcome = InjectOutcome::Promoted;
      result.detail = "constraint '" + cc->label + "'";
      out.constraints.emplace_back(std::move(*cc));
      // The hard constraint supersedes any soft copy of the same rule.
      std::erase_if(out.fuzzy_rules, [&](const HornClause& r) { return r.name == c.name || alpha_equivalent(r, c); });
      return result;
    }
    untranslatable = std::get<NotTranslatable>(translated).reason;
  }

  if (c.confidence >= threshold) {
    auto slot = std::find_if(out.fuzzy_rules.begin(), out.fuzzy_rules.end(),
                             [&](const HornClause& r) { return r.name == c.name; });
    if (slot == out.fuzzy_rules.end()) {
      slot = std::find_if(out.fuzzy_rules.begin(), out.fuzzy_rules.end(),
                          [&](const HornClause& r) { return alpha_equivalent(r, c); });
    }
    if (slot != out.fuzzy_rules.end()) {
      *slot = c;
    } else {
      out.fuzzy_rules.push_back(c);
    }
    result.outcome = InjectOutcome::StoredFuzzy;
    result.detail = "confidence " + c.confidence.str();
    if (!untranslatable.empty()) result.detail += "; not a commutativity: " + untranslatable;
    return result;
  }

  result.detail = "confidence " + c.confidence.str() + " below threshold " + threshold.str();
  return result;
}

RefreshResult update_confidences(const Sketch& s, const Instance& i) {
  RefreshResult result{s, {}, {}};
  for (auto& rule : result.sketch.fuzzy_rules) {
    const ClauseEvaluation e = eval_clause(i, rule);
    rule.support = e.support;
    rule.confidence = e.confidence;
    if (e.vacuous) result.vacuous.push_back(rule.name);
    if (rule.promotable()) result.promotion_candidates.push_back(rule.name);
  }
  return result;
}

namespace {

// Atoms with variables replaced by indices; equations ordered so that
// symmetric forms compare equal.
using NormAtom = std::tuple<int, std::string, int, int>;

class Embedding {
 public:
  Embedding(const HornClause& from, const HornClause& to, bool bijective)
      : from_(from), to_(to), bijective_(bijective) {}

  bool exists() {
    if (bijective_ ? from_.vars.size() != to_.vars.size() : from_.vars.size() > to_.vars.size()) return false;
    for (std::size_t k = 0; k < to_.vars.size(); ++k) to_index_[to_.vars[k].name] = static_cast<int>(k);
    for (std::size_t k = 0; k < from_.vars.size(); ++k) from_index_[from_.vars[k].name] = static_cast<int>(k);
    if (to_index_.size() != to_.vars.size() || from_index_.size() != from_.vars.size()) return false;
    for (const auto& a : to_.body) {
      auto n = normalize(a, [&](const std::string& v) { return index_in(to_index_, v); });
      if (!n) return false;
      target_body_.insert(*n);
    }
    auto head = normalize(to_.head, [&](const std::string& v) { return index_in(to_index_, v); });
    if (!head) return false;
    target_head_ = *head;
    image_.assign(from_.vars.size(), -1);
    taken_.assign(to_.vars.size(), false);
    return search(0);
  }

 private:
  static std::optional<int> index_in(const std::map<std::string, int>& index, const std::string& v) {
    auto it = index.find(v);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }

  template <typename Index>
  static std::optional<NormAtom> normalize(const ClauseAtom& atom, Index index) {
    if (const auto* a = std::get_if<ArrowAtom>(&atom)) {
      auto in = index(a->in);
      auto out = index(a->out);
      if (!in || !out) return std::nullopt;
      return NormAtom{0, a->arrow, *in, *out};
    }
    if (const auto* e = std::get_if<EqAtom>(&atom)) {
      auto l = index(e->lhs);
      auto r = index(e->rhs);
      if (!l || !r) return std::nullopt;
      return NormAtom{1, "", std::min(*l, *r), std::max(*l, *r)};
    }
    const auto& k = std::get<ConstAtom>(atom);
    auto v = index(k.var);
    if (!v) return std::nullopt;
    return NormAtom{2, k.literal, *v, -1};
  }

  std::optional<NormAtom> mapped(const ClauseAtom& atom, std::size_t assigned) const {
    return normalize(atom, [&](const std::string& v) -> std::optional<int> {
      auto it = from_index_.find(v);
      if (it == from_index_.end() || static_cast<std::size_t>(it->second) >= assigned) return std::nullopt;
      return image_[it->second];
    });
  }

  // Body atoms whose variables are all mapped must land in the target body.
  bool partial_ok(std::size_t assigned) const {
    for (const auto& a : from_.body) {
      auto n = mapped(a, assigned);
      if (n && !target_body_.count(*n)) return false;
    }
    return true;
  }

  bool search(std::size_t k) {
    if (k == from_.vars.size()) {
      auto head = mapped(from_.head, k);
      if (!head || *head != target_head_) return false;
      if (!bijective_) return true;
      std::set<NormAtom> body;
      for (const auto& a : from_.body) body.insert(*mapped(a, k));
      return body == target_body_;
    }
    for (std::size_t t = 0; t < to_.vars.size(); ++t) {
      if (taken_[t] || to_.vars[t].node != from_.vars[k].node) continue;
      taken_[t] = true;
      image_[k] = static_cast<int>(t);
      if (partial_ok(k + 1) && search(k + 1)) return true;
      taken_[t] = false;
    }
    image_[k] = -1;
    return false;
  }

  const HornClause& from_;
  const HornClause& to_;
  bool bijective_;
  std::map<std::string, int> from_index_;
  std::map<std::string, int> to_index_;
  std::set<NormAtom> target_body_;
  NormAtom target_head_;
  std::vector<int> image_;
  std::vector<bool> taken_;
};

}  // namespace

bool alpha_equivalent(const HornClause& a, const HornClause& b) { return Embedding(a, b, true).exists(); }

bool subsumes(const HornClause& general, const HornClause& specific) {
  return Embedding(general, specific, false).exists();
}

std::vector<HornClause> deduplicate_rules(const std::vector<HornClause>& rules, std::vector<DedupDecision>* decisions) {
  using R = DedupDecision::Reason;
  std::vector<HornClause> out;
  std::vector<std::size_t> kept;
  for (std::size_t k = 0; k < rules.size(); ++k) {
    auto twin = std::find_if(kept.begin(), kept.end(), [&](std::size_t j) { return alpha_equivalent(rules[j], rules[k]); });
    if (twin != kept.end()) {
      if (decisions) decisions->push_back({rules[k].name, rules[*twin].name, R::AlphaEquivalent});
      continue;
    }
    std::optional<std::size_t> general;
    for (std::size_t j = 0; j < rules.size() && !general; ++j) {
      if (j != k && subsumes(rules[j], rules[k]) && !alpha_equivalent(rules[j], rules[k])) general = j;
    }
    if (general) {
      if (decisions) decisions->push_back({rules[k].name, rules[*general].name, R::Subsumed});
      continue;
    }
    kept.push_back(k);
    out.push_back(rules[k]);
  }
  return out;
}

}  // namespace sketchkit
