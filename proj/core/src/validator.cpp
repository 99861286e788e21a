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

#include "sketchkit/validator.hpp"

#include <algorithm>
#include <future>
#include <sstream>

#include <json.hpp>

namespace sketchkit {

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::CommutationFailure: return "CommutationFailure";
    case ViolationKind::LimitFailure: return "LimitFailure";
    case ViolationKind::CoproductFailure: return "CoproductFailure";
    case ViolationKind::ConeFailure: return "ConeFailure";
    case ViolationKind::TotalityFailure: return "TotalityFailure";
  }
  return "Unknown";
}

namespace {

// Collects witnesses for one constraint up to a cap and counts the rest.
class Witnesses {
 public:
  Witnesses(std::string label, std::size_t cap) : label_(std::move(label)), cap_(cap) {}

  void add(ViolationKind kind, std::string witness) {
    if (out_.size() < cap_) {
      out_.push_back({label_, kind, std::move(witness)});
    } else {
      ++suppressed_;
    }
  }

  std::vector<Violation> take() { return std::move(out_); }
  std::size_t suppressed() const { return suppressed_; }

 private:
  std::string label_;
  std::size_t cap_;
  std::vector<Violation> out_;
  std::size_t suppressed_ = 0;
};

std::string format_family(const MatchingFamily& f) {
  std::string out = "(";
  bool first = true;
  for (const auto& [node, atom] : f) {
    if (!first) out += ", ";
    first = false;
    out += node + "=" + atom;
  }
  return out + ")";
}

std::string format_path(const Path& p) {
  if (p.arrows.empty()) return "id(" + p.start + ")";
  std::string out;
  for (const auto& a : p.arrows) out += (out.empty() ? "" : ".") + a;
  return out;
}

void commutativity_into(const Instance& i, const CommutativityConstraint& c, Witnesses& w) {
  for (const auto& x : i.carrier(c.left.start)) {
    const Atom l = eval_path(i, c.left, x);
    const Atom r = eval_path(i, c.right, x);
    if (l != r) {
      w.add(ViolationKind::CommutationFailure,
            x + ": " + format_path(c.left) + " gives " + l + ", " + format_path(c.right) + " gives " + r);
    }
  }
}

// Visits base nodes so that a node reached by a base arrow from an already
// visited node comes right after it; its value is then forced.
std::vector<NodeId> enumeration_order(const Sketch& s, const FiniteLimitConstraint& c) {
  std::vector<NodeId> order;
  std::set<NodeId> placed;
  while (order.size() < c.base_nodes.size()) {
    bool progressed = false;
    for (const auto& id : c.base_arrows) {
      const Arrow* a = s.find_arrow(id);
      if (a && placed.count(a->src) && !placed.count(a->dst)) {
        order.push_back(a->dst);
        placed.insert(a->dst);
        progressed = true;
      }
    }
    if (progressed) continue;
    for (const auto& n : c.base_nodes) {
      if (!placed.count(n)) {
        order.push_back(n);
        placed.insert(n);
        break;
      }
    }
  }
  return order;
}

class FamilyEnumerator {
 public:
  FamilyEnumerator(const Instance& i, const Sketch& s, const FiniteLimitConstraint& c) : i_(i) {
    order_ = enumeration_order(s, c);
    for (const auto& id : c.base_arrows) {
      if (const Arrow* a = s.find_arrow(id)) arrows_.push_back(a);
    }
  }

  std::set<MatchingFamily> run() {
    assign(0);
    return std::move(out_);
  }

 private:
  bool consistent(const NodeId& just_set) const {
    for (const Arrow* a : arrows_) {
      if (a->src != just_set && a->dst != just_set) continue;
      auto s = current_.find(a->src);
      auto d = current_.find(a->dst);
      if (s == current_.end() || d == current_.end()) continue;
      const Atom* img = i_.map(a->id).image(s->second);
      if (img == nullptr || *img != d->second) return false;
    }
    return true;
  }

  void assign(std::size_t k) {
    if (k == order_.size()) {
      out_.insert(current_);
      return;
    }
    const NodeId& n = order_[k];
    const auto& carrier = i_.carrier(n);
    const Atom* forced = nullptr;
    for (const Arrow* a : arrows_) {
      if (a->dst != n) continue;
      if (auto s = current_.find(a->src); s != current_.end()) {
        forced = i_.map(a->id).image(s->second);
        if (forced == nullptr) return;
        break;
      }
    }
    auto try_value = [&](const Atom& v) {
      current_[n] = v;
      if (consistent(n)) assign(k + 1);
      current_.erase(n);
    };
    if (forced != nullptr) {
      if (carrier.count(*forced)) try_value(*forced);
    } else {
      for (const auto& v : carrier) try_value(v);
    }
  }

  const Instance& i_;
  std::vector<NodeId> order_;
  std::vector<const Arrow*> arrows_;
  MatchingFamily current_;
  std::set<MatchingFamily> out_;
};

void limit_into(const Instance& i, const Sketch& s, const FiniteLimitConstraint& c, Witnesses& w) {
  const auto legs = resolve_legs(s, c);
  std::map<MatchingFamily, Atom> hit;
  for (const auto& p : i.carrier(c.apex)) {
    MatchingFamily family;
    for (const auto& [node, leg] : legs) family[node] = eval_path(i, leg, p);
    for (const auto& id : c.base_arrows) {
      const Arrow* a = s.find_arrow(id);
      const Atom* img = i.map(id).image(family.at(a->src));
      const Atom& expected = family.at(a->dst);
      if (img == nullptr || *img != expected) {
        w.add(ViolationKind::ConeFailure, p + ": " + id + "(" + format_path(legs.at(a->src)) + "(" + p + ")) = " +
                                              (img ? *img : std::string("?")) + " but " +
                                              format_path(legs.at(a->dst)) + "(" + p + ") = " + expected);
      }
    }
    auto [it, inserted] = hit.emplace(family, p);
    if (!inserted) {
      w.add(ViolationKind::LimitFailure,
            "comparison map not injective: " + it->second + " and " + p + " both give " + format_family(family));
    }
  }
  for (const auto& family : compute_canonical_limit(i, s, c)) {
    if (!hit.count(family)) {
      w.add(ViolationKind::LimitFailure, "family " + format_family(family) + " has no element in '" + c.apex + "'");
    }
  }
}

void coproduct_into(const Instance& i, const CoproductConstraint& c, Witnesses& w) {
  // apex atom -> (summand index, atom) that first reached it
  std::map<Atom, std::pair<std::size_t, Atom>> origin;
  auto describe = [&](std::size_t k, const Atom& x) { return c.injections[k] + "(" + x + ")"; };
  for (std::size_t k = 0; k < c.summands.size() && k < c.injections.size(); ++k) {
    for (const auto& x : i.carrier(c.summands[k])) {
      const Atom* v = i.map(c.injections[k]).image(x);
      if (v == nullptr) continue;
      auto [it, inserted] = origin.emplace(*v, std::pair(k, x));
      if (inserted) continue;
      const auto& [first_k, first_x] = it->second;
      w.add(ViolationKind::CoproductFailure,
            first_k == k ? "not injective: " + describe(first_k, first_x) + " = " + describe(k, x) + " = " + *v
                         : "overlap at " + *v + ": " + describe(first_k, first_x) + " and " + describe(k, x));
    }
  }
  for (const auto& v : i.carrier(c.apex)) {
    if (!origin.count(v)) w.add(ViolationKind::CoproductFailure, v + " is not in the image of any injection");
  }
}

std::set<ArrowId> arrows_used(const Sketch& s, const Constraint& c) {
  std::set<ArrowId> out;
  if (const auto* cc = std::get_if<CommutativityConstraint>(&c)) {
    out.insert(cc->left.arrows.begin(), cc->left.arrows.end());
    out.insert(cc->right.arrows.begin(), cc->right.arrows.end());
  } else if (const auto* lc = std::get_if<FiniteLimitConstraint>(&c)) {
    out.insert(lc->base_arrows.begin(), lc->base_arrows.end());
    for (const auto& [n, leg] : resolve_legs(s, *lc)) out.insert(leg.arrows.begin(), leg.arrows.end());
  } else if (const auto* pc = std::get_if<CoproductConstraint>(&c)) {
    out.insert(pc->injections.begin(), pc->injections.end());
  }
  return out;
}

struct ConstraintOutcome {
  std::vector<Violation> violations;
  std::size_t suppressed = 0;
};

ConstraintOutcome run_constraint(const Instance& i, const Sketch& s, const Constraint& c, std::size_t cap) {
  Witnesses w(label_of(c), cap);
  try {
    if (const auto* cc = std::get_if<CommutativityConstraint>(&c)) {
      commutativity_into(i, *cc, w);
    } else if (const auto* lc = std::get_if<FiniteLimitConstraint>(&c)) {
      limit_into(i, s, *lc, w);
    } else {
      coproduct_into(i, std::get<CoproductConstraint>(c), w);
    }
  } catch (const std::exception& e) {
    w.add(ViolationKind::TotalityFailure, std::string("evaluation failed: ") + e.what());
  }
  ConstraintOutcome out;
  out.suppressed = w.suppressed();
  out.violations = w.take();
  return out;
}

}  // namespace

std::vector<Violation> check_commutativity(const Instance& i, const CommutativityConstraint& c,
                                           std::size_t max_witnesses) {
  Witnesses w(c.label, max_witnesses);
  commutativity_into(i, c, w);
  return w.take();
}

std::set<MatchingFamily> compute_canonical_limit(const Instance& i, const Sketch& s, const FiniteLimitConstraint& c) {
  return FamilyEnumerator(i, s, c).run();
}

std::vector<Violation> check_limit(const Instance& i, const Sketch& s, const FiniteLimitConstraint& c,
                                   std::size_t max_witnesses) {
  Witnesses w(c.label, max_witnesses);
  limit_into(i, s, c, w);
  return w.take();
}

std::vector<Violation> check_coproduct(const Instance& i, const CoproductConstraint& c, std::size_t max_witnesses) {
  Witnesses w(c.label, max_witnesses);
  coproduct_into(i, c, w);
  return w.take();
}

ViolationReport validate(const Instance& i, const Sketch& s, const ValidateOptions& options) {
  ViolationReport report;

  std::set<std::string> defective;
  std::map<std::string, std::size_t> per_element;
  std::vector<std::string> element_order;
  for (auto& e : check_totality(i, s)) {
    defective.insert(e.element);
    if (per_element[e.element]++ == 0) element_order.push_back(e.element);
    if (per_element[e.element] <= options.max_witnesses) {
      report.violations.push_back({e.element, ViolationKind::TotalityFailure,
                                   std::string(to_string(e.kind)) + ": " + e.message});
    }
  }
  for (const auto& element : element_order) {
    if (per_element[element] > options.max_witnesses) {
      report.suppressed.push_back({element, per_element[element] - options.max_witnesses});
    }
  }

  std::vector<const Constraint*> runnable;
  for (const auto& c : s.constraints) {
    const auto used = arrows_used(s, c);
    if (std::none_of(used.begin(), used.end(), [&](const ArrowId& a) { return defective.count(a) > 0; })) {
      runnable.push_back(&c);
    }
  }

  std::vector<ConstraintOutcome> outcomes(runnable.size());
  if (options.parallel && runnable.size() > 1) {
    std::vector<std::future<ConstraintOutcome>> futures;
    futures.reserve(runnable.size());
    for (const Constraint* c : runnable) {
      futures.push_back(std::async(std::launch::async, [&, c] { return run_constraint(i, s, *c, options.max_witnesses); }));
    }
    for (std::size_t k = 0; k < futures.size(); ++k) outcomes[k] = futures[k].get();
  } else {
    for (std::size_t k = 0; k < runnable.size(); ++k) {
      outcomes[k] = run_constraint(i, s, *runnable[k], options.max_witnesses);
    }
  }
  for (std::size_t k = 0; k < runnable.size(); ++k) {
    auto& o = outcomes[k];
    report.violations.insert(report.violations.end(), o.violations.begin(), o.violations.end());
    if (o.suppressed > 0) report.suppressed.push_back({label_of(*runnable[k]), o.suppressed});
  }
  return report;
}

std::string format_report_text(const ViolationReport& report) {
  std::ostringstream out;
  for (const auto& v : report.violations) out << v.label << ": " << to_string(v.kind) << ": " << v.witness << "\n";
  for (const auto& s : report.suppressed) out << s.label << ": " << s.count << " further witnesses suppressed\n";
  return out.str();
}

std::string format_report_machine(const ViolationReport& report) {
  std::ostringstream out;
  for (const auto& v : report.violations) {
    nlohmann::json record{{"label", v.label}, {"kind", std::string(to_string(v.kind))}, {"witness", v.witness}};
    out << record.dump() << "\n";
  }
  for (const auto& s : report.suppressed) {
    nlohmann::json record{{"label", s.label}, {"kind", "Suppressed"}, {"count", s.count}};
    out << record.dump() << "\n";
  }
  return out.str();
}

}  // namespace sketchkit
