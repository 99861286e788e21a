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

#include <algorithm>
#include <map>
#include <type_traits>

#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "sketchkit/horn.hpp"
#include "sketchkit/validator.hpp"

using namespace sketchkit;
using namespace sketchkit::testing;

namespace {

const std::vector<Atom> kLiterals = {"a0", "a1", "a2", "zz"};

std::vector<CommutativityConstraint> commutativities(const Sketch& s) {
  std::vector<CommutativityConstraint> out;
  for (const auto& c : s.constraints) {
    if (const auto* comm = std::get_if<CommutativityConstraint>(&c)) out.push_back(*comm);
  }
  return out;
}

ClauseAtom rename_vars(const ClauseAtom& a, const std::map<std::string, std::string>& to) {
  return std::visit(
      [&](const auto& atom) -> ClauseAtom {
        using T = std::decay_t<decltype(atom)>;
        if constexpr (std::is_same_v<T, ArrowAtom>) return ArrowAtom{atom.arrow, to.at(atom.in), to.at(atom.out)};
        if constexpr (std::is_same_v<T, EqAtom>) return EqAtom{to.at(atom.lhs), to.at(atom.rhs)};
        if constexpr (std::is_same_v<T, ConstAtom>) return ConstAtom{to.at(atom.var), atom.literal};
      },
      a);
}

/// Same clause with renamed variables, declarations and body shuffled.
HornClause alpha_variant(Gen& g, const HornClause& c, const std::string& name) {
  std::map<std::string, std::string> to;
  HornClause out = c;
  out.name = name;
  for (auto& v : out.vars) {
    to[v.name] = "w_" + v.name;
    v.name = to[v.name];
  }
  for (auto& a : out.body) a = rename_vars(a, to);
  out.head = rename_vars(c.head, to);
  g.shuffle(out.vars);
  g.shuffle(out.body);
  return out;
}

}  // namespace

TEST_CASE("commutativity and its clause agree") {
  Gen g(0x40e01);
  int held = 0, failed = 0;
  for (int round = 0; round < 500; ++round) {
    const Sketch s = random_sketch(g);
    const Instance i = random_instance(g, s, {6, 0.0, 0.0, false});
    for (const auto& c : commutativities(s)) {
      const HornClause clause = clause_from_commutativity(s, c);
      const auto back = commutativity_from_clause(clause, s);
      REQUIRE(std::holds_alternative<CommutativityConstraint>(back));
      CHECK(std::get<CommutativityConstraint>(back) == c);

      const ClauseEvaluation e = eval_clause(i, clause);
      CHECK(e.support == static_cast<std::int64_t>(i.carrier(c.left.start).size()));
      const bool holds = check_commutativity(i, c).empty();
      CHECK(holds == e.confidence.is_one());
      ++(holds ? held : failed);
    }
  }
  CHECK(held > 50);
  CHECK(failed > 50);
}

TEST_CASE("eval_clause matches grounding and ignores atom names") {
  Gen g(0x40e02);
  for (int round = 0; round < 800; ++round) {
    const Sketch s = random_sketch(g);
    const Instance i = random_instance(g, s, {6, 0.0, 0.0, false});
    const HornClause c = random_clause(g, s, 3, kLiterals);
    const ClauseEvaluation e = eval_clause(i, c);
    const GroundCount truth = oracle_ground(i, c);
    CHECK(e.support == truth.support);
    CHECK(e.vacuous == (truth.support == 0));
    if (truth.support > 0) CHECK(e.confidence == Rational(truth.hits, truth.support));

    const auto renaming = random_renaming(g, i);
    HornClause renamed_clause = c;
    auto rename_literal = [&](ClauseAtom& a) {
      if (auto* k = std::get_if<ConstAtom>(&a); k && renaming.count(k->literal)) k->literal = renaming.at(k->literal);
    };
    for (auto& a : renamed_clause.body) rename_literal(a);
    rename_literal(renamed_clause.head);
    CHECK(eval_clause(rename_atoms(i, renaming), renamed_clause) == e);
  }
}

TEST_CASE("deduplication is idempotent and never grows") {
  Gen g(0x40e03);
  for (int round = 0; round < 400; ++round) {
    const Sketch s = random_sketch(g);
    std::vector<HornClause> rules;
    const int n = g.uniform(0, 5);
    for (int k = 0; k < n; ++k) {
      HornClause c = random_clause(g, s, 3, kLiterals);
      c.name = "r" + std::to_string(k);
      rules.push_back(c);
      if (g.chance(0.4)) rules.push_back(alpha_variant(g, c, c.name + "_alpha"));
      if (g.chance(0.3) && !c.vars.empty()) {
        HornClause narrower = c;
        narrower.name = c.name + "_narrow";
        narrower.body.push_back(ConstAtom{c.vars.front().name, "zz"});
        rules.push_back(narrower);
      }
    }
    g.shuffle(rules);

    std::vector<DedupDecision> decisions;
    const auto once = deduplicate_rules(rules, &decisions);
    CHECK(once.size() <= rules.size());
    CHECK(once.size() + decisions.size() == rules.size());
    CHECK(deduplicate_rules(once) == once);
    for (std::size_t a = 0; a < once.size(); ++a) {
      for (std::size_t b = a + 1; b < once.size(); ++b) CHECK_FALSE(alpha_equivalent(once[a], once[b]));
    }
    // survivors keep their relative order
    auto it = rules.begin();
    for (const auto& kept : once) {
      it = std::find(it, rules.end(), kept);
      CHECK(it != rules.end());
    }
  }
}
