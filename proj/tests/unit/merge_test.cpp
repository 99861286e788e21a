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

#include "doctest.h"
#include "oracles.hpp"
#include "sketchkit/dsl.hpp"

using namespace sketchkit;
using sketchkit::testing::oracle_isomorphic;

namespace {

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("self-merge") {
  const Sketch s = parse_sketch(R"(sketch S {
  node A; node B; node P;
  arrow f: A -> B; arrow g: A -> B;
  arrow p1: P -> A; arrow p2: P -> B;
  product prod: P = A * B with p1, p2;
  commute c: f = g;
})");
  const MergeSpan span{s, s, s, identity_morphism(s), identity_morphism(s)};
  const MergeResult r = pushout_merge(span);
  CHECK(oracle_isomorphic(r.merged, s));
  CHECK(r.renamings.empty());
  CHECK(r.constraint_dedups.size() == 2);
  CHECK(check_morphism(r.into_merged_left, s, r.merged).empty());
  CHECK(check_morphism(r.into_merged_right, s, r.merged).empty());
}

TEST_CASE("empty shared sketch gives the disjoint union") {
  const Sketch left = parse_sketch("sketch L { node A; node B; arrow f: A -> B; commute c: f = f; }");
  const Sketch right = parse_sketch("sketch R { node A; node C; arrow f: A -> C; commute c: f = f; }");
  const MergeResult r = pushout_merge({Sketch{}, left, right, {}, {}});
  CHECK(r.merged.nodes.size() == 4);
  CHECK(r.merged.arrows.size() == 2);
  CHECK(r.merged.constraints.size() == 2);
  CHECK(r.identifications.empty());
  CHECK(r.into_merged_right.node_map.at("A") == "A_2");
  CHECK(r.into_merged_right.arrow_map.at("f") == Path{"A_2", {"f_2"}});
  CHECK(*r.merged.find_arrow("f_2") == Arrow{"f_2", "A_2", "C"});
  CHECK(check_wellformed(r.merged).empty());

  const std::string report = format_merge_report(r);
  CHECK(contains(report, "rename right node A -> A_2"));
  CHECK(contains(report, "rename right arrow f -> f_2"));
  CHECK(contains(report, "rename right constraint c -> c_2"));
}

TEST_CASE("both sides extend a shared node") {
  const Sketch shared = parse_sketch("sketch S { node A; }");
  const Sketch left = parse_sketch("sketch L { node A; node B; arrow f: A -> B; }");
  const Sketch right = parse_sketch("sketch R { node X; node C; arrow g: X -> C; }");
  const MergeSpan span{shared, left, right, SketchMorphism{{{"A", "A"}}, {}}, SketchMorphism{{{"A", "X"}}, {}}};
  const MergeResult r = pushout_merge(span);

  const Sketch expected =
      parse_sketch("sketch M { node A; node B; node C; arrow f: A -> B; arrow g: A -> C; }");
  CHECK(oracle_isomorphic(r.merged, expected));
  CHECK(r.merged.find_node("X") == nullptr);
  CHECK(r.into_merged_right.node_map.at("X") == "A");
  CHECK(check_morphism(r.into_merged_left, left, r.merged).empty());
  CHECK(check_morphism(r.into_merged_right, right, r.merged).empty());
  CHECK(compose(span.into_left, r.into_merged_left) == compose(span.into_right, r.into_merged_right));
  CHECK(contains(format_merge_report(r), "identify node A left=A right=X"));
}

TEST_CASE("identified arrows carry constraints across") {
  const Sketch shared = parse_sketch("sketch S { node A; node B; arrow f: A -> B; }");
  const Sketch left = parse_sketch("sketch L { node A; node B; arrow f: A -> B; arrow g: A -> B; commute c: f = g; }");
  const Sketch right = parse_sketch("sketch R { node U; node V; arrow h: U -> V; arrow k: U -> V; commute c: h = k; }");
  const MergeSpan span{shared, left, right, identity_morphism(shared),
                       SketchMorphism{{{"A", "U"}, {"B", "V"}}, {{"f", Path{"U", {"h"}}}}}};
  const MergeResult r = pushout_merge(span);
  CHECK(r.merged.nodes.size() == 2);
  CHECK(r.merged.arrows.size() == 3);
  CHECK(r.merged.constraints.size() == 2);
  CHECK(r.merged.find_constraint("c_2") != nullptr);
}

TEST_CASE("invalid spans") {
  const Sketch shared = parse_sketch("sketch S { node A; node B; arrow f: A -> B; }");
  const Sketch left = parse_sketch("sketch L { node A; node M; node B; arrow f1: A -> M; arrow f2: M -> B; }");

  auto kind_of = [](const MergeSpan& span) {
    try {
      pushout_merge(span);
    } catch (const MergeError& e) {
      return e.kind();
    }
    FAIL("expected a merge error");
    return MergeError::Kind::IllFormedResult;
  };

  const MergeSpan composite{shared, left, shared,
                            SketchMorphism{{{"A", "A"}, {"B", "B"}}, {{"f", Path{"A", {"f1", "f2"}}}}},
                            identity_morphism(shared)};
  CHECK(kind_of(composite) == MergeError::Kind::CompositePathInSpan);

  const MergeSpan broken{shared, left, shared, SketchMorphism{{{"A", "A"}}, {}}, identity_morphism(shared)};
  CHECK(kind_of(broken) == MergeError::Kind::MorphismInvalid);
}

TEST_CASE("merge_theories") {
  const Sketch s = parse_sketch(R"(sketch S {
  node A; node B; node C;
  arrow f: A -> B; arrow g: A -> B;
  arrow h: A -> C; arrow k: A -> C;
})");
  const auto first = parse_rules("rule fg [conf=1 support=3]: forall x:A, y:B, z:B . f(x, y), g(x, z) => y = z;");
  const auto second = parse_rules("rule hk [conf=1 support=3]: forall x:A, y:C, z:C . h(x, y), k(x, z) => y = z;");
  const auto alias = parse_rules("rule gf [conf=1 support=3]: forall a:A, b:B, c:B . g(a, c), f(a, b) => b = c;");
  const Rational threshold(9, 10);

  CHECK(merge_theories(s, {}, {}, threshold).sketch == s);

  const TheoryMergeResult both = merge_theories(s, first, second, threshold);
  CHECK(both.sketch.constraints.size() == 2);
  CHECK(both.sketch.find_constraint("fg") != nullptr);
  CHECK(both.sketch.find_constraint("hk") != nullptr);
  REQUIRE(both.outcomes.size() == 2);
  CHECK(both.outcomes[0].outcome == InjectOutcome::Promoted);

  const TheoryMergeResult absorbed = merge_theories(s, first, alias, threshold);
  CHECK(absorbed.sketch == merge_theories(s, first, {}, threshold).sketch);
  CHECK(absorbed.dedups.size() == 1);

  const auto weak = parse_rules("rule w [conf=1/2 support=4]: forall x:A, y:B . f(x, y) => y = \"b\";");
  const TheoryMergeResult rejected = merge_theories(s, weak, {}, threshold);
  CHECK(rejected.outcomes.at(0).outcome == InjectOutcome::Rejected);
  CHECK(rejected.sketch == s);

  CHECK_THROWS_AS(merge_theories(s, parse_rules("rule u: forall x:Z . => x = x;"), {}, threshold), ClauseError);
}

TEST_CASE("consistency_report") {
  const Sketch s = parse_sketch(R"(sketch S {
  node A; node B;
  arrow f: A -> B; arrow g: A -> B;
  commute c: f = g;
})");
  const ConsistencyReport structural = consistency_report(s);
  CHECK(structural.clean());
  CHECK_FALSE(structural.validation.has_value());

  Instance i = empty_instance(s);
  i.carriers = {{"A", {"a"}}, {"B", {"b"}}};
  i.maps["f"] = {{"a", "b"}};
  i.maps["g"] = {{"a", "b"}};
  Sketch ruled = s;
  ruled.fuzzy_rules = parse_rules("rule r [conf=1 support=1]: forall x:A, y:B . f(x, y) => y = \"b\";");
  const ConsistencyReport full = consistency_report(ruled, &i);
  CHECK(full.clean());
  REQUIRE(full.rules.size() == 1);
  CHECK(full.rules[0].evaluation.confidence.is_one());

  auto kinds = [](const ConsistencyReport& r) {
    std::vector<Finding::Kind> out;
    for (const auto& f : r.findings) out.push_back(f.kind);
    return out;
  };

  Sketch dup = s;
  dup.constraints.push_back(CommutativityConstraint{"c", Path{"A", {"g"}}, Path{"A", {"f"}}});
  const auto dk = kinds(consistency_report(dup));
  CHECK(std::count(dk.begin(), dk.end(), Finding::Kind::DuplicateConstraint) == 1);
  CHECK(std::count(dk.begin(), dk.end(), Finding::Kind::DuplicateLabel) == 1);

  const Sketch empty_terminal = parse_sketch(R"(sketch T {
  node One; node U; node V;
  arrow i: U -> One; arrow j: V -> One;
  terminal t: One;
  terminal tu: U;
  terminal tv: V;
  coproduct co: One = U + V with i, j;
})");
  CHECK(kinds(consistency_report(empty_terminal)) == std::vector<Finding::Kind>{Finding::Kind::Unsatisfiable});

  Sketch contradicted = s;
  contradicted.fuzzy_rules =
      parse_rules("rule fg [conf=1/2 support=2]: forall x:A, y:B, z:B . f(x, y), g(x, z) => y = z;");
  CHECK(kinds(consistency_report(contradicted)) == std::vector<Finding::Kind>{Finding::Kind::ContradictedRule});

  Instance bad = i;
  bad.maps["g"] = {};
  bad.carriers["B"].insert("b2");
  bad.maps["g"] = {{"a", "b2"}};
  const ConsistencyReport failing = consistency_report(s, &bad);
  CHECK_FALSE(failing.clean());
  CHECK(contains(format_consistency_report(failing), "c"));
}
