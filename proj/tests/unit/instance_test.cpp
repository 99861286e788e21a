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

#include "doctest.h"
#include "sketchkit/dsl.hpp"

using namespace sketchkit;

namespace {

const char* kSketch = R"(sketch S {
  node A; node B; node C;
  arrow f: A -> B;
  arrow g: B -> C;
})";

bool has(const std::vector<TotalityError>& errors, TotalityError::Kind kind, const std::string& element,
         const Atom& atom) {
  return std::any_of(errors.begin(), errors.end(),
                     [&](const auto& e) { return e.kind == kind && e.element == element && e.atom == atom; });
}

}  // namespace

TEST_CASE("atoms are nonempty and whitespace free") {
  CHECK(is_valid_atom("a1"));
  CHECK(is_valid_atom("x,y"));
  CHECK_FALSE(is_valid_atom(""));
  CHECK_FALSE(is_valid_atom("two words"));
  CHECK_FALSE(is_valid_atom("tab\there"));
}

TEST_CASE("empty_instance has every node and arrow") {
  const Sketch s = parse_sketch(kSketch);
  const Instance i = empty_instance(s, "I0");
  CHECK(i.name == "I0");
  CHECK(i.sketch_name == "S");
  CHECK(i.carriers.size() == 3);
  CHECK(i.maps.size() == 2);
  CHECK(check_totality(i, s).empty());
}

TEST_CASE("eval_path") {
  const Sketch s = parse_sketch(kSketch);
  const Instance i = parse_instance(R"(instance I of S {
  A = {a1, a2}; B = {b1, b2}; C = {c1};
  f = {a1 -> b2, a2 -> b1};
  g = {b1 -> c1, b2 -> c1};
})",
                                    s);
  CHECK(eval_path(i, Path::identity("A"), "a1") == "a1");
  CHECK(eval_path(i, Path{"A", {"f"}}, "a1") == "b2");
  CHECK(eval_path(i, Path{"A", {"f", "g"}}, "a1") == "c1");
  CHECK_THROWS_AS(eval_path(i, Path{"A", {"f"}}, "b1"), AtomNotInCarrier);
  CHECK_THROWS_AS(eval_path(i, Path::identity("A"), "zz"), AtomNotInCarrier);
}

TEST_CASE("check_totality") {
  const Sketch s = parse_sketch(kSketch);
  Instance i = empty_instance(s);
  i.carriers["A"] = {"a1", "a2"};
  i.carriers["B"] = {"b1"};
  i.carriers["C"] = {"c1"};
  i.maps["f"] = {{"a1", "b1"}};
  i.maps["g"] = {{"b1", "c1"}};

  SUBCASE("missing image") {
    const auto errors = check_totality(i, s);
    REQUIRE(errors.size() == 1);
    CHECK(has(errors, TotalityError::Kind::MissingImage, "f", "a2"));
  }
  SUBCASE("foreign image") {
    i.maps["f"].insert("a2", "b9");
    CHECK(has(check_totality(i, s), TotalityError::Kind::ForeignImage, "f", "b9"));
  }
  SUBCASE("foreign domain") {
    i.maps["f"].insert("a2", "b1");
    i.maps["g"].insert("b7", "c1");
    CHECK(has(check_totality(i, s), TotalityError::Kind::ForeignDomain, "g", "b7"));
  }
  SUBCASE("duplicate definition") {
    i.carriers["B"].insert("b2");
    i.maps["f"].insert("a2", "b1");
    i.maps["f"].insert("a1", "b2");
    i.maps["g"].insert("b2", "c1");
    const auto errors = check_totality(i, s);
    REQUIRE(errors.size() == 1);
    CHECK(has(errors, TotalityError::Kind::DuplicateDefinition, "f", "a1"));
  }
  SUBCASE("names outside the sketch") {
    i.maps["f"].insert("a2", "b1");
    i.carriers["Z"] = {};
    CHECK(check_totality(i, s).size() == 1);
    CHECK(check_totality(i, s)[0].kind == TotalityError::Kind::UnknownSymbol);
  }
  SUBCASE("total") {
    i.maps["f"].insert("a2", "b1");
    CHECK(check_totality(i, s).empty());
  }
}

TEST_CASE("empty carriers force empty maps") {
  const Sketch s = parse_sketch(kSketch);
  Instance i = empty_instance(s);
  CHECK(check_totality(i, s).empty());
  i.carriers["B"] = {"b1"};
  CHECK(check_totality(i, s).size() == 1);  // g has no image for b1
}

TEST_CASE("restrict_instance pulls carriers and composites back") {
  const Sketch big = parse_sketch(kSketch);
  const Sketch small = parse_sketch("sketch T { node X; node Y; arrow k: X -> Y; }");
  const Instance i = parse_instance(R"(instance I of S {
  A = {a1, a2}; B = {b1, b2}; C = {c1, c2};
  f = {a1 -> b2, a2 -> b1};
  g = {b1 -> c1, b2 -> c2};
})",
                                    big);
  const Instance r = restrict_instance(i, small, {{"X", "A"}, {"Y", "C"}}, {{"k", Path{"A", {"f", "g"}}}});
  CHECK(r.sketch_name == "T");
  CHECK(r.carrier("X") == std::set<Atom>{"a1", "a2"});
  CHECK(r.carrier("Y") == std::set<Atom>{"c1", "c2"});
  CHECK(*r.map("k").image("a1") == "c2");
  CHECK(*r.map("k").image("a2") == "c1");
  CHECK(check_totality(r, small).empty());
}
