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
#include <set>
#include <tuple>

#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "sketchkit/morphism.hpp"
#include "sketchkit/query.hpp"
#include "sketchkit/relational.hpp"
#include "sketchkit/validator.hpp"

using namespace sketchkit;
using namespace sketchkit::testing;

namespace {

using Key = std::tuple<std::string, int, std::string>;

std::multiset<Key> keys(const ViolationReport& r) {
  std::multiset<Key> out;
  for (const auto& v : r.violations) out.insert({v.label, static_cast<int>(v.kind), v.witness});
  return out;
}

/// Renames the atoms of `apex` to fresh ones, following them through
/// every arrow touching the apex.
Instance rename_apex(const Instance& i, const Sketch& s, const NodeId& apex) {
  std::map<Atom, Atom> fresh;
  for (const auto& a : i.carrier(apex)) fresh[a] = "alt_" + a;
  Instance out = i;
  out.carriers[apex].clear();
  for (const auto& [a, b] : fresh) out.carriers[apex].insert(b);
  for (const auto& arrow : s.arrows) {
    if (arrow.src != apex && arrow.dst != apex) continue;
    ArrowMap m;
    for (const auto& [x, y] : i.map(arrow.id)) {
      m.insert(arrow.src == apex ? fresh.at(x) : x, arrow.dst == apex ? fresh.at(y) : y);
    }
    out.maps[arrow.id] = m;
  }
  return out;
}

}  // namespace

TEST_CASE("eval_path is functorial") {
  Gen g(0x30de01);
  int checked = 0;
  for (int round = 0; round < 300; ++round) {
    const Sketch s = random_sketch(g);
    const Instance i = random_instance(g, s, {6, 0.0, 0.0, false});
    REQUIRE(check_totality(i, s).empty());
    const NodeId start = g.pick(s.nodes).id;
    const Path p = g.pick(paths_from(s, start, 2));
    const Path q = g.pick(paths_from(s, path_end(s, p), 2));
    const Path pq = compose_paths(s, p, q);
    for (const auto& x : i.carrier(start)) {
      CHECK(eval_path(i, pq, x) == eval_path(i, q, eval_path(i, p, x)));
      ++checked;
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("passing limit apexes have the canonical size") {
  Gen g(0x30de02);
  int passing = 0;
  for (int round = 0; round < 400; ++round) {
    const Sketch s = random_sketch(g);
    const Instance i = random_instance(g, s, {4, 1.0, 0.0, false});
    if (!check_totality(i, s).empty()) continue;
    for (const auto& c : s.constraints) {
      const auto* lim = std::get_if<FiniteLimitConstraint>(&c);
      if (!lim || !check_limit(i, s, *lim).empty()) continue;
      ++passing;
      CHECK(i.carrier(lim->apex).size() == oracle_limit_size(i, s, *lim));

      const Instance renamed = rename_apex(i, s, lim->apex);
      CHECK(check_limit(renamed, s, *lim).empty());

      if (!i.carrier(lim->apex).empty()) {
        Instance doubled = i;
        const Atom x = *i.carrier(lim->apex).begin();
        doubled.carriers[lim->apex].insert("copy_of_" + x);
        for (const auto& arrow : s.arrows) {
          if (arrow.src == lim->apex) doubled.maps[arrow.id].insert("copy_of_" + x, *i.map(arrow.id).image(x));
        }
        CHECK_FALSE(check_limit(doubled, s, *lim).empty());
      }
    }
  }
  CHECK(passing > 100);
}

TEST_CASE("dropping a constraint never adds violations") {
  Gen g(0x30de03);
  for (int round = 0; round < 400; ++round) {
    const Sketch s = random_sketch(g);
    if (s.constraints.empty()) continue;
    const Instance i = random_instance(g, s, {5, 0.5, 0.1, false});
    const auto full = keys(validate(i, s, {kUnlimited, false}));
    Sketch smaller = s;
    smaller.constraints.erase(smaller.constraints.begin() + g.uniform(0, static_cast<int>(s.constraints.size()) - 1));
    const auto reduced = keys(validate(i, smaller, {kUnlimited, false}));
    CHECK(std::includes(full.begin(), full.end(), reduced.begin(), reduced.end()));
  }
}

TEST_CASE("query rows, renaming and added columns") {
  Gen g(0x30de04);
  for (int round = 0; round < 300; ++round) {
    const Sketch s = random_sketch(g);
    const Instance i = random_instance(g, s, {6, 0.0, 0.0, round % 4 == 0});
    const NodeId root = g.pick(s.nodes).id;
    const auto paths = paths_from(s, root, 3);
    std::vector<ViewColumn> columns;
    const int n = g.uniform(0, 3);
    for (int k = 0; k < n; ++k) columns.push_back({"c" + std::to_string(k), g.pick(paths)});
    const View v = define_view(s, "V", root, columns);
    const DataStream d = run_query(i, v);
    CHECK(d.rows.size() == i.carrier(root).size());
    CHECK(d.header.size() == columns.size() + 1);

    const auto renaming = random_renaming(g, i);
    std::set<std::vector<Atom>> expected, got;
    for (const auto& row : d.rows) {
      std::vector<Atom> mapped;
      for (const auto& cell : row) mapped.push_back(renaming.at(cell));
      expected.insert(mapped);
    }
    for (const auto& row : run_query(rename_atoms(i, renaming), v).rows) got.insert(row);
    CHECK(got == expected);

    columns.push_back({"extra", g.pick(paths)});
    const DataStream wider = run_query(i, define_view(s, "W", root, columns));
    REQUIRE(wider.rows.size() == d.rows.size());
    for (std::size_t r = 0; r < d.rows.size(); ++r) {
      CHECK(std::equal(d.rows[r].begin(), d.rows[r].end(), wider.rows[r].begin()));
    }
  }
}

TEST_CASE("imports are well-formed and deterministic") {
  Gen g(0x30de05);
  for (int round = 0; round < 300; ++round) {
    const RelationalSchema rs = random_schema(g);
    const ImportResult a = import_schema(rs);
    CHECK(check_wellformed(a.sketch).empty());
    CHECK(structurally_equal(a.sketch, import_schema(rs).sketch));
  }
}

TEST_CASE("inclusion into a superset is a morphism") {
  Gen g(0x30de06);
  for (int round = 0; round < 300; ++round) {
    const Sketch s = random_sketch(g, {6, 8, 4, 0, round % 2 == 1});
    const Sketch big = random_superset(g, s);
    CHECK(check_morphism(identity_morphism(s), s, big).empty());
  }
}
