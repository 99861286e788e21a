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

// Acceptance run: prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "sketchkit/dsl.hpp"
#include "sketchkit/horn.hpp"
#include "sketchkit/merge.hpp"
#include "sketchkit/morphism.hpp"
#include "sketchkit/relational.hpp"
#include "sketchkit/validator.hpp"

namespace fs = std::filesystem;
using namespace sketchkit;
using namespace sketchkit::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string failure;

  void fail(const std::string& why) {
    if (pass) failure = why;
    pass = false;
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

std::set<std::string> violated_labels(const ViolationReport& r) {
  std::set<std::string> out;
  for (const auto& v : r.violations) {
    if (v.kind != ViolationKind::TotalityFailure) out.insert(v.label);
  }
  return out;
}

// 1. validate agrees with the brute-force checker.
Outcome oracle_validation() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const int pairs = 5000;
  int valid = 0, invalid = 0, partial = 0;
  int checked[3][2] = {};  // [constraint kind][violated]
  for (int k = 0; k < pairs && o.pass; ++k) {
    Gen g(1000 + static_cast<std::uint64_t>(k));
    const Sketch s = random_sketch(g);
    InstanceShape shape;
    shape.repair = k % 3 == 0 ? 1.0 : 0.6;
    const Instance i = random_instance(g, s, shape);
    const ViolationReport report = validate(i, s, {kUnlimited, k % 2 == 1});
    const OracleVerdict verdict = oracle_validate(i, s);
    if (report.ok() != verdict.ok()) o.fail("verdict mismatch at seed " + std::to_string(1000 + k));
    if (verdict.total && violated_labels(report) != verdict.failing) {
      o.fail("failing constraints differ at seed " + std::to_string(1000 + k));
    }
    (verdict.ok() ? valid : invalid)++;
    partial += !verdict.total;
    if (verdict.total) {
      for (const auto& c : s.constraints) ++checked[c.index()][verdict.failing.count(label_of(c))];
    }
  }
  const double t = seconds_since(start);
  if (t >= 60.0) o.fail("took " + fmt_seconds(t));
  o.detail = std::to_string(pairs) + " pairs (" + std::to_string(valid) + " models, " + std::to_string(invalid) +
             " non-models, " + std::to_string(partial) + " non-total; commutativity " + std::to_string(checked[0][0]) + "/" + std::to_string(checked[0][1]) +
             ", limit " + std::to_string(checked[1][0]) + "/" + std::to_string(checked[1][1]) + ", coproduct " +
             std::to_string(checked[2][0]) + "/" + std::to_string(checked[2][1]) + " held/violated), agreement 100%, " +
             fmt_seconds(t);
  return o;
}

// 2. Canonical limits of the sugar forms against the closed formulas.
Outcome limit_cardinalities() {
  Outcome o;
  const Sketch s = parse_sketch(R"(sketch Limits {
  node A; node B; node C; node P; node E; node Q; node T;
  arrow f: A -> C; arrow g: B -> C; arrow h: A -> C;
  arrow p1: P -> A; arrow p2: P -> B; arrow e: E -> A; arrow q1: Q -> A; arrow q2: Q -> B;
  product prod: P = A * B with p1, p2;
  equalizer eqz: E = eq(f, h) with e;
  pullback pb: Q = f ×_C g with q1, q2;
  terminal term: T;
})");
  const auto& prod = std::get<FiniteLimitConstraint>(*s.find_constraint("prod"));
  const auto& eqz = std::get<FiniteLimitConstraint>(*s.find_constraint("eqz"));
  const auto& pb = std::get<FiniteLimitConstraint>(*s.find_constraint("pb"));
  const auto& term = std::get<FiniteLimitConstraint>(*s.find_constraint("term"));

  const int cases = 300;
  for (int k = 0; k < cases && o.pass; ++k) {
    Gen g(5000 + static_cast<std::uint64_t>(k));
    Instance i = empty_instance(s);
    auto fill = [&](const NodeId& n, int lo) {
      const int size = g.uniform(lo, 6);
      for (int a = 0; a < size; ++a) i.carriers[n].insert(n + std::to_string(a));
    };
    fill("C", 1);
    fill("A", 0);
    fill("B", 0);
    const std::vector<Atom> cs(i.carriers["C"].begin(), i.carriers["C"].end());
    for (const ArrowId f : {"f", "g", "h"}) {
      const NodeId src = f == std::string("g") ? "B" : "A";
      for (const auto& x : i.carriers[src]) i.maps[f].insert(x, g.pick(cs));
    }
    auto f = [&](const ArrowId& a, const Atom& x) { return *i.maps[a].image(x); };

    const std::size_t na = i.carriers["A"].size(), nb = i.carriers["B"].size();
    std::size_t equal = 0, matching = 0;
    for (const auto& a : i.carriers["A"]) {
      equal += f("f", a) == f("h", a);
      for (const auto& b : i.carriers["B"]) matching += f("f", a) == f("g", b);
    }
    if (compute_canonical_limit(i, s, prod).size() != na * nb) o.fail("product size");
    if (compute_canonical_limit(i, s, eqz).size() != equal) o.fail("equalizer size");
    if (compute_canonical_limit(i, s, pb).size() != matching) o.fail("pullback size");
    if (compute_canonical_limit(i, s, term).size() != 1) o.fail("terminal size");
    if (!o.pass) o.failure += " at seed " + std::to_string(5000 + k);
  }
  o.detail = std::to_string(cases) + " instances x 4 limit forms, exact";
  return o;
}

// 3. parse . print is the identity; printing is byte-deterministic.
Outcome dsl_round_trip() {
  Outcome o;
  const int cases = 1200;
  for (int k = 0; k < cases && o.pass; ++k) {
    Gen g(9000 + static_cast<std::uint64_t>(k));
    SketchShape shape;
    shape.max_rules = 3;
    shape.odd_names = k % 2 == 1;
    const Sketch s = random_sketch(g, shape);
    const std::string text = print_sketch(s);
    const std::string seed = " at seed " + std::to_string(9000 + k);
    try {
      const Sketch back = parse_sketch(text);
      if (!structurally_equal(back, s)) o.fail("sketch differs after round trip" + seed);
      if (print_sketch(back) != text || print_sketch(s) != text) o.fail("sketch print not deterministic" + seed);

      InstanceShape ishape;
      ishape.odd_atoms = k % 3 == 0;
      const Instance i = random_instance(g, s, ishape);
      const std::string itext = print_instance(i);
      const Instance iback = parse_instance(itext, s);
      if (!(iback == i)) o.fail("instance differs after round trip" + seed);
      if (print_instance(iback) != itext || print_instance(i) != itext) o.fail("instance print not deterministic" + seed);
    } catch (const ParseError& e) {
      o.fail(std::string("parse error ") + e.what() + seed);
    }
  }
  o.detail = std::to_string(cases) + " sketches and " + std::to_string(cases) + " instances";
  return o;
}

// 4. check_commutativity passes iff the derived clause has confidence 1.
Outcome horn_soundness() {
  Outcome o;
  const int cases = 800;
  int holds = 0, breaks = 0;
  for (int k = 0; k < cases && o.pass; ++k) {
    Gen g(13000 + static_cast<std::uint64_t>(k));
    SketchShape shape;
    shape.max_constraints = 2;
    const Sketch s = random_sketch(g, shape);
    InstanceShape ishape;
    ishape.max_atoms = 4;
    ishape.repair = 0;
    ishape.mutate = 0;
    const Instance i = random_instance(g, s, ishape);

    std::vector<CommutativityConstraint> constraints;
    for (const auto& c : s.constraints) {
      if (const auto* cc = std::get_if<CommutativityConstraint>(&c)) constraints.push_back(*cc);
    }
    const NodeId start = g.pick(s.nodes).id;
    const auto paths = paths_from(s, start, 3);
    const Path& p = g.pick(paths);
    std::vector<Path> same_end;
    for (const auto& q : paths) {
      if (path_end(s, q) == path_end(s, p)) same_end.push_back(q);
    }
    constraints.push_back({"fresh", p, g.pick(same_end)});

    for (const auto& c : constraints) {
      const bool passes = check_commutativity(i, c).empty();
      const HornClause clause = clause_from_commutativity(s, c);
      const ClauseEvaluation ev = eval_clause(i, clause);
      const std::string seed = " at seed " + std::to_string(13000 + k);
      if (passes != ev.confidence.is_one()) o.fail("commutativity and clause disagree" + seed);
      if (passes && ev.support != static_cast<std::int64_t>(i.carrier(c.left.start).size())) {
        o.fail("support is not the start carrier size" + seed);
      }
      const auto back = commutativity_from_clause(clause, s);
      const auto* cc = std::get_if<CommutativityConstraint>(&back);
      if (!cc || cc->left != c.left || cc->right != c.right) o.fail("translation round trip" + seed);
      (passes ? holds : breaks)++;
    }
  }
  o.detail = std::to_string(holds + breaks) + " constraints over " + std::to_string(cases) + " cases (" +
             std::to_string(holds) + " hold, " + std::to_string(breaks) + " fail), round trip exact";
  return o;
}

// 5. The 3-of-4 example, then eval_clause against full grounding.
Outcome confidence_arithmetic() {
  Outcome o;
  const Sketch s = parse_sketch(R"(sketch Library {
  node Book; node Person;
  arrow writtenBy: Book -> Person;
  arrow editedBy: Book -> Person;
})");
  const Instance i = parse_instance(R"(instance I of Library {
  Book = {b1, b2, b3, b4};
  Person = {p1, p2, p3};
  writtenBy = {b1 -> p1, b2 -> p2, b3 -> p3, b4 -> p1};
  editedBy = {b1 -> p1, b2 -> p2, b3 -> p3, b4 -> p2};
})",
                                    s);
  const auto rules = parse_rules("rule same_person: forall b:Book, p:Person . writtenBy(b, p) => editedBy(b, p);");
  const ClauseEvaluation ev = eval_clause(i, rules.at(0));
  if (ev.support != 4 || ev.confidence != Rational(3, 4) || ev.vacuous) {
    o.fail("worked example gave support " + std::to_string(ev.support) + " confidence " + ev.confidence.str());
  }
  const GroundCount ref = oracle_ground(i, rules.at(0));
  if (ref.support != 4 || ref.hits != 3) o.fail("grounding oracle disagrees on the worked example");

  const int cases = 3000;
  int vacuous = 0;
  for (int k = 0; k < cases && o.pass; ++k) {
    Gen g(17000 + static_cast<std::uint64_t>(k));
    SketchShape shape;
    shape.max_nodes = 4;
    shape.max_arrows = 6;
    shape.max_constraints = 2;
    const Sketch rs = random_sketch(g, shape);
    InstanceShape ishape;
    ishape.max_atoms = 6;
    ishape.repair = 0;
    ishape.mutate = 0;
    const Instance ri = random_instance(g, rs, ishape);
    const HornClause c = random_clause(g, rs, 3, {"a0", "a1", "a3", "p0"});
    const ClauseEvaluation got = eval_clause(ri, c);
    const GroundCount want = oracle_ground(ri, c);
    const Rational conf = want.support == 0 ? Rational(1) : Rational(want.hits, want.support);
    if (got.support != want.support || got.confidence != conf || got.vacuous != (want.support == 0)) {
      o.fail("mismatch at seed " + std::to_string(17000 + k) + ": got " + std::to_string(got.support) + " " +
             got.confidence.str() + ", want " + std::to_string(want.support) + " " + conf.str());
    }
    vacuous += want.support == 0;
  }
  o.detail = "example support 4 confidence " + ev.confidence.str() + "; " + std::to_string(cases) +
             " random rule/instance pairs (" + std::to_string(vacuous) + " vacuous) exact";
  return o;
}

Sketch disjoint_union(const Sketch& a, const Sketch& b) {
  Sketch out = a;
  SketchMorphism m;
  for (const auto& n : b.nodes) {
    m.node_map[n.id] = "R." + n.id;
    out.nodes.push_back({"R." + n.id, n.kind});
  }
  for (const auto& f : b.arrows) {
    m.arrow_map[f.id] = Path{"R." + f.src, {"R." + f.id}};
    out.arrows.push_back({"R." + f.id, "R." + f.src, "R." + f.dst});
  }
  for (const auto& c : b.constraints) out.constraints.push_back(*map_constraint(m, c));
  for (const auto& r : b.fuzzy_rules) out.fuzzy_rules.push_back(r);
  return out;
}

// Cone over the span given by a random quotient of the merged sketch's
// nodes; the quotient map itself is the mediator.
std::optional<std::pair<Sketch, SketchMorphism>> quotient_cone(Gen& g, const Sketch& merged) {
  Sketch t;
  t.name = "T";
  SketchMorphism q;
  std::vector<NodeId> classes;
  for (const auto& n : merged.nodes) {
    if (!classes.empty() && g.chance(0.3)) {
      q.node_map[n.id] = g.pick(classes);
    } else {
      classes.push_back("Q" + std::to_string(classes.size()));
      t.nodes.push_back({classes.back(), n.kind});
      q.node_map[n.id] = classes.back();
    }
  }
  for (const auto& f : merged.arrows) {
    t.arrows.push_back({"t_" + f.id, q.node_map.at(f.src), q.node_map.at(f.dst)});
    q.arrow_map[f.id] = Path{q.node_map.at(f.src), {"t_" + f.id}};
  }
  for (const auto& c : merged.constraints) t.constraints.push_back(*map_constraint(q, c));
  if (!check_wellformed(t).empty()) return std::nullopt;
  return std::pair{t, q};
}

// 6. Pushout laws.
Outcome pushout_properties() {
  Outcome o;
  int self = 0, disjoint = 0, universal = 0, restricted = 0, spans = 0, ill_formed = 0;

  for (int k = 0; k < 150 && o.pass; ++k) {
    Gen g(21000 + static_cast<std::uint64_t>(k));
    const Sketch s = random_sketch(g);
    const auto id = identity_morphism(s);
    const MergeResult r = pushout_merge({s, s, s, id, id});
    if (!oracle_isomorphic(r.merged, s)) o.fail("self-merge not isomorphic at seed " + std::to_string(21000 + k));
    ++self;
  }

  for (int k = 0; k < 150 && o.pass; ++k) {
    Gen g(23000 + static_cast<std::uint64_t>(k));
    SketchShape shape;
    shape.max_nodes = 4;
    shape.max_arrows = 5;
    shape.max_constraints = 2;
    Sketch a = random_sketch(g, shape);
    Sketch b = random_sketch(g, shape);
    a.name = "L";
    b.name = "R";
    Sketch empty;
    empty.name = "E";
    const MergeResult r = pushout_merge({empty, a, b, {}, {}});
    if (!oracle_isomorphic(r.merged, disjoint_union(a, b))) {
      o.fail("empty-shared merge is not the disjoint union at seed " + std::to_string(23000 + k));
    }
    ++disjoint;
  }

  for (int k = 0; k < 400 && o.pass && (universal < 200 || restricted < 150); ++k) {
    Gen g(27000 + static_cast<std::uint64_t>(k));
    const MergeSpan span = random_span(g, 4);
    MergeResult r;
    try {
      r = pushout_merge(span);
    } catch (const MergeError& e) {
      // Gluing can make a limit degenerate (apex glued to a base node); such
      // spans have no well-formed pushout and are reported, not merged.
      if (e.kind() != MergeError::Kind::IllFormedResult) throw;
      ++ill_formed;
      continue;
    }
    ++spans;
    const std::string seed = " at seed " + std::to_string(27000 + k);
    if (!check_morphism(r.into_merged_left, span.left, r.merged).empty() ||
        !check_morphism(r.into_merged_right, span.right, r.merged).empty()) {
      o.fail("result morphism invalid" + seed);
    }
    if (!(compose(span.into_left, r.into_merged_left) == compose(span.into_right, r.into_merged_right))) {
      o.fail("square does not commute" + seed);
    }

    // Superset cone: inclusion of the merge into a bigger sketch.
    Sketch bigger = random_superset(g, r.merged);
    const auto incl = identity_morphism(r.merged);
    if (count_mediators(r.merged, r.into_merged_left, r.into_merged_right, span.left, span.right, bigger,
                        compose(r.into_merged_left, incl), compose(r.into_merged_right, incl)) != 1) {
      o.fail("no unique mediator into a superset" + seed);
    }
    ++universal;
    if (auto cone = quotient_cone(g, r.merged)) {
      const auto& [t, q] = *cone;
      if (count_mediators(r.merged, r.into_merged_left, r.into_merged_right, span.left, span.right, t,
                          compose(r.into_merged_left, q), compose(r.into_merged_right, q)) != 1) {
        o.fail("no unique mediator into a quotient" + seed);
      }
      ++universal;
    }

    for (int attempt = 0; attempt < 40; ++attempt) {
      InstanceShape ishape;
      ishape.max_atoms = 3;
      ishape.repair = 1.0;
      ishape.mutate = 0;
      const Instance j = random_instance(g, r.merged, ishape);
      if (!validate(j, r.merged).ok()) continue;
      const Instance jl =
          restrict_instance(j, span.left, r.into_merged_left.node_map, r.into_merged_left.arrow_map);
      const Instance jr =
          restrict_instance(j, span.right, r.into_merged_right.node_map, r.into_merged_right.arrow_map);
      if (!validate(jl, span.left).ok() || !validate(jr, span.right).ok()) o.fail("restriction broke a model" + seed);
      ++restricted;
      break;
    }
  }
  if (universal < 100) o.fail("only " + std::to_string(universal) + " universal-property cases");
  if (restricted < 100) o.fail("only " + std::to_string(restricted) + " restriction cases");
  o.detail = std::to_string(self) + " self-merges, " + std::to_string(disjoint) + " disjoint unions, " +
             std::to_string(universal) + " mediator searches over " + std::to_string(spans) + " spans, " +
             std::to_string(restricted) + " restricted models, " + std::to_string(ill_formed) +
             " spans without a well-formed pushout";
  return o;
}

// 7. Import determinism, inclusion morphisms, and the Order/Customer sketch.
Outcome relational_import() {
  Outcome o;
  const int cases = 300;
  for (int k = 0; k < cases && o.pass; ++k) {
    Gen g(31000 + static_cast<std::uint64_t>(k));
    const RelationalSchema rs = random_schema(g);
    const Sketch a = import_schema(rs).sketch;
    const Sketch b = import_schema(rs).sketch;
    const std::string seed = " at seed " + std::to_string(31000 + k);
    if (print_sketch(a) != print_sketch(b) || !structurally_equal(a, b)) o.fail("import not deterministic" + seed);
    if (!check_wellformed(a).empty()) o.fail("imported sketch ill-formed" + seed);
    const Sketch sup = random_superset(g, a);
    if (!check_morphism(identity_morphism(a), a, sup).empty()) o.fail("inclusion rejected" + seed);
    const Sketch s = random_sketch(g);
    if (!check_morphism(identity_morphism(s), s, random_superset(g, s)).empty()) o.fail("inclusion rejected" + seed);
  }

  const RelationalSchema shop = parse_schema(R"(schema name=Shop
table name=Customer
column table=Customer name=id domain=Int
pk table=Customer columns=id
table name=Order
column table=Order name=id domain=Int
column table=Order name=custId domain=Int
pk table=Order columns=id
fk table=Order columns=custId target=Customer
)");
  Sketch expected;
  expected.name = "Shop";
  expected.nodes = {{"Customer", NodeKind::Entity}, {"Order", NodeKind::Entity}, {"Int", NodeKind::Attribute}};
  expected.arrows = {{"Customer_id", "Customer", "Int"},
                     {"Order_id", "Order", "Int"},
                     {"Order_custId", "Order", "Int"},
                     {"Order_custId_fk", "Order", "Customer"}};
  expected.constraints = {CommutativityConstraint{"Order_custId_fk_key", Path{"Order", {"Order_custId"}},
                                                  Path{"Order", {"Order_custId_fk", "Customer_id"}}}};
  const ImportResult shop_sketch = import_schema(shop);
  if (!structurally_equal(shop_sketch.sketch, expected) || !shop_sketch.warnings.empty()) {
    o.fail("Order/Customer import differs from the expected sketch");
  }
  o.detail = std::to_string(cases) + " schemas imported twice byte-identically, " + std::to_string(2 * cases) +
             " inclusion morphisms accepted, Order/Customer sketch exact";
  return o;
}

// 8. The command-line workflow from schema to promoted rule.
Outcome end_to_end() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::string tmpl = (fs::temp_directory_path() / "sketchkit-accept-XXXXXX").string();
  if (!mkdtemp(tmpl.data())) {
    o.fail("cannot create a temporary directory");
    return o;
  }
  const fs::path dir = tmpl;
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  };
  auto read = [&](const std::string& name) {
    std::ifstream in(dir / name);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  auto run = [&](std::vector<std::string> args, std::string* out = nullptr) {
    std::ostringstream so, se;
    const int code = cli::run(args, so, se);
    if (out) *out = so.str();
    return code;
  };

  const std::string schema = write("shop.schema", R"(schema name=Shop
table name=Customer
column table=Customer name=id domain=Int
column table=Customer name=name domain=Text
column table=Customer name=region domain=Text
pk table=Customer columns=id
table name=Order
column table=Order name=id domain=Int
column table=Order name=custId domain=Int
column table=Order name=region domain=Text
pk table=Order columns=id
fk table=Order columns=custId target=Customer
)");
  if (run({"import-rel", "--schema", schema, "--out", (dir / "base.skt").string()}) != 0) o.fail("import-rel failed");

  // Enrichment: orders carry a denormalized customer name.
  std::string enriched = read("base.skt");
  const auto close = enriched.rfind('}');
  enriched.insert(close,
                  "  arrow Order_custName: Order -> Text;\n"
                  "  commute cust_name: Order_custName = Order_custId_fk.Customer_name;\n");
  const std::string sketch = write("shop.skt", enriched);

  const std::string instance = write("shop.ins", R"(instance Now of Shop {
  Customer = {c1, c2};
  Order = {o1, o2, o3};
  Int = {1, 2, 10, 11, 12};
  Text = {"Lovelace,Ada", Hopper, north, south};
  Customer_id = {c1 -> 1, c2 -> 2};
  Customer_name = {c1 -> "Lovelace,Ada", c2 -> Hopper};
  Customer_region = {c1 -> north, c2 -> south};
  Order_id = {o1 -> 10, o2 -> 11, o3 -> 12};
  Order_custId = {o1 -> 1, o2 -> 2, o3 -> 1};
  Order_region = {o1 -> north, o2 -> south, o3 -> north};
  Order_custId_fk = {o1 -> c1, o2 -> c2, o3 -> c1};
  Order_custName = {o1 -> "Lovelace,Ada", o2 -> Hopper, o3 -> "Lovelace,Ada"};
}
)");
  std::string out;
  if (run({"validate", "--sketch", sketch, "--instance", instance}, &out) != 0) o.fail("first validate: " + out);

  const std::string view = write("orders.view", R"(view Orders of Order {
  customer = Order_custId_fk.Customer_name;
  region = Order_region;
}
)");
  if (run({"query", "--sketch", sketch, "--instance", instance, "--view", view}, &out) != 0) o.fail("query failed");
  const std::string csv =
      "Order,customer,region\n"
      "o1,\"Lovelace,Ada\",north\n"
      "o2,Hopper,south\n"
      "o3,\"Lovelace,Ada\",north\n";
  if (out != csv) o.fail("query produced\n" + out);

  const std::string rules = write("shop.rules",
                                  "rule region_follows_customer: forall x:Order, l1:Text, r1:Customer, r2:Text .\n"
                                  "  Order_region(x, l1), Order_custId_fk(x, r1), Customer_region(r1, r2) => l1 = r2;\n");
  if (run({"rules", "eval", "--sketch", sketch, "--instance", instance, "--rules", rules}, &out) != 0 ||
      out != "region_follows_customer support=3 conf=1/1\n") {
    o.fail("rules eval printed " + out);
  }
  const std::string promoted = (dir / "promoted.skt").string();
  if (run({"rules", "inject", "--sketch", sketch, "--instance", instance, "--rules", rules, "--out", promoted},
          &out) != 0 ||
      out.find("promoted region_follows_customer") == std::string::npos) {
    o.fail("rules inject printed " + out);
  }
  const Sketch after = parse_sketch(read("promoted.skt"));
  if (after.constraints.size() != 3) o.fail("promoted sketch has " + std::to_string(after.constraints.size()) + " constraints");
  if (run({"validate", "--sketch", promoted, "--instance", instance}, &out) != 0) o.fail("re-validate: " + out);

  fs::remove_all(dir);
  const double t = seconds_since(start);
  if (t >= 5.0) o.fail("took " + fmt_seconds(t));
  o.detail = "import, enrich, validate, query, eval, inject, re-validate in " + fmt_seconds(t);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 validation oracle equivalence", oracle_validation},
      {"2 limit cardinalities", limit_cardinalities},
      {"3 DSL round trip", dsl_round_trip},
      {"4 clause/commutativity soundness", horn_soundness},
      {"5 confidence arithmetic", confidence_arithmetic},
      {"6 pushout properties", pushout_properties},
      {"7 relational import", relational_import},
      {"8 end-to-end workflow", end_to_end},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << (o.pass ? o.detail : o.failure) << std::endl;
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
