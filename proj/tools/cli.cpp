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

#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "sketchkit/dsl.hpp"
#include "sketchkit/hierarchy.hpp"
#include "sketchkit/horn.hpp"
#include "sketchkit/merge.hpp"
#include "sketchkit/query.hpp"
#include "sketchkit/relational.hpp"
#include "sketchkit/validator.hpp"

#ifndef SKETCHKIT_VERSION
#define SKETCHKIT_VERSION "0.0.0"
#endif

namespace sketchkit::cli {

namespace {

namespace fs = std::filesystem;

struct Failure {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kUsage, "cannot read '" + path + "'"};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text) || !out.flush()) throw Failure{kUsage, "cannot write '" + path + "'"};
}

// Writes to the file if one was named, else to stdout.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_file(path, text);
  }
}

Sketch load_sketch(const std::string& path) { return parse_sketch(read_file(path), path); }
Instance load_instance(const std::string& path, const Sketch& s) { return parse_instance(read_file(path), s, path); }

std::vector<HornClause> load_rules(const std::vector<std::string>& paths) {
  std::vector<HornClause> rules;
  for (const auto& p : paths) {
    auto more = parse_rules(read_file(p), p);
    rules.insert(rules.end(), more.begin(), more.end());
  }
  return rules;
}

Rational parse_threshold(const std::string& text) {
  Rational t;
  try {
    t = Rational::parse(text);
  } catch (const std::exception&) {
    throw Failure{kUsage, "threshold '" + text + "' is not a number"};
  }
  if (t < Rational(0) || t > Rational(1)) throw Failure{kUsage, "threshold must lie in [0, 1]"};
  return t;
}

struct Args {
  std::string sketch, instance, schema, out, previous, report = "text", src, dst, morphism, view, span, hierarchy;
  std::vector<std::string> rules;
  std::string threshold = "0.9";
  std::size_t max_witnesses = 20;
  bool parallel = false;
};

int cmd_validate(const Args& a, std::ostream& out) {
  const Sketch s = load_sketch(a.sketch);
  const Instance i = load_instance(a.instance, s);
  const ViolationReport r = validate(i, s, {a.max_witnesses, a.parallel});
  out << (a.report == "machine" ? format_report_machine(r) : format_report_text(r));
  return r.ok() ? kOk : kFindings;
}

int cmd_import_rel(const Args& a, std::ostream& out, std::ostream& err) {
  if (!a.previous.empty() && a.out.empty()) throw Failure{kUsage, "--previous needs --out"};
  const RelationalSchema rs = parse_schema(read_file(a.schema), a.schema);
  const ImportResult r = import_schema(rs);
  for (const auto& w : r.warnings) err << "warning: " << to_string(w.kind) << ": " << w.message << "\n";
  emit(a.out, print_sketch(r.sketch), out);
  if (!a.previous.empty()) out << sketch_diff(load_sketch(a.previous), r.sketch);
  return kOk;
}

int cmd_check_compat(const Args& a, std::ostream& out) {
  const Sketch src = load_sketch(a.src);
  const Sketch dst = load_sketch(a.dst);
  const SketchMorphism m = parse_morphism(read_file(a.morphism), dst, a.morphism);
  const auto errors = check_morphism(m, src, dst);
  for (const auto& e : errors) out << to_string(e.kind) << " " << e.element << ": " << e.message << "\n";
  return errors.empty() ? kOk : kFindings;
}

int cmd_query(const Args& a, std::ostream& out) {
  const Sketch s = load_sketch(a.sketch);
  const Instance i = load_instance(a.instance, s);
  const View v = parse_view(read_file(a.view), s, a.view);
  DataStream d;
  try {
    d = run_query(i, v);
  } catch (const QueryError& e) {
    throw Failure{kFindings, e.what()};
  }
  emit(a.out, to_csv(d), out);
  return kOk;
}

int cmd_rules_eval(const Args& a, std::ostream& out) {
  const Sketch s = load_sketch(a.sketch);
  const Instance i = load_instance(a.instance, s);
  const std::vector<HornClause> rules = a.rules.empty() ? s.fuzzy_rules : load_rules(a.rules);
  for (const auto& r : rules) {
    check_clause(s, r);
    const ClauseEvaluation e = eval_clause(i, r);
    out << r.name << " support=" << e.support << " conf=" << e.confidence.str() << (e.vacuous ? " vacuous" : "") << "\n";
  }
  return kOk;
}

void print_dedups(const std::vector<DedupDecision>& dedups, std::ostream& out) {
  for (const auto& d : dedups) {
    out << "dropped " << d.dropped
        << (d.reason == DedupDecision::Reason::AlphaEquivalent ? ": duplicates " : ": subsumed by ") << d.kept << "\n";
  }
}

int cmd_rules_inject(const Args& a, std::ostream& out) {
  const Sketch s = load_sketch(a.sketch);
  const Rational threshold = parse_threshold(a.threshold);
  std::vector<HornClause> first = load_rules({a.rules.front()});
  std::vector<HornClause> rest = load_rules({a.rules.begin() + 1, a.rules.end()});
  if (!a.instance.empty()) {
    const Instance i = load_instance(a.instance, s);
    for (auto* group : {&first, &rest}) {
      for (auto& r : *group) {
        check_clause(s, r);
        const ClauseEvaluation e = eval_clause(i, r);
        r.support = e.support;
        r.confidence = e.confidence;
      }
    }
  }
  const TheoryMergeResult result = merge_theories(s, first, rest, threshold);
  print_dedups(result.dedups, out);
  bool rejected = false;
  for (const auto& o : result.outcomes) {
    out << to_string(o.outcome) << " " << o.rule << ": " << o.detail << "\n";
    rejected = rejected || o.outcome == InjectOutcome::Rejected;
  }
  write_file(a.out, print_sketch(result.sketch));
  return rejected ? kFindings : kOk;
}

int cmd_rules_refresh(const Args& a, std::ostream& out) {
  const Sketch s = load_sketch(a.sketch);
  const Instance i = load_instance(a.instance, s);
  const RefreshResult r = update_confidences(s, i);
  write_file(a.out, print_sketch(r.sketch));
  for (const auto& name : r.promotion_candidates) out << "promotion-candidate " << name << "\n";
  for (const auto& name : r.vacuous) out << "vacuous " << name << "\n";
  return kOk;
}

int cmd_rules_dedup(const Args& a, std::ostream& out) {
  std::vector<DedupDecision> dedups;
  const auto kept = deduplicate_rules(load_rules(a.rules), &dedups);
  for (const auto& d : dedups) {
    out << "// dropped " << d.dropped
        << (d.reason == DedupDecision::Reason::AlphaEquivalent ? ": duplicates " : ": subsumed by ") << d.kept << "\n";
  }
  out << print_rules(kept);
  return kOk;
}

int cmd_merge(const Args& a, std::ostream& out) {
  const SpanFile f = parse_span_file(read_file(a.span), a.span);
  const fs::path base = fs::path(a.span).parent_path();
  auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? p : (base / p).string(); };
  MergeSpan span;
  span.shared = load_sketch(resolve(f.shared));
  span.left = load_sketch(resolve(f.left));
  span.right = load_sketch(resolve(f.right));
  span.into_left = parse_morphism(read_file(resolve(f.into_left)), span.left, resolve(f.into_left));
  span.into_right = parse_morphism(read_file(resolve(f.into_right)), span.right, resolve(f.into_right));
  MergeResult r;
  try {
    r = pushout_merge(span);
  } catch (const MergeError& e) {
    throw Failure{kFindings, e.what()};
  }
  write_file(a.out, print_sketch(r.merged));
  out << format_merge_report(r);
  return kOk;
}

int cmd_flatten(const Args& a, std::ostream& out) {
  const Hierarchy h = parse_hierarchy(read_file(a.hierarchy), a.hierarchy);
  Sketch s;
  try {
    s = flatten(h);
  } catch (const FlattenError& e) {
    throw Failure{kInvalid, a.hierarchy + ": error: " + e.what()};
  }
  emit(a.out, print_sketch(s), out);
  return kOk;
}

int cmd_consistency(const Args& a, std::ostream& out) {
  const Sketch s = load_sketch(a.sketch);
  std::optional<Instance> i;
  if (!a.instance.empty()) i = load_instance(a.instance, s);
  const ConsistencyReport r = consistency_report(s, i ? &*i : nullptr);
  out << format_consistency_report(r);
  return r.clean() ? kOk : kFindings;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sketch data model toolkit: validation, relational import, views, rules and merges.", "sketchkit"};
  app.set_version_flag("--version", "sketchkit " SKETCHKIT_VERSION);
  app.require_subcommand(1);

  Args a;
  std::function<int()> action;
  auto on = [&](CLI::App* sub, std::function<int()> f) { sub->callback([&action, f] { action = f; }); };

  auto* validate_cmd = app.add_subcommand("validate", "Check an instance against a sketch");
  validate_cmd->add_option("--sketch", a.sketch, "Sketch file (.skt)")->required();
  validate_cmd->add_option("--instance", a.instance, "Instance file (.ins)")->required();
  validate_cmd->add_option("--report", a.report, "Report format")->check(CLI::IsMember({"text", "machine"}));
  validate_cmd->add_option("--max-witnesses", a.max_witnesses, "Witnesses listed per constraint");
  validate_cmd->add_flag("--parallel", a.parallel, "Check constraints concurrently");
  on(validate_cmd, [&] { return cmd_validate(a, out); });

  auto* import_cmd = app.add_subcommand("import-rel", "Import a relational schema as a sketch");
  import_cmd->add_option("--schema", a.schema, "Schema file")->required();
  import_cmd->add_option("--out", a.out, "Output sketch (default: stdout)");
  import_cmd->add_option("--previous", a.previous, "Earlier sketch to diff against; diff goes to stdout");
  on(import_cmd, [&] { return cmd_import_rel(a, out, err); });

  auto* compat_cmd = app.add_subcommand("check-compat", "Check a sketch morphism");
  compat_cmd->add_option("--src", a.src, "Source sketch")->required();
  compat_cmd->add_option("--dst", a.dst, "Target sketch")->required();
  compat_cmd->add_option("--morphism", a.morphism, "Morphism file (.map)")->required();
  on(compat_cmd, [&] { return cmd_check_compat(a, out); });

  auto* query_cmd = app.add_subcommand("query", "Evaluate a view as CSV");
  query_cmd->add_option("--sketch", a.sketch, "Sketch file")->required();
  query_cmd->add_option("--instance", a.instance, "Instance file")->required();
  query_cmd->add_option("--view", a.view, "View file (.view)")->required();
  query_cmd->add_option("--out", a.out, "Output CSV (default: stdout)");
  on(query_cmd, [&] { return cmd_query(a, out); });

  auto* rules_cmd = app.add_subcommand("rules", "Evaluate, inject, refresh or deduplicate Horn rules");
  rules_cmd->require_subcommand(1);
  auto* eval_cmd = rules_cmd->add_subcommand("eval", "Print support and confidence of each rule");
  eval_cmd->add_option("--sketch", a.sketch, "Sketch file")->required();
  eval_cmd->add_option("--instance", a.instance, "Instance file")->required();
  eval_cmd->add_option("--rules", a.rules, "Rule files (default: the sketch's fuzzy rules)");
  on(eval_cmd, [&] { return cmd_rules_eval(a, out); });

  auto* inject_cmd = rules_cmd->add_subcommand("inject", "Add rules to a sketch as constraints or fuzzy rules");
  inject_cmd->add_option("--sketch", a.sketch, "Sketch file")->required();
  inject_cmd->add_option("--rules", a.rules, "Rule files; several are merged and deduplicated")->required();
  inject_cmd->add_option("--instance", a.instance, "Measure the rules on this instance first");
  inject_cmd->add_option("--threshold", a.threshold, "Lowest confidence kept as a fuzzy rule");
  inject_cmd->add_option("--out", a.out, "Output sketch")->required();
  on(inject_cmd, [&] { return cmd_rules_inject(a, out); });

  auto* refresh_cmd = rules_cmd->add_subcommand("refresh", "Re-measure a sketch's fuzzy rules");
  refresh_cmd->add_option("--sketch", a.sketch, "Sketch file")->required();
  refresh_cmd->add_option("--instance", a.instance, "Instance file")->required();
  refresh_cmd->add_option("--out", a.out, "Output sketch")->required();
  on(refresh_cmd, [&] { return cmd_rules_refresh(a, out); });

  auto* dedup_cmd = rules_cmd->add_subcommand("dedup", "Print the rules left after deduplication");
  dedup_cmd->add_option("--rules", a.rules, "Rule files")->required();
  on(dedup_cmd, [&] { return cmd_rules_dedup(a, out); });

  auto* merge_cmd = app.add_subcommand("merge", "Merge two sketches along a shared one");
  merge_cmd->add_option("--span", a.span, "Span file (.span)")->required();
  merge_cmd->add_option("--out", a.out, "Output sketch")->required();
  on(merge_cmd, [&] { return cmd_merge(a, out); });

  auto* flatten_cmd = app.add_subcommand("flatten", "Flatten a diagram hierarchy into one sketch");
  flatten_cmd->add_option("--hierarchy", a.hierarchy, "Hierarchy file (.skh)")->required();
  flatten_cmd->add_option("--out", a.out, "Output sketch (default: stdout)");
  on(flatten_cmd, [&] { return cmd_flatten(a, out); });

  auto* consistency_cmd = app.add_subcommand("consistency", "Report structural and measured inconsistencies");
  consistency_cmd->add_option("--sketch", a.sketch, "Sketch file")->required();
  consistency_cmd->add_option("--instance", a.instance, "Instance file");
  on(consistency_cmd, [&] { return cmd_consistency(a, out); });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    return action();
  } catch (const Failure& f) {
    err << "sketchkit: " << f.message << "\n";
    return f.code;
  } catch (const ParseError& e) {
    err << format_diagnostic(e) << "\n";
    return kInvalid;
  } catch (const SchemaError& e) {
    err << "sketchkit: " << a.schema << ": error: " << e.what() << "\n";
    return kInvalid;
  } catch (const ClauseError& e) {
    err << "sketchkit: rule error: " << e.what() << "\n";
    return kInvalid;
  }
}

}  // namespace sketchkit::cli
