// Copyright 2026 The GGQ Authors
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


// Command-line front end. Exit codes: 0 success or true, 1 false or no
// match, 2 error.

#pragma once

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ggq/fixtures.hpp"
#include "ggq/ggq.hpp"

namespace ggq::cli {

enum ExitCode { kTrue = 0, kFalse = 1, kFailure = 2 };

struct CliConfig {
  std::size_t max_walk_len = 8;
  std::size_t max_nodes = 3;
  std::size_t yield_cap = 1'000'000;
  bool connected_only = false;
  bool include_empty = true;
  bool oracle_mode = false;
  std::string format = "text";

  MatchConfig match() const { return {max_walk_len, oracle_mode, yield_cap}; }
  OracleOptions oracle() const { return {max_nodes, connected_only, yield_cap}; }
};

/// `@starwars` names the bundled graph, `@p1`..`@p6` the bundled queries,
/// `@empty` the empty query; anything else is a file path.
inline GraphDocument read_graph(const std::string& spec) {
  if (spec == "@starwars") return fixtures::starwars();
  return load_graph_document(read_file(spec));
}

inline Query read_query(const std::string& spec) {
  if (spec == "@empty") return Query{};
  if (!spec.empty() && spec.front() == '@') return fixtures::query(spec.substr(1));
  return load_query(read_file(spec));
}

/// A named subgraph of the document, `ALL`, or a comma-separated id list
/// (prefix `node:` / `edge:` to disambiguate).
inline SubgraphRef read_subgraph(const GraphDocument& doc, const std::string& spec) {
  if (auto it = doc.subgraphs.find(spec); it != doc.subgraphs.end()) return it->second;
  if (spec == "ALL") return whole_graph(doc.graph);
  SubgraphRef s;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    if (item.rfind("node:", 0) == 0) {
      s.nodes.insert(item.substr(5));
    } else if (item.rfind("edge:", 0) == 0) {
      s.edges.insert(item.substr(5));
    } else if (!doc.graph.find_node(item) && doc.graph.find_edge(item)) {
      s.edges.insert(item);
    } else {
      s.nodes.insert(item);
    }
  }
  if (auto problems = subgraph_violations(s, doc.graph); !problems.empty()) {
    throw Error(ErrorCode::kInvalidSubgraph, problems.front());
  }
  return s;
}

inline Json subgraph_json(const SubgraphRef& s) { return {{"nodes", s.nodes}, {"edges", s.edges}}; }

inline Json witness_json(const MatchWitness& w, const GeneralizedGraph& g) {
  Json nodes = Json::array();
  for (const auto& n : w.nodes) {
    Json edges = Json::array();
    for (const auto& c : n.edges) {
      Json item = {{"edge", c.edge}, {"end", to_string(c.end)}, {"sign", to_string(c.sign)}};
      if (c.walk) {
        item["walk"] = {{"nodes", walk_node_ids(*c.walk, g)}, {"edges", walk_edge_ids(*c.walk, g)}};
      } else {
        item["walk"] = nullptr;
      }
      edges.push_back(item);
    }
    nodes.push_back({{"node", n.node},
                     {"sign", to_string(n.sign)},
                     {"exists", n.exists},
                     {"witness", n.witness ? Json(*n.witness) : Json(nullptr)},
                     {"edges", edges}});
  }
  Json out = {{"matched", w.matched}, {"nodes", nodes}};
  if (w.first_failure) {
    out["first_failure"] = *w.first_failure;
    out["reason"] = w.reason;
  }
  return out;
}

inline void print_witness(std::ostream& out, const MatchWitness& w, const GeneralizedGraph& g) {
  out << (w.matched ? "match" : "no match") << "\n";
  for (const auto& n : w.nodes) {
    out << "  node " << n.node << " (" << to_string(n.sign) << "): ";
    if (n.witness) {
      out << "witness " << *n.witness << "\n";
    } else {
      out << "no witness\n";
    }
    for (const auto& c : n.edges) {
      out << "    edge " << c.edge << " at " << to_string(c.end) << ": ";
      if (c.walk) {
        out << format_walk(*c.walk, g) << "\n";
      } else {
        out << "no satisfying walk\n";
      }
    }
  }
  if (w.first_failure) out << "  failed: " << w.reason << "\n";
}

inline void print_report(std::ostream& out, const RefinementReport& r, const std::string& format) {
  if (format == "json") {
    Json v = Json::array();
    for (const auto& x : r.violations) {
      v.push_back({{"kind", to_string(x.kind)}, {"members", x.members}, {"subgraph", subgraph_json(x.subgraph)}});
    }
    out << Json({{"ok", r.ok()},
                 {"subgraphs_checked", r.subgraphs_checked},
                 {"parent_matches", r.parent_matches},
                 {"violations", v}})
               .dump(2)
        << "\n";
    return;
  }
  out << (r.ok() ? "PASS" : "FAIL") << ": " << r.subgraphs_checked << " subgraphs checked, "
      << r.parent_matches << " match the parent, " << r.violations.size() << " violations\n";
  for (const auto& x : r.violations) {
    out << "  " << to_string(x.kind) << " " << format_subgraph(x.subgraph);
    for (auto m : x.members) out << " member " << m;
    out << "\n";
  }
}

inline Sign parse_sign_arg(const std::string& text) {
  if (text == "+" || text == "pos" || text == "positive") return Sign::kPositive;
  if (text == "-" || text == "neg" || text == "negative") return Sign::kNegative;
  throw Error(ErrorCode::kInvalidQuery, "sign must be + or -");
}

inline RefinementSet apply_refinement(const Query& q, RefineOp op, const std::vector<std::string>& args) {
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi) {
      throw Error(ErrorCode::kInvalidQuery, std::string(to_string(op)) + " takes " + std::to_string(lo) +
                                                (lo == hi ? "" : ".." + std::to_string(hi)) + " arguments");
    }
  };
  switch (op) {
    case RefineOp::kAddNode: need(1, 1); return refine_add_node(q, args[0]);
    case RefineOp::kAddEdge: {
      need(2, 4);
      const Sign sign = args.size() > 2 ? parse_sign_arg(args[2]) : Sign::kPositive;
      std::optional<std::string> id;
      if (args.size() > 3) id = args[3];
      return refine_add_edge(q, args[0], args[1], sign, id);
    }
    case RefineOp::kAddEdgePredicate:
      need(2, 2);
      return refine_add_edge_predicate(q, args[0], parse_path_predicate(args[1]));
    case RefineOp::kAddNodePredicate:
      need(2, 2);
      return refine_add_node_predicate(q, args[0], parse_node_predicate(args[1]));
  }
  throw Error(ErrorCode::kInvalidQuery, "unknown operator");
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized graph queries: matching, refinement and oracles", "ggq"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Read options from a TOML/INI file");
  CliConfig cfg;
  app.add_option("--max-walk-len", cfg.max_walk_len, "Walk length bound for general path predicates")
      ->envname("GGQ_MAX_WALK_LEN")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-nodes", cfg.max_nodes, "Largest subgraph size for enumeration and oracles")
      ->envname("GGQ_MAX_NODES");
  app.add_option("--yield-cap", cfg.yield_cap, "Budget for enumerated subgraphs and search states")
      ->envname("GGQ_YIELD_CAP");
  app.add_flag("--connected-only,!--any-shape", cfg.connected_only, "Enumerate connected subgraphs only")
      ->envname("GGQ_CONNECTED_ONLY");
  app.add_flag("--include-empty,!--no-empty", cfg.include_empty, "Include the empty subgraph in enumeration")
      ->envname("GGQ_INCLUDE_EMPTY");
  app.add_flag("--oracle-mode", cfg.oracle_mode, "Force bounded walk enumeration")->envname("GGQ_ORACLE_MODE");
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "dot"}))
      ->envname("GGQ_FORMAT");

  std::string graph_path, query_path, query2_path, subgraph_spec, op_name, out_dir, policy = "p5", dot_path;
  std::vector<std::string> op_args, member_paths;
  std::size_t depth = 5;
  bool simplified_flag = false;
  bool verify_flag = false;
  int code = kTrue;

  auto* match = app.add_subcommand("match", "Decide whether a subgraph matches a query");
  match->add_option("graph", graph_path, "Graph document or @starwars")->required();
  match->add_option("query", query_path, "Query document or @p1..@p6")->required();
  match->add_option("--subgraph,-s", subgraph_spec, "Subgraph name, ALL, or comma-separated ids")->required();
  match->callback([&] {
    const auto doc = read_graph(graph_path);
    const auto q = read_query(query_path);
    const auto s = read_subgraph(doc, subgraph_spec);
    const auto w = explain_match(s, q, doc.graph, cfg.match());
    if (cfg.format == "json") {
      out << witness_json(w, doc.graph).dump(2) << "\n";
    } else {
      print_witness(out, w, doc.graph);
    }
    code = w.matched ? kTrue : kFalse;
  });

  auto* enumerate = app.add_subcommand("enumerate", "List the subgraphs that match a query");
  enumerate->add_option("graph", graph_path)->required();
  enumerate->add_option("query", query_path)->required();
  enumerate->callback([&] {
    const auto doc = read_graph(graph_path);
    const auto q = read_query(query_path);
    SubgraphEnumOptions opts{cfg.max_nodes, cfg.include_empty, cfg.connected_only, cfg.yield_cap};
    MatchEnumerator it(doc.graph, q, cfg.match(), opts);
    std::size_t count = 0;
    Json all = Json::array();
    while (auto s = it.next()) {
      ++count;
      if (cfg.format == "json") {
        all.push_back(subgraph_json(*s));
      } else {
        out << format_subgraph(*s) << "\n";
      }
    }
    if (cfg.format == "json") out << all.dump(2) << "\n";
    code = count > 0 ? kTrue : kFalse;
  });

  auto* refine = app.add_subcommand("refine", "Write the members of a refinement set");
  refine->add_option("query", query_path)->required();
  refine->add_option("--op", op_name, "add_node | add_edge | add_edge_pred | add_node_pred")->required();
  refine->add_option("--args", op_args, "Operator arguments")->expected(1, 4);
  refine->add_option("--out-dir,-o", out_dir, "Directory for member_<i>.json files");
  refine->add_flag("--simplified", simplified_flag, "Simplify each member");
  refine->callback([&] {
    const auto op = parse_refine_op(op_name);
    if (!op) throw Error(ErrorCode::kInvalidQuery, "unknown operator '" + op_name + "'");
    auto set = apply_refinement(read_query(query_path), *op, op_args);
    if (simplified_flag) set = simplified(std::move(set));
    for (std::size_t i = 0; i < set.members.size(); ++i) {
      const std::string text = store_query(set.members[i]);
      if (out_dir.empty()) {
        out << "# member " << i << "\n" << text;
      } else {
        std::filesystem::create_directories(out_dir);
        const auto path = (std::filesystem::path(out_dir) / ("member_" + std::to_string(i) + ".json")).string();
        write_file(path, text);
        out << path << "\n";
      }
    }
  });

  auto* simplify_cmd = app.add_subcommand("simplify", "Remove redundant nodes and edges");
  simplify_cmd->add_option("query", query_path)->required();
  simplify_cmd->callback([&] { out << store_query(simplify(read_query(query_path))); });

  auto* validate = app.add_subcommand("validate", "Check a query document");
  validate->add_option("query", query_path)->required();
  validate->callback([&] {
    const auto report = validate_query_document(read_file(query_path));
    for (const auto& issue : report.issues) out << issue.code << ": " << issue.message << "\n";
    if (report.ok()) out << "valid\n";
    code = report.ok() ? kTrue : kFalse;
  });

  auto* verify = app.add_subcommand("verify-set", "Check a refinement set by exhaustive enumeration");
  verify->add_option("graph", graph_path)->required();
  verify->add_option("parent", query_path)->required();
  verify->add_option("members", member_paths)->required();
  verify->callback([&] {
    const auto doc = read_graph(graph_path);
    RefinementSet set{read_query(query_path), RefineOp::kAddNode, {}, false};
    for (const auto& p : member_paths) set.members.push_back(read_query(p));
    const auto report = verify_refinement_set(set, doc.graph, cfg.match(), cfg.oracle());
    print_report(out, report, cfg.format);
    code = report.ok() ? kTrue : kFalse;
  });

  auto* oracle = app.add_subcommand("oracle", "Compare two queries on every small subgraph");
  std::string relation;
  oracle->add_option("relation", relation, "refines | equiv")->required()->check(CLI::IsMember({"refines", "equiv"}));
  oracle->add_option("graph", graph_path)->required();
  oracle->add_option("q1", query_path)->required();
  oracle->add_option("q2", query2_path)->required();
  oracle->callback([&] {
    const auto doc = read_graph(graph_path);
    const auto q1 = read_query(query_path);
    const auto q2 = read_query(query2_path);
    std::optional<SubgraphRef> witness = refinement_counterexample(q1, q2, doc.graph, cfg.match(), cfg.oracle());
    if (!witness && relation == "equiv") {
      witness = refinement_counterexample(q2, q1, doc.graph, cfg.match(), cfg.oracle());
    }
    out << (witness ? "false" : "true");
    if (witness) out << " (counterexample " << format_subgraph(*witness) << ")";
    out << "\n";
    code = witness ? kFalse : kTrue;
  });

  auto* tree = app.add_subcommand("tree", "Grow a refinement tree");
  tree->add_option("graph", graph_path)->required();
  tree->add_option("q0", query_path, "Root query (@empty for the empty query)")->required();
  tree->add_option("--policy", policy)->check(CLI::IsMember({"p5", "bfs"}));
  tree->add_option("--depth", depth);
  tree->add_option("--dot", dot_path, "Write the tree as DOT");
  tree->add_flag("--verify", verify_flag, "Verify every refinement set in the tree");
  tree->callback([&] {
    const auto doc = read_graph(graph_path);
    const auto t = build_refinement_tree(read_query(query_path),
                                         policy == "p5" ? p5_replay_policy() : breadth_first_policy(), depth);
    if (!dot_path.empty()) write_file(dot_path, export_dot(t));
    if (cfg.format == "dot") {
      out << export_dot(t);
    } else {
      out << "tree: " << tree_size(t) << " nodes, height " << tree_height(t) << "\n";
    }
    if (verify_flag) {
      bool ok = true;
      for (const auto& r : verify_refinement_tree(t, doc.graph, cfg.match(), cfg.oracle())) {
        print_report(out, r, "text");
        ok = ok && r.ok();
      }
      code = ok ? kTrue : kFalse;
    }
  });

  auto* dot = app.add_subcommand("dot", "Render a graph as DOT");
  dot->add_option("graph", graph_path)->required();
  dot->callback([&] { out << export_dot(read_graph(graph_path).graph); });

  auto* fixture = app.add_subcommand("fixture", "Write the bundled graph and queries");
  fixture->add_option("--out,-o", out_dir)->required();
  fixture->callback([&] {
    std::filesystem::create_directories(out_dir);
    write_file((std::filesystem::path(out_dir) / "starwars.json").string(), fixtures::kStarWarsJson);
    for (const auto& [name, text] : fixtures::query_texts()) {
      write_file((std::filesystem::path(out_dir) / (name + ".json")).string(), text);
    }
    out << "wrote " << fixtures::query_texts().size() + 1 << " files to " << out_dir << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kTrue;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kTrue;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return code;
}

}  // namespace ggq::cli
