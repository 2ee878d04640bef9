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

// JSON documents for graphs and queries.
//
// Graph:  {"nodes": [{"id", "props"}],
//          "edges": [{"id", "ordered", "nodes", "props"}],
//          "subgraphs": {"name": {"nodes": [...], "edges": [...]}}}
// Query:  {"nodes": [{"id", "sign", "theta"}],
//          "edges": [{"id", "from", "to", "sign", "theta"}]}

#pragma once

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ggq/error.hpp"
#include "ggq/graph.hpp"
#include "ggq/query.hpp"

namespace ggq {

using Json = nlohmann::json;

/// A graph together with the named subgraphs stored next to it.
struct GraphDocument {
  GeneralizedGraph graph;
  std::map<std::string, SubgraphRef> subgraphs;
};

namespace detail {

inline Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SyntaxError(e.what(), e.byte > 0 ? e.byte - 1 : 0);
  }
}

[[noreturn]] inline void bad_document(const std::string& what) {
  throw Error(ErrorCode::kIoError, what);
}

inline const Json& require(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) bad_document(where + ": missing \"" + key + "\"");
  return obj.at(key);
}

inline std::string require_string(const Json& obj, const char* key, const std::string& where) {
  const Json& v = require(obj, key, where);
  if (!v.is_string()) bad_document(where + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

inline PropertyValue value_from_json(const Json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number()) return v.get<double>();
  bad_document(where + ": property values must be text, numbers or booleans");
}

inline Json value_to_json(const PropertyValue& v) {
  switch (v.index()) {
    case 0: return std::get<std::string>(v);
    case 1: return std::get<std::int64_t>(v);
    case 2: return std::get<double>(v);
    default: return std::get<bool>(v);
  }
}

inline PropertyMap props_from_json(const Json& obj, const std::string& where) {
  PropertyMap props;
  if (!obj.contains("props")) return props;
  const Json& p = obj.at("props");
  if (!p.is_object()) bad_document(where + ": \"props\" must be an object");
  for (const auto& [key, value] : p.items()) props.emplace(key, value_from_json(value, where));
  return props;
}

inline Json props_to_json(const PropertyMap& props) {
  Json out = Json::object();
  for (const auto& [key, value] : props) out[key] = value_to_json(value);
  return out;
}

inline std::set<std::string> id_list(const Json& obj, const char* key, const std::string& where) {
  std::set<std::string> out;
  if (!obj.contains(key)) return out;
  const Json& arr = obj.at(key);
  if (!arr.is_array()) bad_document(where + ": \"" + key + "\" must be an array");
  for (const auto& v : arr) {
    if (!v.is_string()) bad_document(where + ": ids must be strings");
    out.insert(v.get<std::string>());
  }
  return out;
}

}  // namespace detail

inline GraphDocument graph_document_from_json(const Json& doc) {
  if (!doc.is_object()) detail::bad_document("graph document must be an object");
  std::vector<NodeSpec> nodes;
  std::vector<EdgeSpec> edges;
  if (doc.contains("nodes")) {
    for (const auto& n : doc.at("nodes")) {
      const std::string id = detail::require_string(n, "id", "node");
      nodes.push_back({id, detail::props_from_json(n, "node '" + id + "'")});
    }
  }
  if (doc.contains("edges")) {
    for (const auto& e : doc.at("edges")) {
      const std::string id = detail::require_string(e, "id", "edge");
      const std::string where = "edge '" + id + "'";
      const Json& members = detail::require(e, "nodes", where);
      if (!members.is_array()) detail::bad_document(where + ": \"nodes\" must be an array");
      std::vector<std::string> ids;
      for (const auto& m : members) {
        if (!m.is_string()) detail::bad_document(where + ": member ids must be strings");
        ids.push_back(m.get<std::string>());
      }
      const bool ordered = e.value("ordered", true);
      edges.push_back({id, ordered ? Incidence::directed(std::move(ids))
                                   : Incidence::undirected(std::move(ids)),
                       detail::props_from_json(e, where)});
    }
  }
  GraphDocument out{build_graph(std::move(nodes), std::move(edges)), {}};
  if (doc.contains("subgraphs")) {
    for (const auto& [name, s] : doc.at("subgraphs").items()) {
      const std::string where = "subgraph '" + name + "'";
      SubgraphRef ref{detail::id_list(s, "nodes", where), detail::id_list(s, "edges", where)};
      const auto problems = subgraph_violations(ref, out.graph);
      if (!problems.empty()) throw Error(ErrorCode::kInvalidSubgraph, where + ": " + problems.front());
      out.subgraphs.emplace(name, std::move(ref));
    }
  }
  return out;
}

inline GraphDocument load_graph_document(std::string_view text) {
  return graph_document_from_json(detail::parse_json(text));
}

inline GeneralizedGraph load_graph(std::string_view text) {
  return load_graph_document(text).graph;
}

inline Json graph_to_json(const GeneralizedGraph& g,
                          const std::map<std::string, SubgraphRef>& subgraphs = {}) {
  Json nodes = Json::array();
  for (Index v = 0; v < g.node_count(); ++v) {
    nodes.push_back({{"id", g.node_id(v)}, {"props", detail::props_to_json(g.node_props(v))}});
  }
  Json edges = Json::array();
  for (Index e = 0; e < g.edge_count(); ++e) {
    const auto& inc = g.incidence(e);
    edges.push_back({{"id", g.edge_id(e)},
                     {"ordered", inc.ordered},
                     {"nodes", inc.members},
                     {"props", detail::props_to_json(g.edge_props(e))}});
  }
  Json doc = {{"nodes", nodes}, {"edges", edges}};
  if (!subgraphs.empty()) {
    Json subs = Json::object();
    for (const auto& [name, s] : subgraphs) subs[name] = {{"nodes", s.nodes}, {"edges", s.edges}};
    doc["subgraphs"] = subs;
  }
  return doc;
}

inline std::string store_graph(const GeneralizedGraph& g,
                               const std::map<std::string, SubgraphRef>& subgraphs = {}) {
  return graph_to_json(g, subgraphs).dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Queries

namespace detail {

inline const std::set<std::string>& node_keys() {
  static const std::set<std::string> keys{"id", "sign", "theta", "label"};
  return keys;
}
inline const std::set<std::string>& edge_keys() {
  static const std::set<std::string> keys{"id", "from", "to", "sign", "theta", "label"};
  return keys;
}

inline std::optional<Sign> parse_sign(const Json& v) {
  if (!v.is_string()) return std::nullopt;
  const auto s = v.get<std::string>();
  if (s == "+") return Sign::kPositive;
  if (s == "-") return Sign::kNegative;
  return std::nullopt;
}

template <class Parse>
auto parse_theta(const Json& obj, const std::string& where, Parse parse) {
  std::string text;
  if (obj.contains("theta")) {
    if (!obj.at("theta").is_string()) bad_document(where + ": \"theta\" must be a string");
    text = obj.at("theta").get<std::string>();
  }
  try {
    return parse(text);
  } catch (const SyntaxError& e) {
    throw SyntaxError(where + " theta: " + e.what(), e.position(), e.code());
  }
}

inline std::map<std::string, std::string> extras(const Json& obj,
                                                 const std::set<std::string>& known) {
  std::map<std::string, std::string> out;
  for (const auto& [key, value] : obj.items()) {
    if (!known.count(key)) out.emplace(key, value.dump());
  }
  return out;
}

inline Sign require_sign(const Json& obj, const std::string& where) {
  const Json& v = require(obj, "sign", where);
  auto s = parse_sign(v);
  if (!s) throw Error(ErrorCode::kInvalidQuery, where + ": sign must be \"+\" or \"-\"");
  return *s;
}

}  // namespace detail

/// Builds a query from its JSON form. Throws SyntaxError for predicate
/// errors, DuplicateId, InvalidQuery for bad signs or dangling endpoints.
inline Query query_from_json(const Json& doc) {
  if (!doc.is_object()) detail::bad_document("query document must be an object");
  Query q;
  if (doc.contains("nodes")) {
    for (const auto& n : doc.at("nodes")) {
      const std::string id = detail::require_string(n, "id", "query node");
      const std::string where = "node '" + id + "'";
      QueryNode& node = q.add_node(id, detail::require_sign(n, where),
                                   detail::parse_theta(n, where, parse_node_predicate));
      node.label = n.value("label", "");
      node.extra = detail::extras(n, detail::node_keys());
    }
  }
  if (doc.contains("edges")) {
    for (const auto& e : doc.at("edges")) {
      const std::string id = detail::require_string(e, "id", "query edge");
      const std::string where = "edge '" + id + "'";
      QueryEdge& edge = q.add_edge(id, detail::require_string(e, "from", where),
                                   detail::require_string(e, "to", where),
                                   detail::require_sign(e, where),
                                   detail::parse_theta(e, where, parse_path_predicate));
      edge.label = e.value("label", "");
      edge.extra = detail::extras(e, detail::edge_keys());
    }
  }
  const auto report = validate_query(q);
  if (!report.ok()) throw Error(ErrorCode::kInvalidQuery, report.issues.front().message);
  return q;
}

inline Query load_query(std::string_view text) { return query_from_json(detail::parse_json(text)); }

/// Canonical JSON form: elements sorted by id, keys sorted, predicates in
/// normal form.
inline Json query_to_json(const Query& q) {
  auto with_common = [](Json obj, const std::string& label,
                        const std::map<std::string, std::string>& extra) {
    if (!label.empty()) obj["label"] = label;
    for (const auto& [key, text] : extra) obj[key] = Json::parse(text);
    return obj;
  };
  Json nodes = Json::array();
  for (const auto& [id, n] : q.nodes) {
    nodes.push_back(with_common({{"id", id}, {"sign", to_string(n.sign)}, {"theta", canonical(n.theta)}},
                                n.label, n.extra));
  }
  Json edges = Json::array();
  for (const auto& [id, e] : q.edges) {
    edges.push_back(with_common({{"id", id},
                                 {"from", e.source},
                                 {"to", e.target},
                                 {"sign", to_string(e.sign)},
                                 {"theta", canonical(e.theta)}},
                                e.label, e.extra));
  }
  return {{"nodes", nodes}, {"edges", edges}};
}

inline std::string store_query(const Query& q) { return query_to_json(q).dump(2) + "\n"; }

/// Checks a query document without stopping at the first problem.
inline ValidationReport validate_query_document(std::string_view text) {
  ValidationReport r;
  Json doc;
  try {
    doc = detail::parse_json(text);
  } catch (const SyntaxError& e) {
    r.issues.push_back({"SyntaxError", e.what()});
    return r;
  }
  if (!doc.is_object()) {
    r.issues.push_back({"BadDocument", "query document must be an object"});
    return r;
  }
  std::set<std::string> node_ids;
  std::set<std::string> edge_ids;
  auto check_common = [&](const Json& obj, const char* kind, std::set<std::string>& seen,
                          auto parse) -> std::string {
    if (!obj.is_object() || !obj.contains("id") || !obj.at("id").is_string()) {
      r.issues.push_back({"MissingId", std::string(kind) + " without a string id"});
      return {};
    }
    const std::string id = obj.at("id").get<std::string>();
    const std::string where = std::string(kind) + " '" + id + "'";
    if (!seen.insert(id).second) r.issues.push_back({"DuplicateId", where + " defined twice"});
    if (!obj.contains("sign")) {
      r.issues.push_back({"MissingSign", where + " has no sign"});
    } else if (!detail::parse_sign(obj.at("sign"))) {
      r.issues.push_back({"BadSign", where + ": sign must be \"+\" or \"-\""});
    }
    try {
      detail::parse_theta(obj, where, parse);
    } catch (const Error& e) {
      r.issues.push_back({to_string(e.code()), e.what()});
    }
    return id;
  };
  if (doc.contains("nodes")) {
    for (const auto& n : doc.at("nodes")) check_common(n, "node", node_ids, parse_node_predicate);
  }
  if (doc.contains("edges")) {
    for (const auto& e : doc.at("edges")) {
      const std::string id = check_common(e, "edge", edge_ids, parse_path_predicate);
      if (id.empty()) continue;
      for (const char* end : {"from", "to"}) {
        if (!e.contains(end) || !e.at(end).is_string()) {
          r.issues.push_back({"MissingEndpoint", "edge '" + id + "' has no \"" + end + "\""});
        } else if (!node_ids.count(e.at(end).get<std::string>())) {
          r.issues.push_back({"DanglingEndpoint", "edge '" + id + "' names unknown node '" +
                                                      e.at(end).get<std::string>() + "'"});
        }
      }
    }
  }
  return r;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path + "'");
  out << text;
}

}  // namespace ggq
