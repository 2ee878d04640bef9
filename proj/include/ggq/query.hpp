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

// Generalized graph queries: binary directed graphs whose nodes and edges
// carry a sign and a predicate.

#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ggq/error.hpp"
#include "ggq/predicate.hpp"

namespace ggq {

enum class Sign { kPositive, kNegative };

inline const char* to_string(Sign s) { return s == Sign::kPositive ? "+" : "-"; }
inline Sign flip(Sign s) { return s == Sign::kPositive ? Sign::kNegative : Sign::kPositive; }

struct QueryNode {
  std::string id;
  Sign sign = Sign::kPositive;
  NodePredicate theta;
  std::string label;
  /// Unrecognized document keys, kept as compact JSON text.
  std::map<std::string, std::string> extra;
};

struct QueryEdge {
  std::string id;
  std::string source;
  std::string target;
  Sign sign = Sign::kPositive;
  PathPredicate theta;
  std::string label;
  std::map<std::string, std::string> extra;

  bool is_loop() const { return source == target; }
};

/// Nodes and edges keyed (and therefore iterated) by id.
struct Query {
  std::map<std::string, QueryNode> nodes;
  std::map<std::string, QueryEdge> edges;

  bool empty() const { return nodes.empty() && edges.empty(); }
  bool has_node(std::string_view id) const { return nodes.find(std::string(id)) != nodes.end(); }
  bool has_edge(std::string_view id) const { return edges.find(std::string(id)) != edges.end(); }

  const QueryNode& node(std::string_view id) const {
    auto it = nodes.find(std::string(id));
    if (it == nodes.end()) throw Error(ErrorCode::kUnknownNode, "no query node '" + std::string(id) + "'");
    return it->second;
  }
  const QueryEdge& edge(std::string_view id) const {
    auto it = edges.find(std::string(id));
    if (it == edges.end()) throw Error(ErrorCode::kUnknownEdge, "no query edge '" + std::string(id) + "'");
    return it->second;
  }
  QueryNode& node(std::string_view id) { return const_cast<QueryNode&>(std::as_const(*this).node(id)); }
  QueryEdge& edge(std::string_view id) { return const_cast<QueryEdge&>(std::as_const(*this).edge(id)); }

  QueryNode& add_node(std::string id, Sign sign, NodePredicate theta = {}) {
    if (has_node(id)) throw Error(ErrorCode::kDuplicateId, "query node '" + id + "' exists");
    QueryNode n{id, sign, std::move(theta), {}, {}};
    return nodes.emplace(id, std::move(n)).first->second;
  }
  QueryEdge& add_edge(std::string id, std::string source, std::string target, Sign sign,
                      PathPredicate theta = {}) {
    if (has_edge(id)) throw Error(ErrorCode::kDuplicateId, "query edge '" + id + "' exists");
    QueryEdge e{id, std::move(source), std::move(target), sign, std::move(theta), {}, {}};
    return edges.emplace(id, std::move(e)).first->second;
  }
};

/// Ids of the edges with `n` as source or target, ascending.
inline std::vector<std::string> incident_edges(const Query& q, std::string_view n) {
  std::vector<std::string> out;
  for (const auto& [id, e] : q.edges) {
    if (e.source == n || e.target == n) out.push_back(id);
  }
  return out;
}

/// Environment of `n`: every endpoint of an edge touching `n`, `n`
/// included; empty for an isolated node.
inline std::set<std::string> environment(const Query& q, std::string_view n) {
  std::set<std::string> env;
  for (const auto& [id, e] : q.edges) {
    if (e.source == n || e.target == n) {
      env.insert(e.source);
      env.insert(e.target);
    }
  }
  return env;
}

struct ValidationIssue {
  std::string code;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

inline ValidationReport validate_query(const Query& q) {
  ValidationReport r;
  for (const auto& [key, n] : q.nodes) {
    if (key != n.id) r.issues.push_back({"KeyMismatch", "node key '" + key + "' holds id '" + n.id + "'"});
  }
  for (const auto& [key, e] : q.edges) {
    if (key != e.id) r.issues.push_back({"KeyMismatch", "edge key '" + key + "' holds id '" + e.id + "'"});
    for (const auto* end : {&e.source, &e.target}) {
      if (!q.has_node(*end)) {
        r.issues.push_back({"DanglingEndpoint", "edge '" + e.id + "' names unknown node '" + *end + "'"});
      }
    }
  }
  return r;
}

struct SignedPartitions {
  std::set<std::string> positive_nodes;
  std::set<std::string> negative_nodes;
  std::set<std::string> positive_edges;
  std::set<std::string> negative_edges;
};

inline SignedPartitions signed_partitions(const Query& q) {
  SignedPartitions p;
  for (const auto& [id, n] : q.nodes) {
    (n.sign == Sign::kPositive ? p.positive_nodes : p.negative_nodes).insert(id);
  }
  for (const auto& [id, e] : q.edges) {
    (e.sign == Sign::kPositive ? p.positive_edges : p.negative_edges).insert(id);
  }
  return p;
}

inline bool same_node(const QueryNode& a, const QueryNode& b) {
  return a.id == b.id && a.sign == b.sign && syntactic_equiv(a.theta, b.theta);
}

inline bool same_edge(const QueryEdge& a, const QueryEdge& b) {
  return a.id == b.id && a.source == b.source && a.target == b.target && a.sign == b.sign &&
         syntactic_equiv(a.theta, b.theta);
}

/// Equality of ids, signs, endpoints and normalized predicates. Labels and
/// extra keys are ignored.
inline bool same_query(const Query& a, const Query& b) {
  if (a.nodes.size() != b.nodes.size() || a.edges.size() != b.edges.size()) return false;
  for (const auto& [id, n] : a.nodes) {
    auto it = b.nodes.find(id);
    if (it == b.nodes.end() || !same_node(n, it->second)) return false;
  }
  for (const auto& [id, e] : a.edges) {
    auto it = b.edges.find(id);
    if (it == b.edges.end() || !same_edge(e, it->second)) return false;
  }
  return true;
}

/// True when every element of `part` occurs in `q` with the same sign,
/// predicate and endpoints.
inline bool is_subquery(const Query& part, const Query& q) {
  for (const auto& [id, n] : part.nodes) {
    auto it = q.nodes.find(id);
    if (it == q.nodes.end() || !same_node(n, it->second)) return false;
  }
  for (const auto& [id, e] : part.edges) {
    auto it = q.edges.find(id);
    if (it == q.edges.end() || !same_edge(e, it->second)) return false;
  }
  return true;
}

/// Removes the nodes and edges of `part` from `q`, plus every edge touching
/// a removed node.
inline Query query_minus(const Query& q, const Query& part) {
  if (!is_subquery(part, q)) {
    throw Error(ErrorCode::kNotASubquery, "argument is not contained in the query");
  }
  Query out;
  for (const auto& [id, n] : q.nodes) {
    if (!part.has_node(id)) out.nodes.emplace(id, n);
  }
  for (const auto& [id, e] : q.edges) {
    if (part.has_edge(id) || part.has_node(e.source) || part.has_node(e.target)) continue;
    out.edges.emplace(id, e);
  }
  return out;
}

/// The sub-query consisting of the given nodes (and no edges).
inline Query node_part(const Query& q, const std::set<std::string>& ids) {
  Query part;
  for (const auto& id : ids) part.nodes.emplace(id, q.node(id));
  return part;
}

/// The sub-query consisting of the given edges alone.
inline Query edge_part(const Query& q, const std::set<std::string>& ids) {
  Query part;
  for (const auto& id : ids) part.edges.emplace(id, q.edge(id));
  return part;
}

}  // namespace ggq
