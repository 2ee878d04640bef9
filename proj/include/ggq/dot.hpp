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


// Graphviz renderings of data graphs and refinement trees.

#pragma once

#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <string_view>

#include "ggq/graph.hpp"
#include "ggq/io.hpp"
#include "ggq/refinement.hpp"

namespace ggq {

/// 64-bit FNV-1a, rendered as 16 hex digits.
inline std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string query_digest(const Query& q) { return fnv1a_hex(store_query(q)).substr(0, 12); }

inline std::string dot_quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

/// Nodes labelled by their "name" property (id when absent). Binary edges
/// become arrows (undirected ones without heads); wider edges get a point
/// node joined to each member.
inline std::string export_dot(const GeneralizedGraph& g) {
  std::string out = "digraph G {\n";
  for (Index v = 0; v < g.node_count(); ++v) {
    std::string label = g.node_id(v);
    const auto& props = g.node_props(v);
    if (auto it = props.find("name"); it != props.end()) {
      if (const auto* s = std::get_if<std::string>(&it->second)) label = *s;
    }
    out += "  " + dot_quote(g.node_id(v)) + " [label=" + dot_quote(label) + "];\n";
  }
  for (Index e = 0; e < g.edge_count(); ++e) {
    const auto& inc = g.incidence(e);
    const std::string type = g.edge_type(e);
    if (inc.arity() == 2) {
      out += "  " + dot_quote(inc.members[0]) + " -> " + dot_quote(inc.members[1]) + " [label=" +
             dot_quote(type) + (inc.ordered ? "" : ", dir=none") + "];\n";
      continue;
    }
    const std::string hub = dot_quote("edge:" + g.edge_id(e));
    out += "  " + hub + " [shape=point, xlabel=" + dot_quote(type) + "];\n";
    for (std::size_t i = 0; i < inc.members.size(); ++i) {
      out += "  " + hub + " -> " + dot_quote(inc.members[i]) + " [label=" +
             dot_quote(inc.ordered ? std::to_string(i) : "") + (inc.ordered ? "" : ", dir=none") + "];\n";
    }
  }
  return out + "}\n";
}

/// One DOT node per tree node, labelled with the step that produced it and
/// a digest of its stored query.
inline std::string export_dot(const RefinementTreeNode& tree) {
  std::string out = "digraph RefinementTree {\n  node [shape=box];\n";
  std::size_t counter = 0;
  std::function<std::string(const RefinementTreeNode&)> emit = [&](const RefinementTreeNode& t) {
    const std::string id = "t" + std::to_string(counter++);
    const std::string label = t.label + "\n" + std::to_string(t.query.nodes.size()) + " nodes, " +
                              std::to_string(t.query.edges.size()) + " edges\n#" + query_digest(t.query);
    out += "  " + id + " [label=" + dot_quote(label) + "];\n";
    for (const auto& c : t.children) {
      const std::string child = emit(c);
      out += "  " + id + " -> " + child + ";\n";
    }
    return id;
  };
  emit(tree);
  return out + "}\n";
}

}  // namespace ggq
