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


// Independent reference implementations used to cross-check the library:
// a backtracking regex matcher, brute-force subgraph counting and a
// literal walk-enumerating evaluation of the match relation.

#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "ggq/ggq.hpp"

namespace ggq::testing {

/// Direct recursive matcher over the regex tree: `ends(r, i)` is the set
/// of positions reachable after matching r from position i.
inline std::set<std::size_t> regex_ends(const TypeRegex& r, const std::vector<std::string>& s, std::size_t i) {
  using K = TypeRegex::Kind;
  std::set<std::size_t> out;
  switch (r.kind) {
    case K::kLiteral:
      if (i < s.size() && s[i] == r.literal) out.insert(i + 1);
      break;
    case K::kAny:
      if (i < s.size()) out.insert(i + 1);
      break;
    case K::kConcat: {
      std::set<std::size_t> cur{i};
      for (const auto& c : r.children) {
        std::set<std::size_t> next;
        for (auto p : cur) {
          auto e = regex_ends(c, s, p);
          next.insert(e.begin(), e.end());
        }
        cur = std::move(next);
      }
      out = std::move(cur);
      break;
    }
    case K::kAlternation:
      for (const auto& c : r.children) {
        auto e = regex_ends(c, s, i);
        out.insert(e.begin(), e.end());
      }
      break;
    case K::kOptional:
      out = regex_ends(r.children.front(), s, i);
      out.insert(i);
      break;
    case K::kStar:
    case K::kPlus: {
      std::set<std::size_t> frontier = regex_ends(r.children.front(), s, i);
      std::set<std::size_t> seen = frontier;
      while (!frontier.empty()) {
        std::set<std::size_t> next;
        for (auto p : frontier) {
          for (auto q : regex_ends(r.children.front(), s, p)) {
            if (seen.insert(q).second) next.insert(q);
          }
        }
        frontier = std::move(next);
      }
      out = std::move(seen);
      if (r.kind == K::kStar) out.insert(i);
      break;
    }
  }
  return out;
}

inline bool regex_oracle(const TypeRegex& r, const std::vector<std::string>& s) {
  return regex_ends(r, s, 0).count(s.size()) > 0;
}

/// Σ over node subsets of size ≤ max_nodes of 2^(edges inside the subset).
inline std::size_t count_subgraphs(const GeneralizedGraph& g, std::size_t max_nodes, bool include_empty) {
  std::size_t total = 0;
  const std::size_t n = g.node_count();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size > max_nodes || (size == 0 && !include_empty)) continue;
    std::size_t inside = 0;
    for (Index e = 0; e < g.edge_count(); ++e) {
      bool all = true;
      for (Index m : g.edge_members(e)) all = all && (mask >> m & 1);
      inside += all;
    }
    total += std::size_t{1} << inside;
  }
  return total;
}

/// Edge Q-predicate by explicit enumeration of walks up to `bound` steps.
inline bool literal_edge_holds(const Query& q, const QueryEdge& e, EdgeEnd end, Index v,
                               const SubgraphContext& ctx, std::size_t bound) {
  const auto& g = ctx.graph();
  const auto& ts = q.node(e.source).theta;
  const auto& tt = q.node(e.target).theta;
  for (Index u = 0; u < g.node_count(); ++u) {
    if (end == EdgeEnd::kOrigin && u != v) continue;
    std::optional<Index> to;
    if (end == EdgeEnd::kTerminus) to = v;
    WalkEnumerator it(g, u, to, bound);
    while (auto w = it.next()) {
      if (eval_path(e.theta, *w, ctx) && eval_node(ts, w->origin(), ctx) && eval_node(tt, w->terminus(), ctx)) {
        return true;
      }
    }
  }
  return false;
}

/// The match relation evaluated straight from its definition.
inline bool literal_matches(const SubgraphRef& s, const Query& q, const GeneralizedGraph& g, std::size_t bound) {
  SubgraphContext ctx(g, s);
  for (const auto& [id, n] : q.nodes) {
    bool exists = false;
    for (Index v = 0; v < g.node_count() && !exists; ++v) {
      if (!eval_node(n.theta, v, ctx)) continue;
      bool ok = true;
      for (const auto& [eid, e] : q.edges) {
        if (e.source == id) ok = ok && (literal_edge_holds(q, e, EdgeEnd::kOrigin, v, ctx, bound) == (e.sign == Sign::kPositive));
        if (e.target == id) ok = ok && (literal_edge_holds(q, e, EdgeEnd::kTerminus, v, ctx, bound) == (e.sign == Sign::kPositive));
      }
      exists = ok;
    }
    if (exists != (n.sign == Sign::kPositive)) return false;
  }
  return true;
}

}  // namespace ggq::testing
