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

// Refinement calculus over queries: cloning, the four refinement-set
// operators, redundancy elimination, brute-force order oracles and
// refinement trees.

#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "ggq/error.hpp"
#include "ggq/graph.hpp"
#include "ggq/matcher.hpp"
#include "ggq/query.hpp"

namespace ggq {

// ---------------------------------------------------------------------------
// Cloning

/// `base'`, then `base'2`, `base'3`, ... until unused.
inline std::string fresh_id(const std::string& base, const std::function<bool(const std::string&)>& used) {
  std::string id = base + "'";
  for (int k = 2; used(id); ++k) id = base + "'" + std::to_string(k);
  return id;
}

struct CloneResult {
  Query query;
  /// Original node id -> id of its copy.
  std::map<std::string, std::string> copy_of;
  /// Ids of the edges added by substitution.
  std::set<std::string> new_edges;
};

/// Adds a copy n' of every n in `w` and every edge obtained from an edge
/// touching `w` by replacing endpoints in `w` with their copies in all
/// ways other than the original one.
inline CloneResult clone_with_map(const Query& q, const std::set<std::string>& w) {
  CloneResult out{q, {}, {}};
  for (const auto& n : w) {
    const QueryNode& orig = q.node(n);
    const std::string id = fresh_id(n, [&](const std::string& c) { return out.query.has_node(c); });
    QueryNode copy = orig;
    copy.id = id;
    out.query.nodes.emplace(id, std::move(copy));
    out.copy_of.emplace(n, id);
  }
  for (const auto& [id, e] : q.edges) {
    std::vector<std::string> sources{e.source};
    std::vector<std::string> targets{e.target};
    if (w.count(e.source)) sources.push_back(out.copy_of.at(e.source));
    if (w.count(e.target)) targets.push_back(out.copy_of.at(e.target));
    for (const auto& s : sources) {
      for (const auto& t : targets) {
        if (s == e.source && t == e.target) continue;
        const std::string nid = fresh_id(id, [&](const std::string& c) { return out.query.has_edge(c); });
        QueryEdge copy = e;
        copy.id = nid;
        copy.source = s;
        copy.target = t;
        out.query.edges.emplace(nid, std::move(copy));
        out.new_edges.insert(nid);
      }
    }
  }
  return out;
}

inline Query clone_by_duplication(const Query& q, const std::set<std::string>& w) {
  for (const auto& n : w) q.node(n);
  return clone_with_map(q, w).query;
}

/// Graph form of cloning. Every slot of an edge holding a node of `w` may
/// take the original or the copy; substitutions equal to an existing
/// incidence of the same edge are dropped.
inline GeneralizedGraph clone_by_duplication(const GeneralizedGraph& g, const std::set<std::string>& w) {
  std::vector<NodeSpec> nodes;
  std::map<std::string, std::string> copy_of;
  auto used_node = [&](const std::string& c) {
    return g.find_node(c).has_value() ||
           std::any_of(nodes.begin(), nodes.end(), [&](const NodeSpec& s) { return s.id == c; });
  };
  for (Index v = 0; v < g.node_count(); ++v) nodes.push_back({g.node_id(v), g.node_props(v)});
  for (const auto& n : w) {
    const Index v = g.node_index(n);
    const std::string id = fresh_id(n, used_node);
    nodes.push_back({id, g.node_props(v)});
    copy_of.emplace(n, id);
  }
  std::vector<EdgeSpec> edges;
  std::set<std::string> edge_ids;
  for (Index e = 0; e < g.edge_count(); ++e) {
    edges.push_back({g.edge_id(e), g.incidence(e), g.edge_props(e)});
    edge_ids.insert(g.edge_id(e));
  }
  for (Index e = 0; e < g.edge_count(); ++e) {
    const auto& inc = g.incidence(e);
    std::vector<std::size_t> slots;
    for (std::size_t i = 0; i < inc.members.size(); ++i) {
      if (w.count(inc.members[i])) slots.push_back(i);
    }
    std::vector<Incidence> produced{inc};
    for (std::size_t mask = 1; mask < (std::size_t{1} << slots.size()); ++mask) {
      auto members = inc.members;
      for (std::size_t b = 0; b < slots.size(); ++b) {
        if (mask & (std::size_t{1} << b)) members[slots[b]] = copy_of.at(members[slots[b]]);
      }
      Incidence next = inc.ordered ? Incidence::directed(members) : Incidence::undirected(members);
      if (std::find(produced.begin(), produced.end(), next) != produced.end()) continue;
      produced.push_back(next);
      const std::string id = fresh_id(g.edge_id(e), [&](const std::string& c) { return edge_ids.count(c) > 0; });
      edge_ids.insert(id);
      edges.push_back({id, std::move(next), g.edge_props(e)});
    }
  }
  return build_graph(std::move(nodes), std::move(edges));
}

// ---------------------------------------------------------------------------
// Refinement sets

enum class RefineOp { kAddNode, kAddEdge, kAddEdgePredicate, kAddNodePredicate };

inline const char* to_string(RefineOp op) {
  switch (op) {
    case RefineOp::kAddNode: return "add_node";
    case RefineOp::kAddEdge: return "add_edge";
    case RefineOp::kAddEdgePredicate: return "add_edge_pred";
    case RefineOp::kAddNodePredicate: return "add_node_pred";
  }
  return "?";
}

inline std::optional<RefineOp> parse_refine_op(std::string_view text) {
  for (auto op : {RefineOp::kAddNode, RefineOp::kAddEdge, RefineOp::kAddEdgePredicate,
                  RefineOp::kAddNodePredicate}) {
    if (text == to_string(op)) return op;
  }
  return std::nullopt;
}

struct RefinementSet {
  Query parent;
  RefineOp op = RefineOp::kAddNode;
  std::vector<Query> members;
  bool simplified = false;
};

namespace detail {

inline const QueryNode& positive_anchor(const Query& q, const std::string& n) {
  const QueryNode& node = q.node(n);
  if (node.sign != Sign::kPositive) {
    throw Error(ErrorCode::kNegativeAnchor, "node '" + n + "' is negative");
  }
  return node;
}

/// One member per sign vector over `ids` (sorted); member 0 keeps all
/// positive, bit i of the member index makes ids[k-1-i] negative.
inline std::vector<Query> sign_variants(const Query& base, const std::vector<std::string>& ids) {
  std::vector<Query> out;
  const std::size_t k = ids.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    Query m = base;
    for (std::size_t i = 0; i < k; ++i) {
      const bool negative = mask & (std::size_t{1} << (k - 1 - i));
      m.node(ids[i]).sign = negative ? Sign::kNegative : Sign::kPositive;
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace detail

/// Members q + (m, +, true) and q + (m, -, true).
inline RefinementSet refine_add_node(const Query& q, const std::string& m) {
  if (q.has_node(m)) throw Error(ErrorCode::kIdClash, "node id '" + m + "' already used");
  RefinementSet r{q, RefineOp::kAddNode, {}, false};
  for (Sign s : {Sign::kPositive, Sign::kNegative}) {
    Query member = q;
    member.add_node(m, s);
    r.members.push_back(std::move(member));
  }
  return r;
}

/// Clones {n, m}, joins the copies n' -> m' with a `true` edge of the given
/// sign and re-signs the copies in the four possible ways (two for n = m,
/// where the edge is a loop on n').
inline RefinementSet refine_add_edge(const Query& q, const std::string& n, const std::string& m,
                                     Sign edge_sign, std::optional<std::string> edge_id = {}) {
  detail::positive_anchor(q, n);
  detail::positive_anchor(q, m);
  const CloneResult cl = clone_with_map(q, {n, m});
  const std::string& nc = cl.copy_of.at(n);
  const std::string& mc = cl.copy_of.at(m);
  Query base = cl.query;
  std::string id;
  if (edge_id) {
    if (base.has_edge(*edge_id)) throw Error(ErrorCode::kIdClash, "edge id '" + *edge_id + "' already used");
    id = *edge_id;
  } else {
    const std::string stem = n + "_" + m;
    id = base.has_edge(stem) ? fresh_id(stem, [&](const std::string& c) { return base.has_edge(c); }) : stem;
  }
  base.add_edge(id, nc, mc, edge_sign);
  RefinementSet r{q, RefineOp::kAddEdge, {}, false};
  if (n == m) {
    r.members = detail::sign_variants(base, {nc});
  } else {
    r.members = detail::sign_variants(base, {nc, mc});
  }
  return r;
}

/// Clones the endpoints of positive edge e and adds e' between the copies
/// carrying θ_e ∧ φ; four endpoint sign assignments (two for a loop).
inline RefinementSet refine_add_edge_predicate(const Query& q, const std::string& e,
                                               const PathPredicate& phi) {
  const QueryEdge& edge = q.edge(e);
  if (edge.sign != Sign::kPositive) throw Error(ErrorCode::kNegativeAnchor, "edge '" + e + "' is negative");
  detail::positive_anchor(q, edge.source);
  detail::positive_anchor(q, edge.target);
  const CloneResult cl = clone_with_map(q, {edge.source, edge.target});
  Query base = cl.query;
  const std::string id = fresh_id(e, [&](const std::string& c) { return base.has_edge(c); });
  const std::string& sc = cl.copy_of.at(edge.source);
  const std::string& tc = cl.copy_of.at(edge.target);
  base.add_edge(id, sc, tc, Sign::kPositive, conjoin(edge.theta, phi));
  RefinementSet r{q, RefineOp::kAddEdgePredicate, {}, false};
  if (edge.is_loop()) {
    r.members = detail::sign_variants(base, {sc});
  } else {
    r.members = detail::sign_variants(base, {sc, tc});
  }
  return r;
}

/// Clones W = N(n) ∪ {n}, strengthens the copy n' to θ_n ∧ φ, keeps n'
/// joined only to copies, and emits one member per sign assignment to the
/// copies of W: 2^|W| members.
inline RefinementSet refine_add_node_predicate(const Query& q, const std::string& n,
                                               const NodePredicate& phi) {
  detail::positive_anchor(q, n);
  std::set<std::string> w = environment(q, n);
  for (const auto& x : w) {
    if (q.node(x).sign != Sign::kPositive) {
      throw Error(ErrorCode::kNegativeEnvironment, "neighbour '" + x + "' of '" + n + "' is negative");
    }
  }
  w.insert(n);
  CloneResult cl = clone_with_map(q, w);
  Query base = cl.query;
  const std::string& nc = cl.copy_of.at(n);
  std::set<std::string> originals;
  for (const auto& [id, node] : q.nodes) originals.insert(id);
  for (const auto& id : cl.new_edges) {
    const QueryEdge& e = base.edge(id);
    const bool joins = (e.source == nc && originals.count(e.target)) ||
                       (e.target == nc && originals.count(e.source));
    if (joins) base.edges.erase(id);
  }
  base.node(nc).theta = conjoin(q.node(n).theta, phi);
  std::vector<std::string> copies;
  for (const auto& x : w) copies.push_back(cl.copy_of.at(x));
  std::sort(copies.begin(), copies.end());
  RefinementSet r{q, RefineOp::kAddNodePredicate, {}, false};
  r.members = detail::sign_variants(base, copies);
  return r;
}

// ---------------------------------------------------------------------------
// Redundancy

/// A positive edge e' parallel to a positive edge e between positive nodes
/// with θ_e implying θ_e'. Returns e'.
inline std::optional<std::string> find_redundant_edge(const Query& q) {
  for (const auto& [id, e] : q.edges) {
    if (e.sign != Sign::kPositive) continue;
    if (q.node(e.source).sign != Sign::kPositive || q.node(e.target).sign != Sign::kPositive) continue;
    for (const auto& [other_id, other] : q.edges) {
      if (other_id == id || other.sign != Sign::kPositive) continue;
      if (other.source != e.source || other.target != e.target) continue;
      if (syntactic_implies(e.theta, other.theta)) return other_id;
    }
  }
  return std::nullopt;
}

/// A positive node n for which another node m has the same sign and
/// predicate and, for every edge of n, an edge of the same sign and
/// predicate with n's endpoint roles taken by m. Returns n.
inline std::optional<std::string> find_redundant_node(const Query& q) {
  auto subst = [](const std::string& x, const std::string& n, const std::string& m) {
    return x == n ? m : x;
  };
  for (const auto& [n, node] : q.nodes) {
    if (node.sign != Sign::kPositive) continue;
    const auto edges_n = incident_edges(q, n);
    for (const auto& [m, other] : q.nodes) {
      if (m == n || other.sign != node.sign || !syntactic_equiv(node.theta, other.theta)) continue;
      const auto edges_m = incident_edges(q, m);
      const bool covered = std::all_of(edges_n.begin(), edges_n.end(), [&](const std::string& eid) {
        const QueryEdge& e = q.edge(eid);
        const std::string s = subst(e.source, n, m);
        const std::string t = subst(e.target, n, m);
        return std::any_of(edges_m.begin(), edges_m.end(), [&](const std::string& fid) {
          const QueryEdge& f = q.edge(fid);
          return fid != eid && f.sign == e.sign && f.source == s && f.target == t &&
                 syntactic_equiv(f.theta, e.theta);
        });
      });
      if (covered) return n;
    }
  }
  return std::nullopt;
}

/// Removes redundant edges and nodes until none remain.
inline Query simplify(const Query& q) {
  Query cur = q;
  for (;;) {
    if (auto e = find_redundant_edge(cur)) {
      cur = query_minus(cur, edge_part(cur, {*e}));
      continue;
    }
    if (auto n = find_redundant_node(cur)) {
      cur = query_minus(cur, node_part(cur, {*n}));
      continue;
    }
    return cur;
  }
}

inline RefinementSet simplified(RefinementSet r) {
  for (auto& m : r.members) m = simplify(m);
  r.simplified = true;
  return r;
}

// ---------------------------------------------------------------------------
// Conservative extensions

namespace detail {

using Contribution = std::tuple<EdgeEnd, Sign, std::string, std::string, std::string>;

inline std::set<Contribution> contribution_signatures(const Query& q, const std::string& n) {
  std::set<Contribution> out;
  for (const auto& [e, end] : contributions(q, n)) {
    out.emplace(end, e->sign, canonical(e->theta), canonical(q.node(e->source).theta),
                canonical(q.node(e->target).theta));
  }
  return out;
}

}  // namespace detail

/// q1 extends q2 without constraining q2's negative nodes further: q2 is
/// contained in q1, and every edge contribution a negative node of q2
/// receives in q1 already occurs in q2.
inline bool is_conservative_extension(const Query& q2, const Query& q1) {
  if (!is_subquery(q2, q1)) return false;
  for (const auto& [id, n] : q2.nodes) {
    if (n.sign != Sign::kNegative) continue;
    const auto have = detail::contribution_signatures(q2, id);
    for (const auto& c : detail::contribution_signatures(q1, id)) {
      if (!have.count(c)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Oracles

struct OracleOptions {
  std::size_t max_nodes = 4;
  bool connected_only = false;
  std::size_t yield_cap = 1'000'000;
};

inline SubgraphEnumOptions enum_options(const OracleOptions& o) {
  SubgraphEnumOptions s;
  s.max_nodes = o.max_nodes;
  s.include_empty = true;
  s.connected_only = o.connected_only;
  s.yield_cap = o.yield_cap;
  return s;
}

/// First enumerated S with S ⊨ q1 and S ⊭ q2.
inline std::optional<SubgraphRef> refinement_counterexample(const Query& q1, const Query& q2,
                                                            const GeneralizedGraph& g,
                                                            const MatchConfig& cfg,
                                                            const OracleOptions& opts = {}) {
  SubgraphEnumerator it(g, enum_options(opts));
  while (auto s = it.next()) {
    SubgraphEvaluator ev(g, *s, cfg);
    if (matches(ev, q1) && !matches(ev, q2)) return s;
  }
  return std::nullopt;
}

/// q1 refines q2 on g: every enumerated S matching q1 matches q2.
inline bool refines_oracle(const Query& q1, const Query& q2, const GeneralizedGraph& g,
                           const MatchConfig& cfg = {}, const OracleOptions& opts = {}) {
  return !refinement_counterexample(q1, q2, g, cfg, opts).has_value();
}

inline bool equivalent_oracle(const Query& q1, const Query& q2, const GeneralizedGraph& g,
                              const MatchConfig& cfg = {}, const OracleOptions& opts = {}) {
  SubgraphEnumerator it(g, enum_options(opts));
  while (auto s = it.next()) {
    SubgraphEvaluator ev(g, *s, cfg);
    if (matches(ev, q1) != matches(ev, q2)) return false;
  }
  return true;
}

struct RefinementViolation {
  enum class Kind { kNotRefining, kUncovered, kMultiplyCovered };
  Kind kind;
  /// Offending member for kNotRefining; matching members otherwise.
  std::vector<std::size_t> members;
  SubgraphRef subgraph;
};

inline const char* to_string(RefinementViolation::Kind k) {
  switch (k) {
    case RefinementViolation::Kind::kNotRefining: return "NotRefining";
    case RefinementViolation::Kind::kUncovered: return "Uncovered";
    case RefinementViolation::Kind::kMultiplyCovered: return "MultiplyCovered";
  }
  return "?";
}

struct RefinementReport {
  std::vector<RefinementViolation> violations;
  std::size_t subgraphs_checked = 0;
  std::size_t parent_matches = 0;
  bool ok() const { return violations.empty(); }
};

/// Brute-force check of both refinement-set conditions over every
/// enumerated subgraph: members refine the parent, and each S matching
/// the parent matches exactly one member.
inline RefinementReport verify_refinement_set(const RefinementSet& r, const GeneralizedGraph& g,
                                              const MatchConfig& cfg = {},
                                              const OracleOptions& opts = {}) {
  RefinementReport report;
  SubgraphEnumerator it(g, enum_options(opts));
  while (auto s = it.next()) {
    ++report.subgraphs_checked;
    SubgraphEvaluator ev(g, *s, cfg);
    const bool parent = matches(ev, r.parent);
    report.parent_matches += parent;
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < r.members.size(); ++i) {
      if (!matches(ev, r.members[i])) continue;
      hits.push_back(i);
      if (!parent) report.violations.push_back({RefinementViolation::Kind::kNotRefining, {i}, *s});
    }
    if (parent && hits.empty()) {
      report.violations.push_back({RefinementViolation::Kind::kUncovered, {}, *s});
    } else if (parent && hits.size() > 1) {
      report.violations.push_back({RefinementViolation::Kind::kMultiplyCovered, hits, *s});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Refinement trees

struct RefinementTreeNode {
  Query query;
  /// How this node was reached, e.g. "add_edge[2]"; "root" for the root.
  std::string label = "root";
  /// Operator producing the children; empty for leaves.
  std::string op;
  bool simplified_children = false;
  std::vector<RefinementTreeNode> children;
};

struct TreeExpansion {
  RefinementSet set;
  /// Indices of the members to expand further.
  std::vector<std::size_t> expand;
};

/// Picks the refinement set for a tree node at a given depth, or nothing
/// to leave it a leaf.
using TreePolicy = std::function<std::optional<TreeExpansion>(const Query&, std::size_t depth)>;

inline RefinementTreeNode build_refinement_tree(const Query& q0, const TreePolicy& policy,
                                                std::size_t depth) {
  std::function<RefinementTreeNode(const Query&, std::string, std::size_t)> grow =
      [&](const Query& q, std::string label, std::size_t level) {
        RefinementTreeNode node{q, std::move(label), {}, false, {}};
        if (level >= depth) return node;
        auto expansion = policy(q, level);
        if (!expansion) return node;
        node.op = to_string(expansion->set.op);
        node.simplified_children = expansion->set.simplified;
        const auto& members = expansion->set.members;
        for (std::size_t i = 0; i < members.size(); ++i) {
          const std::string child_label = node.op + "[" + std::to_string(i) + "]";
          const bool expand = std::find(expansion->expand.begin(), expansion->expand.end(), i) !=
                              expansion->expand.end();
          if (expand) {
            node.children.push_back(grow(members[i], child_label, level + 1));
          } else {
            node.children.push_back({members[i], child_label, {}, false, {}});
          }
        }
        return node;
      };
  return grow(q0, "root", 0);
}

inline std::size_t tree_height(const RefinementTreeNode& t) {
  std::size_t h = 0;
  for (const auto& c : t.children) h = std::max(h, tree_height(c));
  return h + 1;
}

inline std::size_t tree_size(const RefinementTreeNode& t) {
  std::size_t n = 1;
  for (const auto& c : t.children) n += tree_size(c);
  return n;
}

/// Rebuilds the refinement set at every internal node and verifies it.
inline std::vector<RefinementReport> verify_refinement_tree(const RefinementTreeNode& t,
                                                            const GeneralizedGraph& g,
                                                            const MatchConfig& cfg = {},
                                                            const OracleOptions& opts = {}) {
  std::vector<RefinementReport> out;
  if (t.children.empty()) return out;
  RefinementSet r{t.query, *parse_refine_op(t.op), {}, t.simplified_children};
  for (const auto& c : t.children) r.members.push_back(c.query);
  out.push_back(verify_refinement_set(r, g, cfg, opts));
  for (const auto& c : t.children) {
    auto sub = verify_refinement_tree(c, g, cfg, opts);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

/// The five-step construction of the "node devoted to a non-institution,
/// non-clan element of S" query from the empty query, following member 0
/// at every level.
inline TreePolicy p5_replay_policy() {
  return [](const Query& q, std::size_t depth) -> std::optional<TreeExpansion> {
    switch (depth) {
      case 0: return TreeExpansion{refine_add_node(q, "n1"), {0}};
      case 1:
        return TreeExpansion{
            refine_add_node_predicate(q, "n1",
                                      parse_node_predicate("v in S and type(v) != \"institution\" and "
                                                           "type(v) != \"clan\"")),
            {0}};
      case 2: return TreeExpansion{refine_add_node(q, "n2"), {0}};
      case 3: return TreeExpansion{refine_add_edge(q, "n2", "n1'", Sign::kPositive, "e1"), {0}};
      case 4:
        return TreeExpansion{refine_add_edge_predicate(q, "e1", parse_path_predicate("types =~ /DEVOTED_TO/")),
                             {0}};
      default: return std::nullopt;
    }
  };
}

/// Demonstration policy: at depth d try the operators in rotation starting
/// with the d-th, anchored at the first applicable positive element, and
/// expand every member.
inline TreePolicy breadth_first_policy() {
  return [](const Query& q, std::size_t depth) -> std::optional<TreeExpansion> {
    const RefineOp order[] = {RefineOp::kAddNode, RefineOp::kAddEdge, RefineOp::kAddNodePredicate,
                              RefineOp::kAddEdgePredicate};
    auto all = [](std::size_t n) {
      std::vector<std::size_t> idx(n);
      for (std::size_t i = 0; i < n; ++i) idx[i] = i;
      return idx;
    };
    for (std::size_t k = 0; k < 4; ++k) {
      const RefineOp op = order[(depth + k) % 4];
      std::optional<RefinementSet> set;
      switch (op) {
        case RefineOp::kAddNode: {
          const std::string id =
              fresh_id("m" + std::to_string(depth), [&](const std::string& c) { return q.has_node(c); });
          set = refine_add_node(q, id);
          break;
        }
        case RefineOp::kAddEdge: {
          std::vector<std::string> pos;
          for (const auto& [id, n] : q.nodes) {
            if (n.sign == Sign::kPositive) pos.push_back(id);
          }
          if (!pos.empty()) set = refine_add_edge(q, pos.front(), pos.back(), Sign::kPositive);
          break;
        }
        case RefineOp::kAddNodePredicate:
          for (const auto& [id, n] : q.nodes) {
            try {
              set = refine_add_node_predicate(q, id, parse_node_predicate("v in S"));
              break;
            } catch (const Error&) {
            }
          }
          break;
        case RefineOp::kAddEdgePredicate:
          for (const auto& [id, e] : q.edges) {
            try {
              set = refine_add_edge_predicate(q, id, parse_path_predicate("dst in S"));
              break;
            } catch (const Error&) {
            }
          }
          break;
      }
      if (set) {
        const std::size_t n = set->members.size();
        return TreeExpansion{std::move(*set), all(n)};
      }
    }
    return std::nullopt;
  };
}

}  // namespace ggq
