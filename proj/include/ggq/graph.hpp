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

// Generalized graphs: nodes, symbolic edges with an ordered or unordered
// incidence of arbitrary arity, key/value properties, subgraph selections
// and walks.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ggq/error.hpp"
#include "ggq/value.hpp"

namespace ggq {

/// Position of a node or an edge in a graph's sorted id order.
using Index = std::size_t;

/// The node tuple an edge connects. Unordered incidences are kept in
/// canonical (sorted) member order so that equality is multiset equality.
struct Incidence {
  bool ordered = true;
  std::vector<std::string> members;

  static Incidence directed(std::vector<std::string> members) {
    return Incidence{true, std::move(members)};
  }
  static Incidence undirected(std::vector<std::string> members) {
    std::sort(members.begin(), members.end());
    return Incidence{false, std::move(members)};
  }

  std::size_t arity() const { return members.size(); }

  /// Arity other than one with a single supporting node.
  bool is_loop() const {
    return members.size() >= 2 &&
           std::all_of(members.begin(), members.end(),
                       [&](const std::string& m) { return m == members.front(); });
  }

  friend bool operator==(const Incidence& a, const Incidence& b) {
    if (a.ordered != b.ordered) return false;
    if (a.ordered) return a.members == b.members;
    auto x = a.members;
    auto y = b.members;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    return x == y;
  }
};

struct NodeSpec {
  std::string id;
  PropertyMap props;
};

struct EdgeSpec {
  std::string id;
  Incidence incidence;
  PropertyMap props;
};

class GeneralizedGraph;
GeneralizedGraph build_graph(std::vector<NodeSpec> nodes, std::vector<EdgeSpec> edges);

/// Immutable generalized graph. Nodes and edges are separate id namespaces
/// and are stored in ascending id order; every iteration is deterministic.
class GeneralizedGraph {
 public:
  /// One legal walk step out of a node: traverse `edge` and land on `to`.
  struct Step {
    Index edge;
    Index to;
    friend auto operator<=>(const Step&, const Step&) = default;
  };

  GeneralizedGraph() = default;

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return nodes_.empty(); }

  const std::string& node_id(Index v) const { return nodes_.at(v).id; }
  const std::string& edge_id(Index e) const { return edges_.at(e).id; }

  std::optional<Index> find_node(std::string_view id) const {
    auto it = node_lookup_.find(id);
    if (it == node_lookup_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<Index> find_edge(std::string_view id) const {
    auto it = edge_lookup_.find(id);
    if (it == edge_lookup_.end()) return std::nullopt;
    return it->second;
  }
  Index node_index(std::string_view id) const {
    if (auto v = find_node(id)) return *v;
    throw Error(ErrorCode::kUnknownNode, "no node '" + std::string(id) + "'");
  }
  Index edge_index(std::string_view id) const {
    if (auto e = find_edge(id)) return *e;
    throw Error(ErrorCode::kUnknownEdge, "no edge '" + std::string(id) + "'");
  }

  const PropertyMap& node_props(Index v) const { return nodes_.at(v).props; }
  const PropertyMap& edge_props(Index e) const { return edges_.at(e).props; }
  const Incidence& incidence(Index e) const { return edges_.at(e).incidence; }

  /// Member node indices of `e`, one per incidence slot.
  std::span<const Index> edge_members(Index e) const { return edges_.at(e).members; }
  /// Edges with `v` among their members, ascending.
  std::span<const Index> incident_edges(Index v) const { return nodes_.at(v).incident; }
  /// Steps leaving `v`, ordered by (edge, target).
  std::span<const Step> steps_from(Index v) const { return nodes_.at(v).out; }
  /// Steps arriving at `v`; `Step::to` holds the source node here.
  std::span<const Step> steps_into(Index v) const { return nodes_.at(v).in; }
  /// Legal (from, to) step pairs of edge `e`.
  std::span<const std::pair<Index, Index>> step_pairs_of(Index e) const {
    return edges_.at(e).steps;
  }

  bool is_loop(Index e) const { return edges_.at(e).incidence.is_loop(); }
  bool is_directed_binary(Index e) const {
    const auto& inc = edges_.at(e).incidence;
    return inc.ordered && inc.arity() == 2;
  }

  /// Text value of the edge's "type" property, or "" when absent or not text.
  const std::string& edge_type(Index e) const { return edges_.at(e).type; }

 private:
  friend GeneralizedGraph build_graph(std::vector<NodeSpec>, std::vector<EdgeSpec>);

  struct NodeRecord {
    std::string id;
    PropertyMap props;
    std::vector<Index> incident;
    std::vector<Step> out;
    std::vector<Step> in;
  };
  struct EdgeRecord {
    std::string id;
    Incidence incidence;
    PropertyMap props;
    std::vector<Index> members;
    std::vector<std::pair<Index, Index>> steps;
    std::string type;
  };

  std::vector<NodeRecord> nodes_;
  std::vector<EdgeRecord> edges_;
  std::map<std::string, Index, std::less<>> node_lookup_;
  std::map<std::string, Index, std::less<>> edge_lookup_;
};

namespace detail {

/// Ordered incidence: (v_i, v_j) for i < j with distinct endpoints.
/// Unordered: every ordered pair of distinct members. Loops add (u, u).
inline std::vector<std::pair<Index, Index>> compute_step_pairs(const Incidence& inc,
                                                               const std::vector<Index>& m) {
  std::set<std::pair<Index, Index>> pairs;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (i == j || m[i] == m[j]) continue;
      if (inc.ordered && i > j) continue;
      pairs.emplace(m[i], m[j]);
    }
  }
  if (inc.is_loop()) pairs.emplace(m.front(), m.front());
  return {pairs.begin(), pairs.end()};
}

}  // namespace detail

/// Validates and indexes a graph. Throws DuplicateId, BadArity (fewer than
/// two incidence slots) or DanglingIncidence.
inline GeneralizedGraph build_graph(std::vector<NodeSpec> nodes, std::vector<EdgeSpec> edges) {
  GeneralizedGraph g;
  std::sort(nodes.begin(), nodes.end(),
            [](const NodeSpec& a, const NodeSpec& b) { return a.id < b.id; });
  std::sort(edges.begin(), edges.end(),
            [](const EdgeSpec& a, const EdgeSpec& b) { return a.id < b.id; });

  for (auto& spec : nodes) {
    if (!g.node_lookup_.emplace(spec.id, g.nodes_.size()).second) {
      throw Error(ErrorCode::kDuplicateId, "node '" + spec.id + "' defined twice");
    }
    g.nodes_.push_back({std::move(spec.id), std::move(spec.props), {}, {}, {}});
  }
  for (auto& spec : edges) {
    if (!g.edge_lookup_.emplace(spec.id, g.edges_.size()).second) {
      throw Error(ErrorCode::kDuplicateId, "edge '" + spec.id + "' defined twice");
    }
    if (spec.incidence.arity() < 2) {
      throw Error(ErrorCode::kBadArity, "edge '" + spec.id + "' needs at least two incidence slots");
    }
    if (!spec.incidence.ordered) {
      std::sort(spec.incidence.members.begin(), spec.incidence.members.end());
    }
    GeneralizedGraph::EdgeRecord rec;
    for (const auto& member : spec.incidence.members) {
      auto it = g.node_lookup_.find(member);
      if (it == g.node_lookup_.end()) {
        throw Error(ErrorCode::kDanglingIncidence,
                    "edge '" + spec.id + "' names unknown node '" + member + "'");
      }
      rec.members.push_back(it->second);
    }
    rec.steps = detail::compute_step_pairs(spec.incidence, rec.members);
    if (auto it = spec.props.find(kTypeKey); it != spec.props.end()) {
      if (const auto* text = std::get_if<std::string>(&it->second)) rec.type = *text;
    }
    rec.id = std::move(spec.id);
    rec.incidence = std::move(spec.incidence);
    rec.props = std::move(spec.props);
    g.edges_.push_back(std::move(rec));
  }

  for (Index e = 0; e < g.edges_.size(); ++e) {
    const auto& rec = g.edges_[e];
    std::set<Index> support(rec.members.begin(), rec.members.end());
    for (Index v : support) g.nodes_[v].incident.push_back(e);
    for (const auto& [from, to] : rec.steps) {
      g.nodes_[from].out.push_back({e, to});
      g.nodes_[to].in.push_back({e, from});
    }
  }
  for (auto& n : g.nodes_) {
    std::sort(n.out.begin(), n.out.end());
    std::sort(n.in.begin(), n.in.end());
  }
  return g;
}

/// Legal steps through edge `edge_id`, as node-id pairs.
inline std::set<std::pair<std::string, std::string>> step_pairs(const GeneralizedGraph& g,
                                                                std::string_view edge_id) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& [a, b] : g.step_pairs_of(g.edge_index(edge_id))) {
    out.emplace(g.node_id(a), g.node_id(b));
  }
  return out;
}

/// Union of the incidences of the edges touching `v`; empty for an isolated
/// node. The reduced environment drops `v` itself.
inline std::set<Index> environment_of(const GeneralizedGraph& g, Index v, bool reduced) {
  std::set<Index> env;
  for (Index e : g.incident_edges(v)) {
    for (Index m : g.edge_members(e)) env.insert(m);
  }
  if (reduced) env.erase(v);
  return env;
}

inline std::set<std::string> environment(const GeneralizedGraph& g, std::string_view node,
                                         bool reduced) {
  std::set<std::string> out;
  for (Index m : environment_of(g, g.node_index(node), reduced)) out.insert(g.node_id(m));
  return out;
}

enum class DegreeMode { kAll, kOut, kIn };

/// `kAll` counts incident edges (a loop once); `kOut`/`kIn` count only
/// directed binary edges leaving / entering `v`.
inline std::size_t degree_of(const GeneralizedGraph& g, Index v, DegreeMode mode) {
  if (mode == DegreeMode::kAll) return g.incident_edges(v).size();
  std::size_t count = 0;
  for (Index e : g.incident_edges(v)) {
    if (!g.is_directed_binary(e)) continue;
    const auto m = g.edge_members(e);
    const Index endpoint = mode == DegreeMode::kOut ? m[0] : m[1];
    if (endpoint == v) ++count;
  }
  return count;
}

inline std::size_t degree(const GeneralizedGraph& g, std::string_view node, DegreeMode mode) {
  return degree_of(g, g.node_index(node), mode);
}

// ---------------------------------------------------------------------------
// Subgraphs

/// A selection of node and edge ids of some parent graph. It is a valid
/// subgraph when every id exists and each selected edge's members are
/// selected too.
struct SubgraphRef {
  std::set<std::string> nodes;
  std::set<std::string> edges;

  bool empty() const { return nodes.empty() && edges.empty(); }
  friend bool operator==(const SubgraphRef&, const SubgraphRef&) = default;
};

inline SubgraphRef whole_graph(const GeneralizedGraph& g) {
  SubgraphRef s;
  for (Index v = 0; v < g.node_count(); ++v) s.nodes.insert(g.node_id(v));
  for (Index e = 0; e < g.edge_count(); ++e) s.edges.insert(g.edge_id(e));
  return s;
}

inline std::vector<std::string> subgraph_violations(const SubgraphRef& s,
                                                    const GeneralizedGraph& g) {
  std::vector<std::string> out;
  for (const auto& n : s.nodes) {
    if (!g.find_node(n)) out.push_back("node '" + n + "' is not in the graph");
  }
  for (const auto& e : s.edges) {
    auto idx = g.find_edge(e);
    if (!idx) {
      out.push_back("edge '" + e + "' is not in the graph");
      continue;
    }
    for (Index m : g.edge_members(*idx)) {
      if (!s.nodes.count(g.node_id(m))) {
        out.push_back("edge '" + e + "' has unselected endpoint '" + g.node_id(m) + "'");
      }
    }
  }
  return out;
}

inline bool is_subgraph(const SubgraphRef& s, const GeneralizedGraph& g) {
  return subgraph_violations(s, g).empty();
}

inline std::string format_subgraph(const SubgraphRef& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& n : s.nodes) {
    out += (first ? "" : ", ") + n;
    first = false;
  }
  out += " | ";
  first = true;
  for (const auto& e : s.edges) {
    out += (first ? "" : ", ") + e;
    first = false;
  }
  return out + "}";
}

struct SubgraphEnumOptions {
  std::size_t max_nodes = 0;
  bool include_empty = true;
  bool connected_only = false;
  std::size_t yield_cap = 1'000'000;
};

/// Streams every subgraph with at most `max_nodes` nodes exactly once: node
/// subsets by size then lexicographically, each crossed with every subset of
/// the edges whose members it contains. Passing the yield cap throws
/// BudgetExceeded.
class SubgraphEnumerator {
 public:
  SubgraphEnumerator(const GeneralizedGraph& g, SubgraphEnumOptions opts)
      : g_(&g), opts_(opts), size_(opts.include_empty ? 0 : 1) {}

  std::optional<SubgraphRef> next() {
    for (;;) {
      if (need_combo_) {
        if (!advance_combo()) return std::nullopt;
        load_closed_edges();
        mask_ = 0;
        need_combo_ = false;
      }
      if (mask_ >> closed_.size()) {
        need_combo_ = true;
        continue;
      }
      const std::uint64_t mask = mask_++;
      if (opts_.connected_only && !connected(mask)) continue;
      if (++yielded_ > opts_.yield_cap) {
        throw Error(ErrorCode::kBudgetExceeded,
                    "subgraph enumeration passed yield cap " + std::to_string(opts_.yield_cap));
      }
      SubgraphRef s;
      for (Index v : combo_) s.nodes.insert(g_->node_id(v));
      for (std::size_t i = 0; i < closed_.size(); ++i) {
        if (mask & (std::uint64_t{1} << i)) s.edges.insert(g_->edge_id(closed_[i]));
      }
      return s;
    }
  }

  std::size_t yielded() const { return yielded_; }

 private:
  bool advance_combo() {
    const std::size_t limit = std::min(opts_.max_nodes, g_->node_count());
    if (!started_) {
      started_ = true;
      if (size_ > limit) return false;
      combo_.resize(size_);
      std::iota(combo_.begin(), combo_.end(), Index{0});
      return true;
    }
    // Next k-combination in lexicographic order, else move to size k + 1.
    const std::size_t n = g_->node_count();
    std::size_t k = combo_.size();
    for (std::size_t i = k; i-- > 0;) {
      if (combo_[i] < n - k + i) {
        ++combo_[i];
        for (std::size_t j = i + 1; j < k; ++j) combo_[j] = combo_[j - 1] + 1;
        return true;
      }
    }
    if (++size_ > limit) return false;
    combo_.resize(size_);
    std::iota(combo_.begin(), combo_.end(), Index{0});
    return true;
  }

  void load_closed_edges() {
    closed_.clear();
    std::vector<bool> in(g_->node_count(), false);
    for (Index v : combo_) in[v] = true;
    for (Index e = 0; e < g_->edge_count(); ++e) {
      const auto m = g_->edge_members(e);
      if (std::all_of(m.begin(), m.end(), [&](Index x) { return in[x]; })) closed_.push_back(e);
    }
    if (closed_.size() >= 40) {
      throw Error(ErrorCode::kBudgetExceeded,
                  "node subset spans " + std::to_string(closed_.size()) + " edges");
    }
  }

  bool connected(std::uint64_t mask) const {
    if (combo_.size() <= 1) return true;
    std::vector<Index> parent(combo_.size());
    std::iota(parent.begin(), parent.end(), Index{0});
    auto find = [&](Index x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    auto slot = [&](Index v) {
      return static_cast<Index>(std::lower_bound(combo_.begin(), combo_.end(), v) - combo_.begin());
    };
    for (std::size_t i = 0; i < closed_.size(); ++i) {
      if (!(mask & (std::uint64_t{1} << i))) continue;
      const auto m = g_->edge_members(closed_[i]);
      for (Index x : m) parent[find(slot(x))] = find(slot(m[0]));
    }
    const Index root = find(0);
    for (std::size_t i = 1; i < combo_.size(); ++i) {
      if (find(i) != root) return false;
    }
    return true;
  }

  const GeneralizedGraph* g_;
  SubgraphEnumOptions opts_;
  std::size_t size_;
  bool started_ = false;
  bool need_combo_ = true;
  std::vector<Index> combo_;
  std::vector<Index> closed_;
  std::uint64_t mask_ = 0;
  std::size_t yielded_ = 0;
};

inline std::vector<SubgraphRef> enumerate_subgraphs(const GeneralizedGraph& g,
                                                    const SubgraphEnumOptions& opts) {
  std::vector<SubgraphRef> out;
  SubgraphEnumerator it(g, opts);
  while (auto s = it.next()) out.push_back(std::move(*s));
  return out;
}

// ---------------------------------------------------------------------------
// Walks

/// Alternating node/edge sequence. Node and edge entries are indices into
/// the graph the walk was built on.
struct Walk {
  std::vector<Index> nodes;
  std::vector<Index> edges;

  Index origin() const { return nodes.front(); }
  Index terminus() const { return nodes.back(); }
  std::size_t length() const { return edges.size(); }
  bool is_closed() const { return origin() == terminus(); }
  bool is_cycle() const {
    if (!is_closed()) return false;
    std::set<Index> seen(edges.begin(), edges.end());
    return seen.size() == edges.size();
  }

  friend bool operator==(const Walk&, const Walk&) = default;
};

inline bool is_valid_walk(const Walk& w, const GeneralizedGraph& g) {
  if (w.edges.empty() || w.nodes.size() != w.edges.size() + 1) return false;
  for (std::size_t i = 0; i < w.edges.size(); ++i) {
    if (w.edges[i] >= g.edge_count()) return false;
    const auto pairs = g.step_pairs_of(w.edges[i]);
    const std::pair<Index, Index> step{w.nodes[i], w.nodes[i + 1]};
    if (std::find(pairs.begin(), pairs.end(), step) == pairs.end()) return false;
  }
  return true;
}

/// Builds a walk from ids; throws UnknownNode/UnknownEdge, or BadArity when
/// the sequences do not form a legal walk.
inline Walk make_walk(const GeneralizedGraph& g, const std::vector<std::string>& node_ids,
                      const std::vector<std::string>& edge_ids) {
  Walk w;
  for (const auto& n : node_ids) w.nodes.push_back(g.node_index(n));
  for (const auto& e : edge_ids) w.edges.push_back(g.edge_index(e));
  if (!is_valid_walk(w, g)) throw Error(ErrorCode::kBadArity, "sequence is not a legal walk");
  return w;
}

inline std::vector<std::string> walk_node_ids(const Walk& w, const GeneralizedGraph& g) {
  std::vector<std::string> out;
  for (Index v : w.nodes) out.push_back(g.node_id(v));
  return out;
}

inline std::vector<std::string> walk_edge_ids(const Walk& w, const GeneralizedGraph& g) {
  std::vector<std::string> out;
  for (Index e : w.edges) out.push_back(g.edge_id(e));
  return out;
}

inline std::string format_walk(const Walk& w, const GeneralizedGraph& g) {
  std::string out = g.node_id(w.nodes.front());
  for (std::size_t i = 0; i < w.edges.size(); ++i) {
    out += " -[" + g.edge_id(w.edges[i]) + "]-> " + g.node_id(w.nodes[i + 1]);
  }
  return out;
}

/// Joins two walks at r1's terminus; the junction node appears once.
inline Walk concat_walks(const Walk& r1, const Walk& r2) {
  if (r1.terminus() != r2.origin()) {
    throw Error(ErrorCode::kJunctionMismatch, "first walk does not end where the second starts");
  }
  Walk out = r1;
  out.nodes.insert(out.nodes.end(), r2.nodes.begin() + 1, r2.nodes.end());
  out.edges.insert(out.edges.end(), r2.edges.begin(), r2.edges.end());
  return out;
}

/// Streams walks of 1..max_len steps from `from` (optionally ending at
/// `to`), shortest first and lexicographic by step order within a length.
class WalkEnumerator {
 public:
  WalkEnumerator(const GeneralizedGraph& g, Index from, std::optional<Index> to,
                 std::size_t max_len)
      : g_(&g), from_(from), to_(to), max_len_(max_len) {}

  std::optional<Walk> next() {
    while (len_ <= max_len_) {
      if (advance()) {
        if (to_ && walk_.terminus() != *to_) continue;
        return walk_;
      }
      ++len_;
      fresh_ = true;
    }
    return std::nullopt;
  }

 private:
  bool advance() {
    if (fresh_) {
      fresh_ = false;
      choice_.clear();
      walk_ = Walk{{from_}, {}};
      return fill();
    }
    return bump() && fill();
  }

  void push(std::size_t c) {
    const auto step = g_->steps_from(walk_.terminus())[c];
    choice_.push_back(c);
    walk_.edges.push_back(step.edge);
    walk_.nodes.push_back(step.to);
  }
  void pop() {
    choice_.pop_back();
    walk_.edges.pop_back();
    walk_.nodes.pop_back();
  }

  bool fill() {
    while (choice_.size() < len_) {
      if (g_->steps_from(walk_.terminus()).empty()) {
        if (!bump()) return false;
        continue;
      }
      push(0);
    }
    return true;
  }

  bool bump() {
    while (!choice_.empty()) {
      const std::size_t c = choice_.back() + 1;
      pop();
      if (c < g_->steps_from(walk_.terminus()).size()) {
        push(c);
        return true;
      }
    }
    return false;
  }

  const GeneralizedGraph* g_;
  Index from_;
  std::optional<Index> to_;
  std::size_t max_len_;
  std::size_t len_ = 1;
  bool fresh_ = true;
  std::vector<std::size_t> choice_;
  Walk walk_;
};

inline std::vector<Walk> enumerate_walks(const GeneralizedGraph& g, std::string_view from,
                                         std::optional<std::string_view> to,
                                         std::size_t max_len) {
  std::optional<Index> target;
  if (to) target = g.node_index(*to);
  WalkEnumerator it(g, g.node_index(from), target, max_len);
  std::vector<Walk> out;
  while (auto w = it.next()) out.push_back(std::move(*w));
  return out;
}

}  // namespace ggq
