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

// Query evaluation against a (graph, subgraph) pair.
//
// A subgraph S matches Q when every positive query node has a witness and
// no negative one does. A data node v witnesses query node n when θ_n(v)
// holds and, for each edge e incident to n, the existence of a walk
// anchored at v (leaving v when n is e's source, entering v when n is its
// target) satisfying θ_e, θ_source and θ_target agrees with the sign of e.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ggq/error.hpp"
#include "ggq/graph.hpp"
#include "ggq/predicate.hpp"
#include "ggq/query.hpp"

namespace ggq {

struct MatchConfig {
  /// Walk length cutoff for predicates outside the regex/membership class.
  std::size_t max_walk_len = 8;
  /// Use the bounded strategy for every edge predicate.
  bool oracle_mode = false;
  /// Upper bound on search states per edge search and on enumerated
  /// subgraphs.
  std::size_t yield_cap = 1'000'000;
};

enum class EdgeEnd { kOrigin, kTerminus };

inline const char* to_string(EdgeEnd end) { return end == EdgeEnd::kOrigin ? "origin" : "terminus"; }

enum class PathStrategy { kProduct, kBounded };

namespace detail {

/// A path predicate with its distinct atoms numbered, for evaluation from
/// a vector of atom truth values.
struct IndexedPath {
  using Op = PathPredicate::Op;

  struct Node {
    Op op;
    int slot = -1;
    std::vector<Node> kids;
  };

  Node root;
  std::vector<PathAtom> atoms;

  explicit IndexedPath(const PathPredicate& f) {
    std::map<std::string, int> slots;
    root = build(f, slots);
  }

  bool eval(const std::vector<char>& values) const { return eval(root, values); }

 private:
  Node build(const PathPredicate& f, std::map<std::string, int>& slots) {
    Node n{f.op, -1, {}};
    if (f.op == Op::kAtom) {
      auto key = to_string(f.atom);
      auto [it, fresh] = slots.emplace(key, static_cast<int>(atoms.size()));
      if (fresh) atoms.push_back(f.atom);
      n.slot = it->second;
    }
    for (const auto& c : f.children) n.kids.push_back(build(c, slots));
    return n;
  }

  static bool eval(const Node& n, const std::vector<char>& v) {
    switch (n.op) {
      case Op::kTrue: return true;
      case Op::kFalse: return false;
      case Op::kAtom: return v[n.slot] != 0;
      case Op::kNot: return !eval(n.kids.front(), v);
      case Op::kAnd:
        return std::all_of(n.kids.begin(), n.kids.end(), [&](const Node& k) { return eval(k, v); });
      case Op::kOr:
        return std::any_of(n.kids.begin(), n.kids.end(), [&](const Node& k) { return eval(k, v); });
    }
    return false;
  }
};

/// Lazily determinized NFA: states are interned NFA state sets.
class SubsetAutomaton {
 public:
  explicit SubsetAutomaton(const TypeNfa* nfa) : nfa_(nfa) {
    std::vector<bool> init(nfa->state_count(), false);
    init[nfa->start] = true;
    start_ = intern(std::move(init));
  }

  int start() const { return start_; }
  bool accepting(int s) const { return accepting_[s]; }

  int step(int s, const std::string& symbol) {
    auto key = std::make_pair(s, symbol);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<bool> next(nfa_->state_count(), false);
    for (std::size_t q = 0; q < sets_[s].size(); ++q) {
      if (!sets_[s][q]) continue;
      for (const auto& t : nfa_->transitions[q]) {
        if (nfa_label_matches(t, symbol)) next[t.to] = true;
      }
    }
    const int id = intern(std::move(next));
    memo_.emplace(std::move(key), id);
    return id;
  }

 private:
  int intern(std::vector<bool> set) {
    auto it = ids_.find(set);
    if (it != ids_.end()) return it->second;
    const int id = static_cast<int>(sets_.size());
    bool acc = false;
    for (std::size_t q = 0; q < set.size(); ++q) acc = acc || (set[q] && nfa_->accepting[q]);
    accepting_.push_back(acc);
    ids_.emplace(set, id);
    sets_.push_back(std::move(set));
    return id;
  }

  const TypeNfa* nfa_;
  int start_ = 0;
  std::vector<std::vector<bool>> sets_;
  std::vector<bool> accepting_;
  std::map<std::vector<bool>, int> ids_;
  std::map<std::pair<int, std::string>, int> memo_;
};

}  // namespace detail

/// Verdicts of one edge signature (θ_e, θ_source, θ_target) for every data
/// node, at both ends.
struct EdgeVerdicts {
  std::vector<bool> as_origin;
  std::vector<bool> as_terminus;
  PathStrategy strategy = PathStrategy::kProduct;
};

/// Evaluation cache for one (graph, subgraph, config) triple. Node
/// predicate truth vectors and edge verdicts are computed once per
/// distinct normalized predicate and shared by every query evaluated
/// through the same instance. Not thread-safe.
class SubgraphEvaluator {
 public:
  SubgraphEvaluator(const GeneralizedGraph& g, const SubgraphRef& s, MatchConfig cfg = {})
      : g_(&g), ctx_(g, s), cfg_(cfg) {
    if (cfg.max_walk_len < 1) throw Error(ErrorCode::kInvalidQuery, "max_walk_len must be >= 1");
    if (auto problems = subgraph_violations(s, g); !problems.empty()) {
      throw Error(ErrorCode::kInvalidSubgraph, problems.front());
    }
  }

  const GeneralizedGraph& graph() const { return *g_; }
  const SubgraphContext& context() const { return ctx_; }
  const MatchConfig& config() const { return cfg_; }

  const std::vector<bool>& node_truth(const NodePredicate& theta) {
    auto key = canonical(theta);
    auto it = node_cache_.find(key);
    if (it != node_cache_.end()) return it->second;
    std::vector<bool> truth(g_->node_count(), false);
    for (Index v = 0; v < g_->node_count(); ++v) truth[v] = eval_node(theta, v, ctx_);
    return node_cache_.emplace(std::move(key), std::move(truth)).first->second;
  }

  PathStrategy strategy_for(const PathPredicate& theta_e) const {
    if (cfg_.oracle_mode || !is_regex_membership_class(theta_e)) return PathStrategy::kBounded;
    return PathStrategy::kProduct;
  }

  const EdgeVerdicts& edge_verdicts(const PathPredicate& theta_e, const NodePredicate& theta_src,
                                    const NodePredicate& theta_tgt) {
    auto key = canonical(theta_e) + '\x1f' + canonical(theta_src) + '\x1f' + canonical(theta_tgt);
    auto it = edge_cache_.find(key);
    if (it != edge_cache_.end()) return it->second;
    EdgeSearch search(*this, theta_e, theta_src, theta_tgt);
    EdgeVerdicts out;
    out.strategy = search.strategy();
    out.as_origin.assign(g_->node_count(), false);
    out.as_terminus.assign(g_->node_count(), false);
    for (Index u = 0; u < g_->node_count(); ++u) {
      search.run(u, [&](Index t, const std::function<Walk()>&) {
        out.as_origin[u] = true;
        out.as_terminus[t] = true;
        return false;
      });
    }
    return edge_cache_.emplace(std::move(key), std::move(out)).first->second;
  }

  bool edge_holds(const PathPredicate& theta_e, const NodePredicate& theta_src,
                  const NodePredicate& theta_tgt, EdgeEnd end, Index v) {
    const auto& verdicts = edge_verdicts(theta_e, theta_src, theta_tgt);
    return end == EdgeEnd::kOrigin ? verdicts.as_origin[v] : verdicts.as_terminus[v];
  }

  /// A walk anchored at `v` satisfying the three predicates; the first
  /// found in breadth-first order from the lowest-id origin.
  std::optional<Walk> witness_walk(const PathPredicate& theta_e, const NodePredicate& theta_src,
                                   const NodePredicate& theta_tgt, EdgeEnd end, Index v) {
    EdgeSearch search(*this, theta_e, theta_src, theta_tgt);
    std::optional<Walk> found;
    auto take = [&](Index t, const std::function<Walk()>& walk) {
      if (end == EdgeEnd::kTerminus && t != v) return false;
      found = walk();
      return true;
    };
    if (end == EdgeEnd::kOrigin) {
      search.run(v, take);
    } else {
      for (Index u = 0; u < g_->node_count() && !found; ++u) search.run(u, take);
    }
    return found;
  }

 private:
  using Accept = std::function<bool(Index, const std::function<Walk()>&)>;

  /// Walk search for one edge signature. `run(u, accept)` reports every
  /// terminus t of a satisfying walk from u (possibly more than once)
  /// until `accept` returns true.
  class EdgeSearch {
   public:
    EdgeSearch(SubgraphEvaluator& ev, const PathPredicate& theta_e, const NodePredicate& theta_src,
               const NodePredicate& theta_tgt)
        : ev_(&ev),
          path_(normalize(theta_e)),
          src_ok_(ev.node_truth(theta_src)),
          tgt_ok_(ev.node_truth(theta_tgt)),
          strategy_(ev.strategy_for(theta_e)) {}

    PathStrategy strategy() const { return strategy_; }

    void run(Index u, const Accept& accept) {
      if (!src_ok_[u] || path_.root.op == PathPredicate::Op::kFalse) return;
      if (strategy_ == PathStrategy::kProduct) {
        run_product(u, accept);
      } else {
        run_bounded(u, accept);
      }
    }

   private:
    struct Entry {
      Index node;
      std::size_t parent;
      Index edge;
    };

    Walk rebuild(const std::vector<Entry>& entries, std::size_t idx) const {
      Walk w;
      while (idx != 0) {
        w.nodes.push_back(entries[idx].node);
        w.edges.push_back(entries[idx].edge);
        idx = entries[idx].parent;
      }
      w.nodes.push_back(entries[0].node);
      std::reverse(w.nodes.begin(), w.nodes.end());
      std::reverse(w.edges.begin(), w.edges.end());
      return w;
    }

    void charge(std::size_t states) const {
      if (states > ev_->cfg_.yield_cap) {
        throw Error(ErrorCode::kBudgetExceeded,
                    "walk search passed " + std::to_string(ev_->cfg_.yield_cap) + " states");
      }
    }

    detail::SubsetAutomaton& automaton(const PathAtom& a) {
      auto& cache = ev_->automata_;
      auto it = cache.find(a.regex->text);
      if (it == cache.end()) {
        it = cache.emplace(a.regex->text, std::make_unique<detail::SubsetAutomaton>(&a.regex->nfa)).first;
      }
      return *it->second;
    }

    // Exact search over (data node, automaton state per regex atom).
    void run_product(Index u, const Accept& accept) {
      const auto& g = *ev_->g_;
      const auto& atoms = path_.atoms;
      std::vector<detail::SubsetAutomaton*> dfa(atoms.size(), nullptr);
      std::vector<int> init(atoms.size(), -1);
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (atoms[i].kind == PathAtom::Kind::kTypes) {
          dfa[i] = &automaton(atoms[i]);
          init[i] = dfa[i]->start();
        }
      }
      std::vector<Entry> entries{{u, 0, 0}};
      std::vector<std::vector<int>> states{init};
      std::set<std::pair<Index, std::vector<int>>> visited;
      std::vector<char> values(atoms.size(), 0);
      for (std::size_t head = 0; head < entries.size(); ++head) {
        const Index at = entries[head].node;
        for (const auto& step : g.steps_from(at)) {
          std::vector<int> next = states[head];
          for (std::size_t i = 0; i < atoms.size(); ++i) {
            if (dfa[i]) next[i] = dfa[i]->step(next[i], g.edge_type(step.edge));
          }
          if (!visited.emplace(step.to, next).second) continue;
          entries.push_back({step.to, head, step.edge});
          states.push_back(next);
          charge(entries.size());
          if (!tgt_ok_[step.to]) continue;
          for (std::size_t i = 0; i < atoms.size(); ++i) {
            switch (atoms[i].kind) {
              case PathAtom::Kind::kTypes: values[i] = dfa[i]->accepting(next[i]); break;
              case PathAtom::Kind::kSourceInSubgraph: values[i] = ev_->ctx_.has_node(u); break;
              case PathAtom::Kind::kTargetInSubgraph: values[i] = ev_->ctx_.has_node(step.to); break;
              default: break;
            }
          }
          if (path_.eval(values)) {
            const std::size_t idx = entries.size() - 1;
            if (accept(step.to, [&, idx] { return rebuild(entries, idx); })) return;
          }
        }
      }
    }

    // Walks of length 1..max_walk_len, merged per length on a summary that
    // determines every atom: node, regex derivative per types atom, and
    // running all/any flags.
    void run_bounded(Index u, const Accept& accept) {
      const auto& g = *ev_->g_;
      auto& deriv = ev_->derivatives_;
      const auto& atoms = path_.atoms;
      std::vector<int> init(atoms.size(), 0);
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        switch (atoms[i].kind) {
          case PathAtom::Kind::kTypes: init[i] = term_for(atoms[i]); break;
          case PathAtom::Kind::kAllEdges: init[i] = 1; break;
          default: break;
        }
      }
      std::vector<Entry> entries{{u, 0, 0}};
      std::vector<std::vector<int>> states{init};
      std::vector<std::size_t> layer{0};
      std::vector<char> values(atoms.size(), 0);
      for (std::size_t len = 1; len <= ev_->cfg_.max_walk_len && !layer.empty(); ++len) {
        std::set<std::pair<Index, std::vector<int>>> seen;
        std::vector<std::size_t> next_layer;
        for (std::size_t head : layer) {
          const Index at = entries[head].node;
          for (const auto& step : g.steps_from(at)) {
            std::vector<int> next = states[head];
            for (std::size_t i = 0; i < atoms.size(); ++i) {
              const auto& a = atoms[i];
              switch (a.kind) {
                case PathAtom::Kind::kTypes:
                  next[i] = deriv.derive(next[i], g.edge_type(step.edge));
                  break;
                case PathAtom::Kind::kAllEdges:
                  next[i] = next[i] && detail::property_holds(g.edge_props(step.edge), a.key, a.op, a.literal);
                  break;
                case PathAtom::Kind::kAnyEdge:
                  next[i] = next[i] || detail::property_holds(g.edge_props(step.edge), a.key, a.op, a.literal);
                  break;
                default: break;
              }
            }
            if (!seen.emplace(step.to, next).second) continue;
            entries.push_back({step.to, head, step.edge});
            states.push_back(next);
            next_layer.push_back(entries.size() - 1);
            charge(entries.size());
            if (!tgt_ok_[step.to]) continue;
            for (std::size_t i = 0; i < atoms.size(); ++i) {
              const auto& a = atoms[i];
              switch (a.kind) {
                case PathAtom::Kind::kTypes: values[i] = deriv.nullable(next[i]); break;
                case PathAtom::Kind::kLength:
                  values[i] = compare_values(PropertyValue{static_cast<std::int64_t>(len)}, a.op, a.literal);
                  break;
                case PathAtom::Kind::kSourceInSubgraph: values[i] = ev_->ctx_.has_node(u); break;
                case PathAtom::Kind::kTargetInSubgraph: values[i] = ev_->ctx_.has_node(step.to); break;
                case PathAtom::Kind::kAllEdges:
                case PathAtom::Kind::kAnyEdge: values[i] = next[i] != 0; break;
              }
            }
            if (path_.eval(values)) {
              const std::size_t idx = entries.size() - 1;
              if (accept(step.to, [&, idx] { return rebuild(entries, idx); })) return;
            }
          }
        }
        layer = std::move(next_layer);
      }
    }

    int term_for(const PathAtom& a) {
      auto& cache = ev_->terms_;
      auto it = cache.find(a.regex->text);
      if (it == cache.end()) it = cache.emplace(a.regex->text, ev_->derivatives_.from_ast(a.regex->ast)).first;
      return it->second;
    }

    SubgraphEvaluator* ev_;
    detail::IndexedPath path_;
    const std::vector<bool>& src_ok_;
    const std::vector<bool>& tgt_ok_;
    PathStrategy strategy_;
  };

  const GeneralizedGraph* g_;
  SubgraphContext ctx_;
  MatchConfig cfg_;
  std::map<std::string, std::vector<bool>> node_cache_;
  std::map<std::string, EdgeVerdicts> edge_cache_;
  std::map<std::string, std::unique_ptr<detail::SubsetAutomaton>> automata_;
  RegexDerivatives derivatives_;
  std::map<std::string, RegexDerivatives::Term> terms_;
};

// ---------------------------------------------------------------------------
// Q-predicates

/// Signed edge contributions of query node `n`: (edge, end at n).
inline std::vector<std::pair<const QueryEdge*, EdgeEnd>> contributions(const Query& q,
                                                                      std::string_view n) {
  std::vector<std::pair<const QueryEdge*, EdgeEnd>> out;
  for (const auto& [id, e] : q.edges) {
    if (e.source == n) out.emplace_back(&e, EdgeEnd::kOrigin);
    if (e.target == n) out.emplace_back(&e, EdgeEnd::kTerminus);
  }
  return out;
}

/// Unsigned edge Q-predicate: a satisfying walk anchored at v exists.
inline bool eval_edge_qpredicate(SubgraphEvaluator& ev, const Query& q, const QueryEdge& e,
                                 EdgeEnd end, Index v) {
  return ev.edge_holds(e.theta, q.node(e.source).theta, q.node(e.target).theta, end, v);
}

inline bool eval_edge_qpredicate(const Query& q, std::string_view edge, EdgeEnd end,
                                 std::string_view v, const SubgraphRef& s,
                                 const GeneralizedGraph& g, const MatchConfig& cfg = {}) {
  SubgraphEvaluator ev(g, s, cfg);
  return eval_edge_qpredicate(ev, q, q.edge(edge), end, g.node_index(v));
}

/// Whether data node v witnesses query node n.
inline bool is_witness(SubgraphEvaluator& ev, const Query& q, const QueryNode& n, Index v) {
  if (!ev.node_truth(n.theta)[v]) return false;
  for (const auto& [e, end] : contributions(q, n.id)) {
    const bool holds = eval_edge_qpredicate(ev, q, *e, end, v);
    if (holds != (e->sign == Sign::kPositive)) return false;
  }
  return true;
}

inline std::optional<Index> find_witness(SubgraphEvaluator& ev, const Query& q, const QueryNode& n) {
  for (Index v = 0; v < ev.graph().node_count(); ++v) {
    if (is_witness(ev, q, n, v)) return v;
  }
  return std::nullopt;
}

/// Unsigned node Q-predicate.
inline bool eval_node_qpredicate(SubgraphEvaluator& ev, const Query& q, const QueryNode& n) {
  return find_witness(ev, q, n).has_value();
}

inline bool eval_node_qpredicate(const Query& q, std::string_view node, const SubgraphRef& s,
                                 const GeneralizedGraph& g, const MatchConfig& cfg = {}) {
  SubgraphEvaluator ev(g, s, cfg);
  return eval_node_qpredicate(ev, q, q.node(node));
}

inline bool matches(SubgraphEvaluator& ev, const Query& q) {
  for (const auto& [id, n] : q.nodes) {
    if (eval_node_qpredicate(ev, q, n) != (n.sign == Sign::kPositive)) return false;
  }
  return true;
}

/// S matches Q. Throws InvalidSubgraph when S is not a subgraph of G.
inline bool matches(const SubgraphRef& s, const Query& q, const GeneralizedGraph& g,
                    const MatchConfig& cfg = {}) {
  SubgraphEvaluator ev(g, s, cfg);
  return matches(ev, q);
}

// ---------------------------------------------------------------------------
// Witnesses

struct EdgeCertificate {
  std::string edge;
  EdgeEnd end = EdgeEnd::kOrigin;
  Sign sign = Sign::kPositive;
  /// A satisfying walk for a positive edge; empty for a negative edge,
  /// certifying that no satisfying walk exists.
  std::optional<Walk> walk;
};

struct NodeWitness {
  std::string node;
  Sign sign = Sign::kPositive;
  /// Value of the unsigned node Q-predicate.
  bool exists = false;
  /// The first witnessing data node; empty when none exists (for a
  /// negative node this is the certificate of satisfaction).
  std::optional<std::string> witness;
  std::vector<EdgeCertificate> edges;
};

struct MatchWitness {
  bool matched = true;
  std::vector<NodeWitness> nodes;
  /// First query node, by id, whose signed Q-predicate is false.
  std::optional<std::string> first_failure;
  std::string reason;
};

inline MatchWitness explain_match(SubgraphEvaluator& ev, const Query& q) {
  MatchWitness out;
  const auto& g = ev.graph();
  for (const auto& [id, n] : q.nodes) {
    NodeWitness w;
    w.node = id;
    w.sign = n.sign;
    const auto v = find_witness(ev, q, n);
    w.exists = v.has_value();
    if (v) {
      w.witness = g.node_id(*v);
      for (const auto& [e, end] : contributions(q, id)) {
        EdgeCertificate c{e->id, end, e->sign, std::nullopt};
        if (e->sign == Sign::kPositive) {
          c.walk = ev.witness_walk(e->theta, q.node(e->source).theta, q.node(e->target).theta, end, *v);
        }
        w.edges.push_back(std::move(c));
      }
    }
    const bool satisfied = w.exists == (n.sign == Sign::kPositive);
    if (!satisfied && !out.first_failure) {
      out.matched = false;
      out.first_failure = id;
      out.reason = n.sign == Sign::kPositive
                       ? "positive node '" + id + "' has no witness"
                       : "negative node '" + id + "' is witnessed by '" + *w.witness + "'";
    }
    out.nodes.push_back(std::move(w));
  }
  return out;
}

inline MatchWitness explain_match(const SubgraphRef& s, const Query& q, const GeneralizedGraph& g,
                                  const MatchConfig& cfg = {}) {
  SubgraphEvaluator ev(g, s, cfg);
  return explain_match(ev, q);
}

// ---------------------------------------------------------------------------
// Enumeration

/// Streams the subgraphs (in enumeration order) that match a query.
class MatchEnumerator {
 public:
  MatchEnumerator(const GeneralizedGraph& g, const Query& q, MatchConfig cfg,
                  SubgraphEnumOptions opts)
      : g_(&g), q_(&q), cfg_(cfg), it_(g, withcap(opts, cfg)) {}

  std::optional<SubgraphRef> next() {
    while (auto s = it_.next()) {
      SubgraphEvaluator ev(*g_, *s, cfg_);
      if (matches(ev, *q_)) return s;
    }
    return std::nullopt;
  }

 private:
  static SubgraphEnumOptions withcap(SubgraphEnumOptions opts, const MatchConfig& cfg) {
    opts.yield_cap = std::min(opts.yield_cap, cfg.yield_cap);
    return opts;
  }

  const GeneralizedGraph* g_;
  const Query* q_;
  MatchConfig cfg_;
  SubgraphEnumerator it_;
};

inline std::vector<SubgraphRef> enumerate_matches(const GeneralizedGraph& g, const Query& q,
                                                  const MatchConfig& cfg, std::size_t max_nodes,
                                                  bool connected_only = false,
                                                  bool include_empty = true) {
  SubgraphEnumOptions opts;
  opts.max_nodes = max_nodes;
  opts.connected_only = connected_only;
  opts.include_empty = include_empty;
  MatchEnumerator it(g, q, cfg, opts);
  std::vector<SubgraphRef> out;
  while (auto s = it.next()) out.push_back(std::move(*s));
  return out;
}

}  // namespace ggq
