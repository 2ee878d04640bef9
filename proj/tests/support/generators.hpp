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


// Seeded random corpora for property tests: small generalized graphs,
// predicates, queries and type regexes.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ggq/ggq.hpp"

namespace ggq::testing {

class Corpus {
 public:
  explicit Corpus(std::uint32_t seed) : rng_(seed) {}

  std::size_t uniform(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[uniform(0, v.size() - 1)];
  }

  /// Up to `max_nodes` nodes and `max_edges` edges mixing directed and
  /// undirected binary edges, loops and ternary edges. Node and edge types
  /// are drawn from {A, B, C}; some elements lack a type or weight.
  GeneralizedGraph graph(std::size_t max_nodes = 5, std::size_t max_edges = 6, std::size_t min_nodes = 1) {
    const std::size_t n = uniform(min_nodes, max_nodes);
    std::vector<NodeSpec> nodes;
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) {
      ids.push_back(std::string(1, static_cast<char>('a' + i)));
      PropertyMap props;
      if (coin(0.9)) props.emplace("type", pick(types_));
      if (coin(0.7)) props.emplace("w", static_cast<std::int64_t>(uniform(0, 3)));
      nodes.push_back({ids.back(), props});
    }
    std::vector<EdgeSpec> edges;
    const std::size_t m = n == 0 ? 0 : uniform(0, max_edges);
    for (std::size_t i = 0; i < m; ++i) {
      PropertyMap props;
      if (coin(0.9)) props.emplace("type", pick(types_));
      if (coin(0.7)) props.emplace("w", static_cast<std::int64_t>(uniform(0, 3)));
      const std::size_t shape = uniform(0, 9);
      std::vector<std::string> members;
      bool ordered = true;
      if (shape <= 5) {
        members = {pick(ids), pick(ids)};
        if (members[0] == members[1] && coin(0.5)) members[1] = pick(ids);
      } else if (shape <= 7) {
        members = {pick(ids), pick(ids)};
        ordered = false;
      } else if (shape == 8) {
        const auto& u = pick(ids);
        members = {u, u};
        ordered = coin(0.7);
      } else {
        members = {pick(ids), pick(ids), pick(ids)};
        ordered = coin(0.5);
      }
      edges.push_back({"e" + std::to_string(i),
                       ordered ? Incidence::directed(members) : Incidence::undirected(members), props});
    }
    return build_graph(std::move(nodes), std::move(edges));
  }

  NodePredicate node_predicate() { return parse_node_predicate(pick(node_pool_)); }
  PathPredicate path_predicate() { return parse_path_predicate(pick(path_pool_)); }
  /// Predicates the exact product strategy handles.
  PathPredicate regex_path_predicate() { return parse_path_predicate(pick(regex_pool_)); }

  /// Up to `max_nodes` query nodes q0.. with random signs and predicates
  /// and up to `max_edges` edges (loops allowed).
  Query query(std::size_t max_nodes = 3, std::size_t max_edges = 3, double positive = 0.7) {
    Query q;
    const std::size_t n = uniform(0, max_nodes);
    for (std::size_t i = 0; i < n; ++i) {
      q.add_node("q" + std::to_string(i), coin(positive) ? Sign::kPositive : Sign::kNegative, node_predicate());
    }
    if (n == 0) return q;
    const std::size_t m = uniform(0, max_edges);
    for (std::size_t i = 0; i < m; ++i) {
      const std::string s = "q" + std::to_string(uniform(0, n - 1));
      const std::string t = "q" + std::to_string(uniform(0, n - 1));
      q.add_edge("f" + std::to_string(i), s, t, coin(positive) ? Sign::kPositive : Sign::kNegative,
                 path_predicate());
    }
    return q;
  }

  /// Random regex tree with at most `budget` AST nodes over {A, B, C}.
  TypeRegex regex(std::size_t budget = 6) {
    using K = TypeRegex::Kind;
    if (budget <= 1) return coin(0.8) ? TypeRegex::lit(pick(types_)) : TypeRegex::any();
    switch (uniform(0, 5)) {
      case 0: return TypeRegex::lit(pick(types_));
      case 1: {
        const std::size_t left = uniform(1, budget - 2 > 0 ? budget - 2 : 1);
        return TypeRegex::nary(K::kConcat, {regex(left), regex(budget - 1 - left > 0 ? budget - 1 - left : 1)});
      }
      case 2: {
        const std::size_t left = uniform(1, budget - 2 > 0 ? budget - 2 : 1);
        return TypeRegex::nary(K::kAlternation, {regex(left), regex(budget - 1 - left > 0 ? budget - 1 - left : 1)});
      }
      case 3: return TypeRegex::unary(K::kStar, regex(budget - 1));
      case 4: return TypeRegex::unary(K::kPlus, regex(budget - 1));
      default: return TypeRegex::unary(K::kOptional, regex(budget - 1));
    }
  }

  std::vector<std::string> sequence(std::size_t max_len) {
    std::vector<std::string> out(uniform(0, max_len));
    for (auto& s : out) s = pick(types_);
    return out;
  }

  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
  std::vector<std::string> types_{"A", "B", "C"};
  std::vector<std::string> node_pool_{
      "true",
      "v in S",
      "v not in S",
      "type(v) = \"A\"",
      "type(v) != \"B\"",
      "w(v) >= 2",
      "deg(v) >= 2",
      "deg_out(v) > 0",
      "reachable_from_S(v)",
      "reaches_S(v)",
      "v in S and type(v) = \"A\"",
      "v in S or type(v) = \"C\"",
      "not (v in S and w(v) < 2)",
  };
  std::vector<std::string> path_pool_{
      "true",
      "types =~ /A/",
      "types =~ /(A|B)+/",
      "types =~ /. C?/",
      "types =~ /A* B/",
      "src in S",
      "dst not in S",
      "src not in S and dst in S",
      "len <= 2",
      "len >= 2 and types =~ /.*/",
      "all w >= 1",
      "any type = \"B\"",
      "types =~ /A*/ and dst in S",
      "not types =~ /B/",
      "types =~ /(A|C) B*/ or len = 3",
  };
  std::vector<std::string> regex_pool_{
      "true",
      "types =~ /A/",
      "types =~ /(A|B)+/",
      "types =~ /. C?/",
      "types =~ /A* B/",
      "types =~ /.*/",
      "types =~ /A B A/",
      "types =~ /(A B)+/",
      "types =~ /C+ A?/",
      "types =~ /A/ and dst in S",
      "types =~ /B+/ and src not in S",
      "dst in S",
  };
};

}  // namespace ggq::testing
