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


#include <gtest/gtest.h>

#include "ggq/ggq.hpp"
#include "support/generators.hpp"

namespace ggq {
namespace {

TEST(ValidateQuery, Examples) {
  EXPECT_TRUE(validate_query(Query{}).ok());
  Query q;
  q.add_node("a", Sign::kPositive);
  q.add_edge("e", "a", "zz", Sign::kPositive);
  auto r = validate_query(q);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.issues.front().code, "DanglingEndpoint");
  EXPECT_TRUE(validate_query(fixtures::query("p1")).ok());
}

TEST(ValidateQuery, AllFixturesValid) {
  for (const auto& [name, text] : fixtures::query_texts()) {
    EXPECT_TRUE(validate_query(load_query(text)).ok()) << name;
    EXPECT_TRUE(validate_query_document(text).ok()) << name;
  }
}

TEST(Query, DuplicateAndUnknownIds) {
  Query q;
  q.add_node("a", Sign::kPositive);
  EXPECT_THROW(q.add_node("a", Sign::kNegative), Error);
  q.add_edge("e", "a", "a", Sign::kPositive);
  EXPECT_THROW(q.add_edge("e", "a", "a", Sign::kPositive), Error);
  EXPECT_TRUE(q.edge("e").is_loop());
  try {
    q.node("zz");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownNode);
  }
  EXPECT_THROW(q.edge("zz"), Error);
}

TEST(SignedPartitions, Examples) {
  auto p3 = signed_partitions(fixtures::query("p3"));
  EXPECT_TRUE(p3.negative_nodes.empty());
  EXPECT_EQ(p3.positive_nodes.size(), 3u);

  Query one;
  one.add_node("n", Sign::kNegative);
  auto p = signed_partitions(one);
  EXPECT_TRUE(p.positive_nodes.empty());
  EXPECT_EQ(p.negative_nodes, (std::set<std::string>{"n"}));

  auto p5q = fixtures::query("p5");
  auto p5 = signed_partitions(p5q);
  EXPECT_EQ(p5.positive_nodes, (std::set<std::string>{"n1", "n2"}));
  EXPECT_TRUE(p5q.node("n2").theta.is_true());
  EXPECT_FALSE(p5q.node("n1").theta.is_true());
}

TEST(Environment, QueryNodes) {
  auto q = fixtures::query("p1");
  EXPECT_EQ(environment(q, "teacher"), (std::set<std::string>{"jedi", "student", "teacher"}));
  Query iso;
  iso.add_node("x", Sign::kPositive);
  EXPECT_TRUE(environment(iso, "x").empty());
  EXPECT_EQ(incident_edges(q, "jedi"), (std::vector<std::string>{"student_devoted", "teacher_devoted"}));
}

TEST(QueryMinus, Examples) {
  auto q = fixtures::query("p1");
  EXPECT_TRUE(same_query(query_minus(q, Query{}), q));
  auto r = query_minus(q, node_part(q, {"teacher"}));
  EXPECT_FALSE(r.has_node("teacher"));
  EXPECT_FALSE(r.has_edge("teaches"));
  EXPECT_FALSE(r.has_edge("teacher_devoted"));
  EXPECT_TRUE(r.has_edge("student_devoted"));
  EXPECT_TRUE(validate_query(r).ok());
  auto e = query_minus(q, edge_part(q, {"teaches"}));
  EXPECT_EQ(e.nodes.size(), 3u);
  EXPECT_EQ(e.edges.size(), 2u);
  Query other;
  other.add_node("teacher", Sign::kNegative);
  try {
    query_minus(q, other);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::kNotASubquery);
  }
}

TEST(QueryMinus, CloneCopyRemovedIsEquivalent) {
  auto g = build_graph({{"a", {{"type", std::string("A")}}}, {"b", {}}, {"c", {}}},
                       {{"ab", Incidence::directed({"a", "b"}), {{"type", std::string("A")}}},
                        {"bc", Incidence::undirected({"b", "c"}), {{"type", std::string("B")}}}});
  Query q;
  q.add_node("x", Sign::kPositive, parse_node_predicate("v in S"));
  q.add_node("y", Sign::kPositive);
  q.add_edge("xy", "x", "y", Sign::kPositive, parse_path_predicate("types =~ /A B*/"));
  auto cl = clone_with_map(q, {"x"});
  auto back = query_minus(cl.query, node_part(cl.query, {cl.copy_of.at("x")}));
  EXPECT_TRUE(same_query(back, q));
  EXPECT_TRUE(equivalent_oracle(back, q, g, {}, {3}));
}

TEST(QueryProperties, PartitionsAndMinus) {
  testing::Corpus c(41);
  for (int i = 0; i < 300; ++i) {
    auto q = c.query(4, 5);
    auto p = signed_partitions(q);
    EXPECT_EQ(p.positive_nodes.size() + p.negative_nodes.size(), q.nodes.size());
    EXPECT_EQ(p.positive_edges.size() + p.negative_edges.size(), q.edges.size());
    for (const auto& n : p.positive_nodes) EXPECT_FALSE(p.negative_nodes.count(n));
    std::set<std::string> pick_nodes, pick_edges;
    for (const auto& [id, n] : q.nodes) {
      if (c.coin(0.3)) pick_nodes.insert(id);
    }
    for (const auto& [id, e] : q.edges) {
      if (c.coin(0.3)) pick_edges.insert(id);
    }
    Query part = node_part(q, pick_nodes);
    for (const auto& id : pick_edges) part.edges.emplace(id, q.edge(id));
    EXPECT_TRUE(is_subquery(part, q));
    auto r = query_minus(q, part);
    EXPECT_TRUE(validate_query(r).ok());
    EXPECT_TRUE(is_subquery(r, q));
  }
}

}  // namespace
}  // namespace ggq
