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


// Algebraic laws checked over randomly generated graphs and queries.

#include <gtest/gtest.h>

#include "ggq/ggq.hpp"
#include "support/generators.hpp"
#include "support/refine_cases.hpp"

namespace ggq {
namespace {

constexpr RefineOp kOps[] = {RefineOp::kAddNode, RefineOp::kAddEdge, RefineOp::kAddEdgePredicate,
                             RefineOp::kAddNodePredicate};

TEST(RefinementProperties, OperatorsPartitionMatches) {
  testing::Corpus c(71);
  for (int i = 0; i < 80; ++i) {
    auto g = c.graph(4, 5);
    auto q = c.query(3, 3, 0.8);
    auto rc = testing::random_refinement(c, q, kOps[i % 4]);
    auto report = verify_refinement_set(rc.set, g, {}, {4});
    EXPECT_TRUE(report.ok()) << rc.description << "\n" << store_query(q) << store_graph(g);
    auto simple = verify_refinement_set(simplified(rc.set), g, {}, {4});
    EXPECT_TRUE(simple.ok()) << "simplified " << rc.description;
  }
}

TEST(RefinementProperties, MemberCounts) {
  testing::Corpus c(72);
  for (int i = 0; i < 200; ++i) {
    auto q = c.query(3, 3, 0.8);
    auto rc = testing::random_refinement(c, q, kOps[i % 4]);
    const auto& r = rc.set;
    switch (rc.op) {
      case RefineOp::kAddNode: EXPECT_EQ(r.members.size(), 2u); break;
      case RefineOp::kAddEdge:
      case RefineOp::kAddEdgePredicate: {
        const std::size_t copies = r.members.front().nodes.size() - q.nodes.size();
        EXPECT_EQ(r.members.size(), copies == 1 ? 2u : 4u) << rc.description;
        break;
      }
      case RefineOp::kAddNodePredicate: {
        const auto& m0 = r.members.front();
        const std::size_t copies = m0.nodes.size() - q.nodes.size();
        EXPECT_EQ(r.members.size(), std::size_t{1} << copies);
        break;
      }
    }
  }
}

TEST(RefinementProperties, CloneOfPositiveNodesIsEquivalent) {
  testing::Corpus c(73);
  for (int i = 0; i < 80; ++i) {
    auto g = c.graph(4, 5);
    auto q = c.query(3, 3);
    std::set<std::string> w;
    for (const auto& n : testing::positive_nodes(q)) {
      if (c.coin()) w.insert(n);
    }
    EXPECT_TRUE(equivalent_oracle(clone_by_duplication(q, w), q, g, {}, {3})) << store_query(q);
  }
}

TEST(RefinementProperties, ConservativeExtensionRefines) {
  testing::Corpus c(74);
  std::size_t conservative = 0;
  for (int i = 0; i < 150; ++i) {
    auto g = c.graph(4, 5);
    auto q2 = c.query(3, 2);
    auto q1 = q2;
    q1.add_node("z", c.coin(0.8) ? Sign::kPositive : Sign::kNegative, c.node_predicate());
    std::vector<std::string> ids;
    for (const auto& [id, n] : q1.nodes) ids.push_back(id);
    for (int k = 0; k < 2; ++k) {
      q1.add_edge("x" + std::to_string(k), c.pick(ids), c.pick(ids), c.coin(0.8) ? Sign::kPositive : Sign::kNegative,
                  c.path_predicate());
    }
    if (!is_conservative_extension(q2, q1)) continue;
    ++conservative;
    EXPECT_TRUE(refines_oracle(q1, q2, g, {}, {3})) << store_query(q2) << store_query(q1);
  }
  EXPECT_GT(conservative, 30u);
}

TEST(RefinementProperties, OrderLaws) {
  testing::Corpus c(75);
  for (int i = 0; i < 60; ++i) {
    auto g = c.graph(4, 4);
    auto a = c.query(2, 2);
    auto b = testing::random_refinement(c, a, kOps[i % 4]).set.members.front();
    auto d = testing::random_refinement(c, b, kOps[(i + 1) % 4]).set.members.front();
    OracleOptions o{3};
    EXPECT_TRUE(refines_oracle(a, a, g, {}, o));
    const bool db = refines_oracle(d, b, g, {}, o);
    const bool ba = refines_oracle(b, a, g, {}, o);
    EXPECT_TRUE(db);
    EXPECT_TRUE(ba);
    if (db && ba) EXPECT_TRUE(refines_oracle(d, a, g, {}, o));
    auto x = c.query(2, 2);
    auto y = c.query(2, 2);
    EXPECT_EQ(refines_oracle(x, y, g, {}, o) && refines_oracle(y, x, g, {}, o), equivalent_oracle(x, y, g, {}, o));
  }
}

TEST(RefinementProperties, SimplifyPreservesMeaning) {
  testing::Corpus c(76);
  for (int i = 0; i < 80; ++i) {
    auto g = c.graph(4, 5);
    auto q = c.query(3, 3);
    const auto pos = testing::positive_nodes(q);
    if (!pos.empty() && c.coin()) q = clone_by_duplication(q, {c.pick(pos)});
    auto s = simplify(q);
    EXPECT_TRUE(validate_query(s).ok());
    EXPECT_LE(s.nodes.size(), q.nodes.size());
    EXPECT_TRUE(equivalent_oracle(s, q, g, {}, {3})) << store_query(q);
  }
}

}  // namespace
}  // namespace ggq
