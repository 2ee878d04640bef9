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

ErrorCode node_parse_error(std::string_view text) {
  try {
    parse_node_predicate(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIoError;
}

ErrorCode path_parse_error(std::string_view text) {
  try {
    parse_path_predicate(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIoError;
}

const GraphDocument& sw() { return fixtures::starwars(); }

TEST(ParseNodePredicate, MembershipAndType) {
  auto f = parse_node_predicate("v in S and type(v) = \"character\"");
  ASSERT_EQ(f.op, NodePredicate::Op::kAnd);
  ASSERT_EQ(f.children.size(), 2u);
  EXPECT_EQ(f.children[0].atom.kind, NodeAtom::Kind::kInSubgraph);
  EXPECT_EQ(f.children[1].atom.kind, NodeAtom::Kind::kProperty);
  EXPECT_EQ(f.children[1].atom.name, "type");
  EXPECT_EQ(to_string(f), "v in S and type(v) = \"character\"");
}

TEST(ParseNodePredicate, DegreeComparison) {
  auto f = parse_node_predicate("deg_out(v) > 3 and type(v) = \"character\"");
  EXPECT_EQ(f.children[0].atom.kind, NodeAtom::Kind::kMetric);
  EXPECT_EQ(f.children[0].atom.name, "deg_out");
  EXPECT_EQ(f.children[0].atom.op, CmpOp::kGt);
}

TEST(ParseNodePredicate, EmptyIsTrue) {
  EXPECT_TRUE(parse_node_predicate("").is_true());
  EXPECT_TRUE(parse_node_predicate("   ").is_true());
  EXPECT_TRUE(parse_path_predicate("").is_true());
}

TEST(ParseNodePredicate, Precedence) {
  auto f = parse_node_predicate("v in S or v not in S and true");
  EXPECT_EQ(f.op, NodePredicate::Op::kOr);
  auto g = parse_node_predicate("not v in S and reaches_S(v)");
  EXPECT_EQ(g.op, NodePredicate::Op::kAnd);
  EXPECT_EQ(g.children[0].op, NodePredicate::Op::kNot);
}

TEST(ParseNodePredicate, Errors) {
  EXPECT_EQ(node_parse_error("v in"), ErrorCode::kSyntaxError);
  EXPECT_EQ(node_parse_error("(v in S"), ErrorCode::kSyntaxError);
  EXPECT_EQ(node_parse_error("type(v) = "), ErrorCode::kSyntaxError);
  EXPECT_EQ(node_parse_error("v in S S"), ErrorCode::kSyntaxError);
  EXPECT_EQ(node_parse_error("deg(v) > \"x\""), ErrorCode::kTypeMismatch);
  EXPECT_EQ(node_parse_error("foo(v)"), ErrorCode::kUnknownFunction);
  EXPECT_EQ(node_parse_error("deg(v) > 1.5"), ErrorCode::kSyntaxError);
}

TEST(ParseNodePredicate, SyntaxErrorCarriesPosition) {
  try {
    parse_node_predicate("v in S and and");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.position(), 11u);
  }
}

TEST(ParsePathPredicate, Examples) {
  auto r = parse_path_predicate("types =~ /(FRIENDS|TEACHES)+/");
  ASSERT_EQ(r.op, PathPredicate::Op::kAtom);
  EXPECT_EQ(r.atom.kind, PathAtom::Kind::kTypes);
  ASSERT_TRUE(r.atom.regex);
  EXPECT_EQ(r.atom.regex->text, "(FRIENDS|TEACHES)+");

  auto m = parse_path_predicate("src not in S and dst in S");
  EXPECT_EQ(to_string(m), "src not in S and dst in S");
  EXPECT_TRUE(is_regex_membership_class(m));

  auto l = parse_path_predicate("len <= 1 and types =~ /TEACHES/");
  EXPECT_FALSE(is_regex_membership_class(l));
  EXPECT_EQ(path_parse_error("len <= \"a\""), ErrorCode::kTypeMismatch);
  EXPECT_EQ(path_parse_error("types =~ /A"), ErrorCode::kSyntaxError);
  EXPECT_EQ(path_parse_error("types =~ //"), ErrorCode::kEmptyAlphabetToken);
  EXPECT_EQ(path_parse_error("src in T"), ErrorCode::kSyntaxError);
  EXPECT_EQ(path_parse_error("all w"), ErrorCode::kSyntaxError);
}

TEST(EvalNodePredicate, Basics) {
  const auto& g = sw().graph;
  EXPECT_TRUE(eval_node_predicate(parse_node_predicate("true"), "luke", {}, g));
  EXPECT_FALSE(eval_node_predicate(parse_node_predicate("v in S"), "luke", {}, g));
  EXPECT_TRUE(eval_node_predicate(parse_node_predicate("v in S"), "luke", sw().subgraphs.at("S4"), g));
  EXPECT_TRUE(eval_node_predicate(parse_node_predicate("age(v) > 500"), "yoda", {}, g));
  EXPECT_FALSE(eval_node_predicate(parse_node_predicate("age(v) > 500"), "luke", {}, g));
  EXPECT_FALSE(eval_node_predicate(parse_node_predicate("age(v) > 500"), "tatooine", {}, g));
  EXPECT_TRUE(eval_node_predicate(parse_node_predicate("deg_out(v) > 3"), "luke", {}, g));
}

TEST(EvalNodePredicate, ReachabilityTowardsChewbaka) {
  const auto& g = sw().graph;
  SubgraphRef s{{"han"}, {}};
  EXPECT_TRUE(eval_node_predicate(parse_node_predicate("reachable_from_S(v)"), "chewbaka", s, g));
  EXPECT_TRUE(eval_node_predicate(parse_node_predicate("reaches_S(v)"), "chewbaka", s, g));
  EXPECT_FALSE(eval_node_predicate(parse_node_predicate("reachable_from_S(v)"), "chewbaka", {}, g));
}

TEST(EvalNodePredicate, ReachabilityIsDirected) {
  auto g = build_graph({{"a", {}}, {"b", {}}}, {{"ab", Incidence::directed({"a", "b"}), {}}});
  SubgraphRef s{{"a"}, {}};
  EXPECT_TRUE(eval_node_predicate(parse_node_predicate("reachable_from_S(v)"), "b", s, g));
  EXPECT_FALSE(eval_node_predicate(parse_node_predicate("reaches_S(v)"), "b", s, g));
  EXPECT_FALSE(eval_node_predicate(parse_node_predicate("reachable_from_S(v)"), "a", s, g));
  EXPECT_TRUE(eval_node_predicate(parse_node_predicate("reaches_S(v)"), "a", SubgraphRef{{"b"}, {}}, g));
}

TEST(EvalNodePredicate, CrossKindComparison) {
  auto g = build_graph({{"a", {{"w", std::int64_t{3}}, {"flag", true}, {"name", std::string("x")}}}}, {});
  EXPECT_FALSE(eval_node_predicate(parse_node_predicate("name(v) = 3"), "a", {}, g));
  EXPECT_TRUE(eval_node_predicate(parse_node_predicate("w(v) = 3.0"), "a", {}, g));
  EXPECT_TRUE(eval_node_predicate(parse_node_predicate("w(v) < 3.5"), "a", {}, g));
  EXPECT_TRUE(eval_node_predicate(parse_node_predicate("flag(v) = true"), "a", {}, g));
  try {
    eval_node_predicate(parse_node_predicate("name(v) < 3"), "a", {}, g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTypeMismatch);
  }
  EXPECT_THROW(eval_node_predicate(parse_node_predicate("flag(v) < true"), "a", {}, g), Error);
}

TEST(EvalPathPredicate, Examples) {
  const auto& g = sw().graph;
  auto w = make_walk(g, {"yoda", "luke"}, {"yoda_teaches_luke"});
  const auto& s1 = sw().subgraphs.at("S1");
  EXPECT_FALSE(eval_path_predicate(parse_path_predicate("src not in S and dst in S"), w, s1, g));
  EXPECT_TRUE(eval_path_predicate(parse_path_predicate("src not in S and dst in S"), w, SubgraphRef{{"luke"}, {}}, g));
  EXPECT_TRUE(eval_path_predicate(parse_path_predicate("types =~ /TEACHES/"), w, s1, g));
  EXPECT_FALSE(eval_path_predicate(parse_path_predicate("len >= 2"), w, s1, g));
  EXPECT_TRUE(eval_path_predicate(parse_path_predicate("len = 1"), w, s1, g));
}

TEST(EvalPathPredicate, Quantifiers) {
  auto g = build_graph({{"a", {}}, {"b", {}}, {"c", {}}},
                       {{"ab", Incidence::directed({"a", "b"}), {{"type", std::string("A")}, {"w", std::int64_t{1}}}},
                        {"bc", Incidence::directed({"b", "c"}), {{"type", std::string("B")}}}});
  auto w = make_walk(g, {"a", "b", "c"}, {"ab", "bc"});
  EXPECT_FALSE(eval_path_predicate(parse_path_predicate("all w >= 1"), w, {}, g));
  EXPECT_TRUE(eval_path_predicate(parse_path_predicate("any w >= 1"), w, {}, g));
  EXPECT_TRUE(eval_path_predicate(parse_path_predicate("any type = \"B\""), w, {}, g));
  EXPECT_TRUE(eval_path_predicate(parse_path_predicate("all type != \"C\""), w, {}, g));
  EXPECT_TRUE(eval_path_predicate(parse_path_predicate("types =~ /A B/"), w, {}, g));
}

TEST(PredicateAlgebra, Laws) {
  auto phi = parse_node_predicate("v in S and w(v) > 1");
  EXPECT_TRUE(syntactic_equiv(conjoin(NodePredicate::constant(true), phi), phi));
  EXPECT_TRUE(syntactic_equiv(parse_node_predicate("v in S and deg(v) > 1"),
                              parse_node_predicate("deg(v) > 1 and v in S")));
  auto ab = parse_node_predicate("v in S and deg(v) > 1");
  auto a = parse_node_predicate("v in S");
  EXPECT_TRUE(syntactic_implies(ab, a));
  EXPECT_FALSE(syntactic_implies(a, ab));
  EXPECT_TRUE(syntactic_implies(NodePredicate::constant(false), a));
  EXPECT_TRUE(syntactic_implies(a, NodePredicate::constant(true)));
  EXPECT_EQ(canonical(parse_node_predicate("a(v) = 1 and (b(v) = 2 and a(v) = 1) and true")),
            "a(v) = 1 and b(v) = 2");
  EXPECT_EQ(canonical(parse_node_predicate("v in S and false")), "false");
  EXPECT_EQ(canonical(parse_node_predicate("not not v in S")), "v in S");
  EXPECT_EQ(canonical(parse_node_predicate("not v in S")), "v not in S");
}

// Properties.

std::vector<GeneralizedGraph> small_graphs(testing::Corpus& c, int n) {
  std::vector<GeneralizedGraph> out;
  for (int i = 0; i < n; ++i) out.push_back(c.graph(4, 5));
  return out;
}

TEST(PredicateProperties, PrintParseRoundTrip) {
  testing::Corpus c(31);
  for (int i = 0; i < 300; ++i) {
    auto a = c.node_predicate();
    auto b = c.node_predicate();
    auto f = c.coin() ? NodePredicate::disjunction({a, NodePredicate::negation(b)}) : conjoin(a, b);
    EXPECT_EQ(canonical(parse_node_predicate(to_string(f))), canonical(f)) << to_string(f);
    auto p = PathPredicate::conjunction({c.path_predicate(), PathPredicate::negation(c.path_predicate())});
    EXPECT_EQ(canonical(parse_path_predicate(to_string(p))), canonical(p)) << to_string(p);
  }
}

TEST(PredicateProperties, NormalizePreservesMeaning) {
  testing::Corpus c(32);
  for (const auto& g : small_graphs(c, 40)) {
    SubgraphEnumOptions o;
    o.max_nodes = 2;
    auto subs = enumerate_subgraphs(g, o);
    for (int k = 0; k < 10; ++k) {
      auto f = NodePredicate::disjunction(
          {conjoin(c.node_predicate(), c.node_predicate()), NodePredicate::negation(c.node_predicate())});
      auto nf = normalize(f);
      for (const auto& s : subs) {
        SubgraphContext ctx(g, s);
        for (Index v = 0; v < g.node_count(); ++v) ASSERT_EQ(eval_node(f, v, ctx), eval_node(nf, v, ctx));
      }
    }
  }
}

TEST(PredicateProperties, ConjoinIsMonotone) {
  testing::Corpus c(33);
  for (const auto& g : small_graphs(c, 40)) {
    SubgraphEnumOptions o;
    o.max_nodes = 2;
    auto subs = enumerate_subgraphs(g, o);
    for (int k = 0; k < 8; ++k) {
      auto p = c.node_predicate();
      auto q = c.node_predicate();
      auto pq = conjoin(p, q);
      auto ep = c.path_predicate();
      auto eq = c.path_predicate();
      auto epq = conjoin(ep, eq);
      for (const auto& s : subs) {
        SubgraphContext ctx(g, s);
        for (Index v = 0; v < g.node_count(); ++v) {
          if (eval_node(pq, v, ctx)) {
            EXPECT_TRUE(eval_node(p, v, ctx));
            EXPECT_TRUE(eval_node(q, v, ctx));
          }
          WalkEnumerator it(g, v, std::nullopt, 2);
          while (auto w = it.next()) {
            if (eval_path(epq, *w, ctx)) {
              EXPECT_TRUE(eval_path(ep, *w, ctx));
              EXPECT_TRUE(eval_path(eq, *w, ctx));
            }
          }
        }
      }
    }
  }
}

TEST(PredicateProperties, SyntacticImplicationIsSound) {
  testing::Corpus c(34);
  std::size_t implied = 0;
  for (const auto& g : small_graphs(c, 40)) {
    SubgraphEnumOptions o;
    o.max_nodes = 3;
    auto subs = enumerate_subgraphs(g, o);
    for (int k = 0; k < 10; ++k) {
      auto p = c.coin() ? conjoin(c.node_predicate(), c.node_predicate()) : c.node_predicate();
      auto q = c.coin() ? p.children.empty() ? p : p.children.front() : c.node_predicate();
      if (!syntactic_implies(p, q)) continue;
      ++implied;
      for (const auto& s : subs) {
        SubgraphContext ctx(g, s);
        for (Index v = 0; v < g.node_count(); ++v) {
          if (eval_node(p, v, ctx)) EXPECT_TRUE(eval_node(q, v, ctx)) << to_string(p) << " / " << to_string(q);
        }
      }
    }
  }
  EXPECT_GT(implied, 50u);
}

}  // namespace
}  // namespace ggq
