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

// Node and path predicates: a boolean skeleton (and / or / not) over
// context atoms, with a parser, a printer, normalization and evaluation.
//
// Node context (v, S, G):
//   v in S | v not in S | reachable_from_S(v) | reaches_S(v)
//   key(v) CMP literal | deg(v) CMP INT | deg_out(v) ... | deg_in(v) ...
//
// Path context (walk, S, G):
//   types =~ /REGEX/ | len CMP INT | src [not] in S | dst [not] in S
//   all key CMP literal | any key CMP literal

#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ggq/error.hpp"
#include "ggq/graph.hpp"
#include "ggq/type_regex.hpp"
#include "ggq/value.hpp"

namespace ggq {

/// Boolean formula over atoms of type `Atom`.
template <class Atom>
struct Formula {
  enum class Op { kTrue, kFalse, kAtom, kNot, kAnd, kOr };

  Op op = Op::kTrue;
  Atom atom{};
  std::vector<Formula> children;

  static Formula constant(bool value) { return Formula{value ? Op::kTrue : Op::kFalse, {}, {}}; }
  static Formula of(Atom a) { return Formula{Op::kAtom, std::move(a), {}}; }
  static Formula negation(Formula f) { return Formula{Op::kNot, {}, {std::move(f)}}; }
  static Formula conjunction(std::vector<Formula> parts) {
    return Formula{Op::kAnd, {}, std::move(parts)};
  }
  static Formula disjunction(std::vector<Formula> parts) {
    return Formula{Op::kOr, {}, std::move(parts)};
  }

  bool is_true() const { return op == Op::kTrue; }
  bool is_false() const { return op == Op::kFalse; }
};

// ---------------------------------------------------------------------------
// Atoms

struct NodeAtom {
  enum class Kind { kInSubgraph, kReachableFromSubgraph, kReachesSubgraph, kProperty, kMetric };

  Kind kind = Kind::kInSubgraph;
  std::string name;
  CmpOp op = CmpOp::kEq;
  PropertyValue literal;
};

inline std::string to_string(const NodeAtom& a) {
  switch (a.kind) {
    case NodeAtom::Kind::kInSubgraph: return "v in S";
    case NodeAtom::Kind::kReachableFromSubgraph: return "reachable_from_S(v)";
    case NodeAtom::Kind::kReachesSubgraph: return "reaches_S(v)";
    case NodeAtom::Kind::kProperty:
    case NodeAtom::Kind::kMetric:
      return a.name + "(v) " + to_string(a.op) + " " + format_value(a.literal);
  }
  return "?";
}

inline std::optional<std::string> negated_form(const NodeAtom& a) {
  if (a.kind == NodeAtom::Kind::kInSubgraph) return "v not in S";
  return std::nullopt;
}

struct PathAtom {
  enum class Kind { kTypes, kLength, kSourceInSubgraph, kTargetInSubgraph, kAllEdges, kAnyEdge };

  Kind kind = Kind::kLength;
  std::string key;
  CmpOp op = CmpOp::kEq;
  PropertyValue literal;
  std::shared_ptr<const CompiledTypeRegex> regex;
};

inline std::string to_string(const PathAtom& a) {
  switch (a.kind) {
    case PathAtom::Kind::kTypes: return "types =~ /" + a.regex->text + "/";
    case PathAtom::Kind::kLength: return "len " + std::string(to_string(a.op)) + " " +
                                         format_value(a.literal);
    case PathAtom::Kind::kSourceInSubgraph: return "src in S";
    case PathAtom::Kind::kTargetInSubgraph: return "dst in S";
    case PathAtom::Kind::kAllEdges:
    case PathAtom::Kind::kAnyEdge:
      return std::string(a.kind == PathAtom::Kind::kAllEdges ? "all " : "any ") + a.key + " " +
             to_string(a.op) + " " + format_value(a.literal);
  }
  return "?";
}

inline std::optional<std::string> negated_form(const PathAtom& a) {
  if (a.kind == PathAtom::Kind::kSourceInSubgraph) return "src not in S";
  if (a.kind == PathAtom::Kind::kTargetInSubgraph) return "dst not in S";
  return std::nullopt;
}

using NodePredicate = Formula<NodeAtom>;
using PathPredicate = Formula<PathAtom>;

// ---------------------------------------------------------------------------
// Printing

namespace detail {

template <class Atom>
void print_formula(const Formula<Atom>& f, std::string& out, int parent_prec) {
  using Op = typename Formula<Atom>::Op;
  switch (f.op) {
    case Op::kTrue: out += "true"; return;
    case Op::kFalse: out += "false"; return;
    case Op::kAtom: out += to_string(f.atom); return;
    case Op::kNot: {
      const auto& c = f.children.front();
      if (c.op == Op::kAtom) {
        if (auto neg = negated_form(c.atom)) {
          out += *neg;
          return;
        }
      }
      out += "not ";
      print_formula(c, out, 3);
      return;
    }
    case Op::kAnd:
    case Op::kOr: {
      const int prec = f.op == Op::kAnd ? 2 : 1;
      const bool wrap = parent_prec > prec;
      if (wrap) out += '(';
      for (std::size_t i = 0; i < f.children.size(); ++i) {
        if (i) out += f.op == Op::kAnd ? " and " : " or ";
        print_formula(f.children[i], out, prec + 1);
      }
      if (wrap) out += ')';
      return;
    }
  }
}

}  // namespace detail

/// Renders a formula in the DSL; the output parses back to the same tree
/// up to normalization.
template <class Atom>
std::string to_string(const Formula<Atom>& f) {
  std::string out;
  detail::print_formula(f, out, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Normalization and syntactic comparison

/// Flattens nested and/or, drops units, applies absorbers and double
/// negation, removes duplicate operands and sorts operands by printed form.
template <class Atom>
Formula<Atom> normalize(const Formula<Atom>& f) {
  using F = Formula<Atom>;
  using Op = typename F::Op;
  switch (f.op) {
    case Op::kTrue:
    case Op::kFalse:
    case Op::kAtom: return f;
    case Op::kNot: {
      F c = normalize(f.children.front());
      if (c.is_true()) return F::constant(false);
      if (c.is_false()) return F::constant(true);
      if (c.op == Op::kNot) return std::move(c.children.front());
      return F::negation(std::move(c));
    }
    case Op::kAnd:
    case Op::kOr: {
      const bool is_and = f.op == Op::kAnd;
      const Op unit = is_and ? Op::kTrue : Op::kFalse;
      const Op absorber = is_and ? Op::kFalse : Op::kTrue;
      std::map<std::string, F> operands;
      std::vector<F> pending;
      for (const auto& c : f.children) pending.push_back(normalize(c));
      for (std::size_t i = 0; i < pending.size(); ++i) {
        F c = std::move(pending[i]);
        if (c.op == unit) continue;
        if (c.op == absorber) return c;
        if (c.op == f.op) {
          for (auto& g : c.children) pending.push_back(std::move(g));
          continue;
        }
        auto key = to_string(c);
        operands.emplace(std::move(key), std::move(c));
      }
      if (operands.empty()) return F{unit, {}, {}};
      if (operands.size() == 1) return std::move(operands.begin()->second);
      std::vector<F> kids;
      for (auto& [key, c] : operands) kids.push_back(std::move(c));
      return F{f.op, {}, std::move(kids)};
    }
  }
  return f;
}

template <class Atom>
Formula<Atom> conjoin(const Formula<Atom>& a, const Formula<Atom>& b) {
  return normalize(Formula<Atom>::conjunction({a, b}));
}

/// Canonical text: the printed normal form.
template <class Atom>
std::string canonical(const Formula<Atom>& f) {
  return to_string(normalize(f));
}

template <class Atom>
bool syntactic_equiv(const Formula<Atom>& a, const Formula<Atom>& b) {
  return canonical(a) == canonical(b);
}

/// Sound but incomplete: `false` implies anything, anything implies `true`,
/// otherwise the conjuncts of q must all occur among the conjuncts of p.
template <class Atom>
bool syntactic_implies(const Formula<Atom>& p, const Formula<Atom>& q) {
  using Op = typename Formula<Atom>::Op;
  const auto np = normalize(p);
  const auto nq = normalize(q);
  if (np.is_false() || nq.is_true()) return true;
  auto conjuncts = [](const Formula<Atom>& f) {
    std::vector<std::string> out;
    if (f.op == Op::kAnd) {
      for (const auto& c : f.children) out.push_back(to_string(c));
    } else {
      out.push_back(to_string(f));
    }
    return out;
  };
  const auto have = conjuncts(np);
  for (const auto& c : conjuncts(nq)) {
    if (std::find(have.begin(), have.end(), c) == have.end()) return false;
  }
  return true;
}

/// True when every path atom is a type regex or an endpoint membership test
/// (possibly negated). Such predicates admit exact automaton-based search.
inline bool is_regex_membership_class(const PathPredicate& f) {
  using Op = PathPredicate::Op;
  switch (f.op) {
    case Op::kTrue:
    case Op::kFalse: return true;
    case Op::kAtom:
      return f.atom.kind == PathAtom::Kind::kTypes ||
             f.atom.kind == PathAtom::Kind::kSourceInSubgraph ||
             f.atom.kind == PathAtom::Kind::kTargetInSubgraph;
    case Op::kNot: return is_regex_membership_class(f.children.front());
    case Op::kAnd:
    case Op::kOr:
      return std::all_of(f.children.begin(), f.children.end(),
                         [](const PathPredicate& c) { return is_regex_membership_class(c); });
  }
  return false;
}

// ---------------------------------------------------------------------------
// Metric table

using NodeMetric = std::function<std::int64_t(const GeneralizedGraph&, Index)>;

/// Integer-valued node functions usable as `name(v) CMP INT`. Register
/// additional metrics before parsing predicates that mention them.
class MetricRegistry {
 public:
  static MetricRegistry& instance() {
    static MetricRegistry registry;
    return registry;
  }

  void add(std::string name, NodeMetric fn) { table_[std::move(name)] = std::move(fn); }

  const NodeMetric* find(std::string_view name) const {
    auto it = table_.find(name);
    return it == table_.end() ? nullptr : &it->second;
  }

 private:
  MetricRegistry() {
    auto degree_metric = [](DegreeMode mode) {
      return [mode](const GeneralizedGraph& g, Index v) {
        return static_cast<std::int64_t>(degree_of(g, v, mode));
      };
    };
    add("deg", degree_metric(DegreeMode::kAll));
    add("deg_out", degree_metric(DegreeMode::kOut));
    add("deg_in", degree_metric(DegreeMode::kIn));
  }

  std::map<std::string, NodeMetric, std::less<>> table_;
};

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

struct Token {
  enum class Kind { kIdent, kString, kNumber, kLParen, kRParen, kCmp, kMatch, kEnd };
  Kind kind = Kind::kEnd;
  std::string text;
  std::size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  const Token& peek() {
    if (!peeked_) {
      peeked_ = scan();
    }
    return *peeked_;
  }

  Token next() {
    Token t = peek();
    peeked_.reset();
    return t;
  }

  bool peek_ident(std::string_view word) {
    const auto& t = peek();
    return t.kind == Token::Kind::kIdent && t.text == word;
  }

  void expect_ident(std::string_view word) {
    Token t = next();
    if (t.kind != Token::Kind::kIdent || t.text != word) {
      throw SyntaxError("expected '" + std::string(word) + "'", t.pos);
    }
  }

  /// Reads `/.../` directly after a consumed `=~`.
  std::pair<std::string_view, std::size_t> read_regex() {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != '/') throw SyntaxError("expected '/'", pos_);
    const std::size_t start = ++pos_;
    while (pos_ < text_.size() && text_[pos_] != '/') ++pos_;
    if (pos_ >= text_.size()) throw SyntaxError("unterminated regex", start - 1);
    auto body = text_.substr(start, pos_ - start);
    ++pos_;
    return {body, start};
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Token scan() {
    skip_ws();
    Token t;
    t.pos = pos_;
    if (pos_ >= text_.size()) return t;
    const char c = text_[pos_];
    auto digit = [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && is_type_ident_char(text_[pos_])) ++pos_;
      t.kind = Token::Kind::kIdent;
      t.text = std::string(text_.substr(start, pos_ - start));
      return t;
    }
    if (digit(c) || (c == '-' && pos_ + 1 < text_.size() && digit(text_[pos_ + 1]))) {
      const std::size_t start = pos_++;
      while (pos_ < text_.size() &&
             (digit(text_[pos_]) || text_[pos_] == '.' || text_[pos_] == 'e' ||
              text_[pos_] == 'E' ||
              ((text_[pos_] == '-' || text_[pos_] == '+') &&
               (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E')))) {
        ++pos_;
      }
      t.kind = Token::Kind::kNumber;
      t.text = std::string(text_.substr(start, pos_ - start));
      return t;
    }
    if (c == '"') {
      ++pos_;
      t.kind = Token::Kind::kString;
      for (;;) {
        if (pos_ >= text_.size()) throw SyntaxError("unterminated string", t.pos);
        const char ch = text_[pos_++];
        if (ch == '"') break;
        if (ch == '\\') {
          if (pos_ >= text_.size()) throw SyntaxError("unterminated string", t.pos);
          t.text.push_back(text_[pos_++]);
        } else {
          t.text.push_back(ch);
        }
      }
      return t;
    }
    if (c == '(' || c == ')') {
      ++pos_;
      t.kind = c == '(' ? Token::Kind::kLParen : Token::Kind::kRParen;
      t.text = std::string(1, c);
      return t;
    }
    auto two = text_.substr(pos_, 2);
    if (two == "=~") {
      pos_ += 2;
      t.kind = Token::Kind::kMatch;
      t.text = "=~";
      return t;
    }
    if (two == "!=" || two == "<=" || two == ">=") {
      pos_ += 2;
      t.kind = Token::Kind::kCmp;
      t.text = std::string(two);
      return t;
    }
    if (c == '=' || c == '<' || c == '>') {
      ++pos_;
      t.kind = Token::Kind::kCmp;
      t.text = std::string(1, c);
      return t;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::optional<Token> peeked_;
};

inline CmpOp parse_cmp(Lexer& lx) {
  Token t = lx.next();
  if (t.kind != Token::Kind::kCmp) throw SyntaxError("expected comparison operator", t.pos);
  if (t.text == "=") return CmpOp::kEq;
  if (t.text == "!=") return CmpOp::kNe;
  if (t.text == "<") return CmpOp::kLt;
  if (t.text == "<=") return CmpOp::kLe;
  if (t.text == ">") return CmpOp::kGt;
  return CmpOp::kGe;
}

inline PropertyValue number_value(const Token& t) {
  const bool real = t.text.find_first_of(".eE") != std::string::npos;
  try {
    std::size_t used = 0;
    PropertyValue v;
    if (real) {
      v = std::stod(t.text, &used);
    } else {
      v = static_cast<std::int64_t>(std::stoll(t.text, &used));
    }
    if (used != t.text.size()) throw SyntaxError("malformed number", t.pos);
    return v;
  } catch (const std::logic_error&) {
    throw SyntaxError("malformed number", t.pos);
  }
}

inline PropertyValue parse_literal(Lexer& lx) {
  Token t = lx.next();
  switch (t.kind) {
    case Token::Kind::kString: return t.text;
    case Token::Kind::kNumber: return number_value(t);
    case Token::Kind::kIdent:
      if (t.text == "true") return true;
      if (t.text == "false") return false;
      break;
    default: break;
  }
  throw SyntaxError("expected literal", t.pos);
}

inline std::int64_t parse_integer(Lexer& lx, ErrorCode wrong_kind) {
  const std::size_t pos = lx.peek().pos;
  PropertyValue v = parse_literal(lx);
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  if (std::holds_alternative<double>(v)) throw SyntaxError("expected integer", pos);
  throw SyntaxError(std::string("expected integer, found ") + to_string(kind_of(v)), pos,
                    wrong_kind);
}

inline bool is_connective(std::string_view word) { return word == "and" || word == "or" || word == "not"; }

inline Formula<NodeAtom> parse_node_atom(Lexer& lx) {
  using F = Formula<NodeAtom>;
  Token t = lx.next();
  if (t.kind != Token::Kind::kIdent || is_connective(t.text)) throw SyntaxError("expected predicate", t.pos);
  if (t.text == "true" || t.text == "false") return F::constant(t.text == "true");
  if (t.text == "v") {
    bool negated = false;
    if (lx.peek_ident("not")) {
      lx.next();
      negated = true;
    }
    lx.expect_ident("in");
    lx.expect_ident("S");
    F atom = F::of(NodeAtom{NodeAtom::Kind::kInSubgraph, {}, CmpOp::kEq, {}});
    return negated ? F::negation(std::move(atom)) : atom;
  }
  if (lx.peek().kind != Token::Kind::kLParen) {
    throw SyntaxError("expected '(' after '" + t.text + "'", lx.peek().pos);
  }
  lx.next();
  lx.expect_ident("v");
  if (lx.next().kind != Token::Kind::kRParen) throw SyntaxError("expected ')'", t.pos);

  if (t.text == "reachable_from_S" || t.text == "reaches_S") {
    const auto kind = t.text == "reaches_S" ? NodeAtom::Kind::kReachesSubgraph
                                            : NodeAtom::Kind::kReachableFromSubgraph;
    return F::of(NodeAtom{kind, {}, CmpOp::kEq, {}});
  }
  if (lx.peek().kind != Token::Kind::kCmp) {
    throw SyntaxError("'" + t.text + "(v)' is not a boolean built-in", t.pos,
                      ErrorCode::kUnknownFunction);
  }
  const CmpOp op = parse_cmp(lx);
  if (MetricRegistry::instance().find(t.text)) {
    const std::int64_t n = parse_integer(lx, ErrorCode::kTypeMismatch);
    return F::of(NodeAtom{NodeAtom::Kind::kMetric, t.text, op, n});
  }
  return F::of(NodeAtom{NodeAtom::Kind::kProperty, t.text, op, parse_literal(lx)});
}

inline Formula<PathAtom> parse_path_atom(Lexer& lx) {
  using F = Formula<PathAtom>;
  Token t = lx.next();
  if (t.kind != Token::Kind::kIdent || is_connective(t.text)) throw SyntaxError("expected predicate", t.pos);
  if (t.text == "true" || t.text == "false") return F::constant(t.text == "true");
  if (t.text == "types") {
    Token m = lx.next();
    if (m.kind != Token::Kind::kMatch) throw SyntaxError("expected '=~'", m.pos);
    auto [body, base] = lx.read_regex();
    PathAtom a;
    a.kind = PathAtom::Kind::kTypes;
    a.regex = std::make_shared<const CompiledTypeRegex>(
        CompiledTypeRegex::from(parse_type_regex(body, base)));
    return F::of(std::move(a));
  }
  if (t.text == "len") {
    PathAtom a;
    a.kind = PathAtom::Kind::kLength;
    a.op = parse_cmp(lx);
    a.literal = parse_integer(lx, ErrorCode::kTypeMismatch);
    return F::of(std::move(a));
  }
  if (t.text == "src" || t.text == "dst") {
    bool negated = false;
    if (lx.peek_ident("not")) {
      lx.next();
      negated = true;
    }
    lx.expect_ident("in");
    lx.expect_ident("S");
    PathAtom a;
    a.kind = t.text == "src" ? PathAtom::Kind::kSourceInSubgraph
                             : PathAtom::Kind::kTargetInSubgraph;
    F atom = F::of(std::move(a));
    return negated ? F::negation(std::move(atom)) : atom;
  }
  if (t.text == "all" || t.text == "any") {
    Token key = lx.next();
    if (key.kind != Token::Kind::kIdent) throw SyntaxError("expected property key", key.pos);
    PathAtom a;
    a.kind = t.text == "all" ? PathAtom::Kind::kAllEdges : PathAtom::Kind::kAnyEdge;
    a.key = key.text;
    a.op = parse_cmp(lx);
    a.literal = parse_literal(lx);
    return F::of(std::move(a));
  }
  throw SyntaxError("unknown path predicate '" + t.text + "'", t.pos,
                    ErrorCode::kUnknownFunction);
}

template <class Atom, class AtomParser>
class FormulaParser {
 public:
  using F = Formula<Atom>;

  FormulaParser(std::string_view text, AtomParser atom) : lx_(text), atom_(atom) {}

  F parse() {
    if (lx_.peek().kind == Token::Kind::kEnd) return F::constant(true);
    F f = parse_or();
    const auto& t = lx_.peek();
    if (t.kind != Token::Kind::kEnd) throw SyntaxError("unexpected '" + t.text + "'", t.pos);
    return f;
  }

 private:
  F parse_or() {
    std::vector<F> parts{parse_and()};
    while (lx_.peek_ident("or")) {
      lx_.next();
      parts.push_back(parse_and());
    }
    return parts.size() == 1 ? std::move(parts.front()) : F::disjunction(std::move(parts));
  }

  F parse_and() {
    std::vector<F> parts{parse_unary()};
    while (lx_.peek_ident("and")) {
      lx_.next();
      parts.push_back(parse_unary());
    }
    return parts.size() == 1 ? std::move(parts.front()) : F::conjunction(std::move(parts));
  }

  F parse_unary() {
    if (lx_.peek_ident("not")) {
      lx_.next();
      return F::negation(parse_unary());
    }
    if (lx_.peek().kind == Token::Kind::kLParen) {
      lx_.next();
      F inner = parse_or();
      Token close = lx_.next();
      if (close.kind != Token::Kind::kRParen) throw SyntaxError("expected ')'", close.pos);
      return inner;
    }
    if (lx_.peek().kind == Token::Kind::kEnd) {
      throw SyntaxError("unexpected end of input", lx_.peek().pos);
    }
    return atom_(lx_);
  }

  Lexer lx_;
  AtomParser atom_;
};

}  // namespace detail

/// Parses a node predicate; empty input yields `true`.
inline NodePredicate parse_node_predicate(std::string_view text) {
  return detail::FormulaParser<NodeAtom, Formula<NodeAtom> (*)(detail::Lexer&)>(
             text, &detail::parse_node_atom)
      .parse();
}

/// Parses a path predicate; empty input yields `true`.
inline PathPredicate parse_path_predicate(std::string_view text) {
  return detail::FormulaParser<PathAtom, Formula<PathAtom> (*)(detail::Lexer&)>(
             text, &detail::parse_path_atom)
      .parse();
}

// ---------------------------------------------------------------------------
// Evaluation

/// A graph plus a selected subgraph, with membership flags and the two
/// reachability sets precomputed.
class SubgraphContext {
 public:
  SubgraphContext(const GeneralizedGraph& g, const SubgraphRef& s)
      : g_(&g), nodes_(g.node_count(), false), edges_(g.edge_count(), false) {
    for (const auto& id : s.nodes) {
      auto v = g.find_node(id);
      if (!v) throw Error(ErrorCode::kInvalidSubgraph, "node '" + id + "' is not in the graph");
      nodes_[*v] = true;
    }
    for (const auto& id : s.edges) {
      auto e = g.find_edge(id);
      if (!e) throw Error(ErrorCode::kInvalidSubgraph, "edge '" + id + "' is not in the graph");
      edges_[*e] = true;
    }
  }

  const GeneralizedGraph& graph() const { return *g_; }
  bool has_node(Index v) const { return nodes_[v]; }
  bool has_edge(Index e) const { return edges_[e]; }
  const std::vector<bool>& node_flags() const { return nodes_; }

  /// Nodes v with a walk of length >= 1 from some node of S to v.
  const std::vector<bool>& reachable_from_subgraph() const {
    if (!from_s_) from_s_ = reach(true);
    return *from_s_;
  }
  /// Nodes v with a walk of length >= 1 from v to some node of S.
  const std::vector<bool>& reaching_subgraph() const {
    if (!to_s_) to_s_ = reach(false);
    return *to_s_;
  }

 private:
  std::vector<bool> reach(bool forward) const {
    std::vector<bool> seen(g_->node_count(), false);
    std::deque<Index> queue;
    auto expand = [&](Index v) {
      for (const auto& step : forward ? g_->steps_from(v) : g_->steps_into(v)) {
        if (!seen[step.to]) {
          seen[step.to] = true;
          queue.push_back(step.to);
        }
      }
    };
    for (Index v = 0; v < nodes_.size(); ++v) {
      if (nodes_[v]) expand(v);
    }
    while (!queue.empty()) {
      const Index v = queue.front();
      queue.pop_front();
      expand(v);
    }
    return seen;
  }

  const GeneralizedGraph* g_;
  std::vector<bool> nodes_;
  std::vector<bool> edges_;
  mutable std::optional<std::vector<bool>> from_s_;
  mutable std::optional<std::vector<bool>> to_s_;
};

namespace detail {

inline bool property_holds(const PropertyMap& props, const std::string& key, CmpOp op,
                           const PropertyValue& literal) {
  auto it = props.find(key);
  if (it == props.end()) return false;
  return compare_values(it->second, op, literal);
}

template <class Atom, class AtomEval>
bool eval_formula(const Formula<Atom>& f, const AtomEval& atom) {
  using Op = typename Formula<Atom>::Op;
  switch (f.op) {
    case Op::kTrue: return true;
    case Op::kFalse: return false;
    case Op::kAtom: return atom(f.atom);
    case Op::kNot: return !eval_formula(f.children.front(), atom);
    case Op::kAnd:
      for (const auto& c : f.children) {
        if (!eval_formula(c, atom)) return false;
      }
      return true;
    case Op::kOr:
      for (const auto& c : f.children) {
        if (eval_formula(c, atom)) return true;
      }
      return false;
  }
  return false;
}

}  // namespace detail

inline bool eval_node_atom(const NodeAtom& a, Index v, const SubgraphContext& ctx) {
  switch (a.kind) {
    case NodeAtom::Kind::kInSubgraph: return ctx.has_node(v);
    case NodeAtom::Kind::kReachableFromSubgraph: return ctx.reachable_from_subgraph()[v];
    case NodeAtom::Kind::kReachesSubgraph: return ctx.reaching_subgraph()[v];
    case NodeAtom::Kind::kProperty:
      return detail::property_holds(ctx.graph().node_props(v), a.name, a.op, a.literal);
    case NodeAtom::Kind::kMetric: {
      const NodeMetric* fn = MetricRegistry::instance().find(a.name);
      if (!fn) throw Error(ErrorCode::kUnknownFunction, "metric '" + a.name + "' not registered");
      return compare_values(PropertyValue{(*fn)(ctx.graph(), v)}, a.op, a.literal);
    }
  }
  return false;
}

inline bool eval_node(const NodePredicate& f, Index v, const SubgraphContext& ctx) {
  return detail::eval_formula(f, [&](const NodeAtom& a) { return eval_node_atom(a, v, ctx); });
}

inline std::vector<std::string> walk_types(const Walk& w, const GeneralizedGraph& g) {
  std::vector<std::string> out;
  out.reserve(w.edges.size());
  for (Index e : w.edges) out.push_back(g.edge_type(e));
  return out;
}

inline bool eval_path_atom(const PathAtom& a, const Walk& w, const SubgraphContext& ctx) {
  const auto& g = ctx.graph();
  switch (a.kind) {
    case PathAtom::Kind::kTypes: return regex_accepts(a.regex->nfa, walk_types(w, g));
    case PathAtom::Kind::kLength:
      return compare_values(PropertyValue{static_cast<std::int64_t>(w.length())}, a.op,
                            a.literal);
    case PathAtom::Kind::kSourceInSubgraph: return ctx.has_node(w.origin());
    case PathAtom::Kind::kTargetInSubgraph: return ctx.has_node(w.terminus());
    case PathAtom::Kind::kAllEdges:
      return std::all_of(w.edges.begin(), w.edges.end(), [&](Index e) {
        return detail::property_holds(g.edge_props(e), a.key, a.op, a.literal);
      });
    case PathAtom::Kind::kAnyEdge:
      return std::any_of(w.edges.begin(), w.edges.end(), [&](Index e) {
        return detail::property_holds(g.edge_props(e), a.key, a.op, a.literal);
      });
  }
  return false;
}

inline bool eval_path(const PathPredicate& f, const Walk& w, const SubgraphContext& ctx) {
  return detail::eval_formula(f, [&](const PathAtom& a) { return eval_path_atom(a, w, ctx); });
}

inline bool eval_node_predicate(const NodePredicate& f, std::string_view v, const SubgraphRef& s,
                                const GeneralizedGraph& g) {
  return eval_node(f, g.node_index(v), SubgraphContext(g, s));
}

inline bool eval_path_predicate(const PathPredicate& f, const Walk& w, const SubgraphRef& s,
                                const GeneralizedGraph& g) {
  return eval_path(f, w, SubgraphContext(g, s));
}

}  // namespace ggq
