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

// Regular expressions over sequences of edge types. Symbols are whole type
// names, `.` matches any type, juxtaposition (whitespace) concatenates.
//
//   regex   := alt
//   alt     := concat ("|" concat)*
//   concat  := postfix+
//   postfix := atom ("*" | "+" | "?")*
//   atom    := TYPE_IDENT | "." | "(" alt ")"

#pragma once

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "ggq/error.hpp"

namespace ggq {

struct TypeRegex {
  enum class Kind { kLiteral, kAny, kConcat, kAlternation, kStar, kPlus, kOptional };

  Kind kind = Kind::kAny;
  std::string literal;
  std::vector<TypeRegex> children;

  static TypeRegex lit(std::string name) { return {Kind::kLiteral, std::move(name), {}}; }
  static TypeRegex any() { return {Kind::kAny, {}, {}}; }
  static TypeRegex unary(Kind k, TypeRegex child) { return {k, {}, {std::move(child)}}; }
  static TypeRegex nary(Kind k, std::vector<TypeRegex> parts) {
    if (parts.size() == 1) return std::move(parts.front());
    std::vector<TypeRegex> flat;
    for (auto& p : parts) {
      if (p.kind == k) {
        for (auto& c : p.children) flat.push_back(std::move(c));
      } else {
        flat.push_back(std::move(p));
      }
    }
    return {k, {}, std::move(flat)};
  }

  friend bool operator==(const TypeRegex&, const TypeRegex&) = default;
};

inline bool is_type_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

namespace detail {

class RegexParser {
 public:
  RegexParser(std::string_view text, std::size_t base) : text_(text), base_(base) {}

  TypeRegex parse() {
    skip_ws();
    if (pos_ == text_.size()) {
      throw SyntaxError("empty regular expression", base_ + pos_, ErrorCode::kEmptyAlphabetToken);
    }
    TypeRegex r = parse_alt();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(what + " in regex", base_ + pos_);
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  TypeRegex parse_alt() {
    std::vector<TypeRegex> branches;
    branches.push_back(parse_concat());
    while (at('|')) {
      ++pos_;
      branches.push_back(parse_concat());
    }
    return TypeRegex::nary(TypeRegex::Kind::kAlternation, std::move(branches));
  }

  TypeRegex parse_concat() {
    std::vector<TypeRegex> parts;
    for (;;) {
      skip_ws();
      if (pos_ == text_.size() || text_[pos_] == '|' || text_[pos_] == ')') break;
      parts.push_back(parse_postfix());
    }
    if (parts.empty()) {
      throw SyntaxError("empty alternative or group", base_ + pos_,
                        ErrorCode::kEmptyAlphabetToken);
    }
    return TypeRegex::nary(TypeRegex::Kind::kConcat, std::move(parts));
  }

  TypeRegex parse_postfix() {
    TypeRegex r = parse_atom();
    for (;;) {
      if (pos_ >= text_.size()) break;
      const char c = text_[pos_];
      if (c == '*') {
        r = TypeRegex::unary(TypeRegex::Kind::kStar, std::move(r));
      } else if (c == '+') {
        r = TypeRegex::unary(TypeRegex::Kind::kPlus, std::move(r));
      } else if (c == '?') {
        r = TypeRegex::unary(TypeRegex::Kind::kOptional, std::move(r));
      } else {
        break;
      }
      ++pos_;
    }
    return r;
  }

  TypeRegex parse_atom() {
    skip_ws();
    const char c = text_[pos_];
    if (c == '.') {
      ++pos_;
      return TypeRegex::any();
    }
    if (c == '(') {
      ++pos_;
      TypeRegex inner = parse_alt();
      if (!at(')')) fail("missing ')'");
      ++pos_;
      return inner;
    }
    if (is_type_ident_char(c)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && is_type_ident_char(text_[pos_])) ++pos_;
      return TypeRegex::lit(std::string(text_.substr(start, pos_ - start)));
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

inline void print_regex(const TypeRegex& r, std::string& out, int context) {
  // context: 0 top / alternation member, 1 concat member, 2 postfix operand
  using K = TypeRegex::Kind;
  switch (r.kind) {
    case K::kLiteral: out += r.literal; return;
    case K::kAny: out += '.'; return;
    case K::kConcat: {
      if (context >= 2) out += '(';
      for (std::size_t i = 0; i < r.children.size(); ++i) {
        if (i) out += ' ';
        print_regex(r.children[i], out, 1);
      }
      if (context >= 2) out += ')';
      return;
    }
    case K::kAlternation: {
      if (context >= 1) out += '(';
      for (std::size_t i = 0; i < r.children.size(); ++i) {
        if (i) out += '|';
        print_regex(r.children[i], out, 0);
      }
      if (context >= 1) out += ')';
      return;
    }
    case K::kStar:
    case K::kPlus:
    case K::kOptional:
      print_regex(r.children.front(), out, 2);
      out += r.kind == K::kStar ? '*' : r.kind == K::kPlus ? '+' : '?';
      return;
  }
}

}  // namespace detail

/// Parses a type regex. `base` offsets error positions when the regex is
/// embedded in a larger text.
inline TypeRegex parse_type_regex(std::string_view text, std::size_t base = 0) {
  return detail::RegexParser(text, base).parse();
}

inline std::string to_string(const TypeRegex& r) {
  std::string out;
  detail::print_regex(r, out, 0);
  return out;
}

/// Epsilon-free NFA over edge types. A transition without a label matches
/// any type.
struct TypeNfa {
  struct Transition {
    std::optional<std::string> label;
    std::size_t to;
    friend auto operator<=>(const Transition&, const Transition&) = default;
  };

  std::size_t start = 0;
  std::vector<bool> accepting;
  std::vector<std::vector<Transition>> transitions;

  std::size_t state_count() const { return accepting.size(); }
};

namespace detail {

class ThompsonBuilder {
 public:
  struct Frag {
    std::size_t start;
    std::size_t accept;
  };

  Frag build(const TypeRegex& r) {
    using K = TypeRegex::Kind;
    switch (r.kind) {
      case K::kLiteral:
      case K::kAny: {
        const auto s = add();
        const auto f = add();
        std::optional<std::string> label;
        if (r.kind == K::kLiteral) label = r.literal;
        states_[s].labeled.push_back({std::move(label), f});
        return {s, f};
      }
      case K::kConcat: {
        Frag whole = build(r.children.front());
        for (std::size_t i = 1; i < r.children.size(); ++i) {
          Frag next = build(r.children[i]);
          eps(whole.accept, next.start);
          whole.accept = next.accept;
        }
        return whole;
      }
      case K::kAlternation: {
        const auto s = add();
        const auto f = add();
        for (const auto& c : r.children) {
          Frag branch = build(c);
          eps(s, branch.start);
          eps(branch.accept, f);
        }
        return {s, f};
      }
      case K::kStar:
      case K::kPlus:
      case K::kOptional: {
        const auto s = add();
        const auto f = add();
        Frag body = build(r.children.front());
        eps(s, body.start);
        eps(body.accept, f);
        if (r.kind == K::kStar || r.kind == K::kPlus) eps(body.accept, body.start);
        if (r.kind == K::kStar || r.kind == K::kOptional) eps(s, f);
        return {s, f};
      }
    }
    return {0, 0};
  }

  TypeNfa finish(Frag whole) const {
    // Keep the start state plus every target of a labeled transition; each
    // kept state inherits the labeled moves of its epsilon closure.
    std::map<std::size_t, std::size_t> renumber;
    std::deque<std::size_t> queue{whole.start};
    renumber[whole.start] = 0;
    TypeNfa nfa;
    nfa.start = 0;
    std::vector<std::size_t> order;
    while (!queue.empty()) {
      const auto s = queue.front();
      queue.pop_front();
      order.push_back(s);
      for (auto t : closure(s)) {
        for (const auto& tr : states_[t].labeled) {
          if (renumber.emplace(tr.to, renumber.size()).second) queue.push_back(tr.to);
        }
      }
    }
    nfa.accepting.assign(order.size(), false);
    nfa.transitions.assign(order.size(), {});
    for (auto s : order) {
      const auto id = renumber.at(s);
      std::set<TypeNfa::Transition> moves;
      for (auto t : closure(s)) {
        if (t == whole.accept) nfa.accepting[id] = true;
        for (const auto& tr : states_[t].labeled) moves.insert({tr.label, renumber.at(tr.to)});
      }
      nfa.transitions[id].assign(moves.begin(), moves.end());
    }
    return nfa;
  }

 private:
  struct State {
    std::vector<std::size_t> epsilon;
    std::vector<TypeNfa::Transition> labeled;
  };

  std::size_t add() {
    states_.emplace_back();
    return states_.size() - 1;
  }
  void eps(std::size_t from, std::size_t to) { states_[from].epsilon.push_back(to); }

  std::set<std::size_t> closure(std::size_t s) const {
    std::set<std::size_t> seen{s};
    std::vector<std::size_t> stack{s};
    while (!stack.empty()) {
      const auto t = stack.back();
      stack.pop_back();
      for (auto u : states_[t].epsilon) {
        if (seen.insert(u).second) stack.push_back(u);
      }
    }
    return seen;
  }

  std::vector<State> states_;
};

}  // namespace detail

/// Thompson construction followed by epsilon-closure removal. State 0 is
/// the start state; unreachable states are dropped.
inline TypeNfa compile_regex(const TypeRegex& r) {
  detail::ThompsonBuilder builder;
  const auto whole = builder.build(r);
  return builder.finish(whole);
}

inline bool nfa_label_matches(const TypeNfa::Transition& t, std::string_view symbol) {
  return !t.label || *t.label == symbol;
}

/// State-set simulation.
inline bool regex_accepts(const TypeNfa& nfa, std::span<const std::string> types) {
  std::vector<bool> current(nfa.state_count(), false);
  current[nfa.start] = true;
  for (const auto& symbol : types) {
    std::vector<bool> next(nfa.state_count(), false);
    bool any = false;
    for (std::size_t s = 0; s < current.size(); ++s) {
      if (!current[s]) continue;
      for (const auto& t : nfa.transitions[s]) {
        if (nfa_label_matches(t, symbol)) next[t.to] = any = true;
      }
    }
    if (!any) return false;
    current = std::move(next);
  }
  for (std::size_t s = 0; s < current.size(); ++s) {
    if (current[s] && nfa.accepting[s]) return true;
  }
  return false;
}

/// A parsed regex together with its compiled automaton and canonical text.
struct CompiledTypeRegex {
  TypeRegex ast;
  TypeNfa nfa;
  std::string text;

  static CompiledTypeRegex from(TypeRegex ast) {
    CompiledTypeRegex c;
    c.nfa = compile_regex(ast);
    c.text = to_string(ast);
    c.ast = std::move(ast);
    return c;
  }
};

/// Brzozowski derivatives over hash-consed terms. Alternations are kept
/// flattened, sorted and duplicate-free and concatenations right-nested, so
/// the set of derivatives of any term is finite. Not thread-safe; use one
/// instance per evaluation.
class RegexDerivatives {
 public:
  using Term = int;

  RegexDerivatives() {
    make(Kind::kEmpty, {}, {});
    make(Kind::kEpsilon, {}, {});
  }

  static constexpr Term kEmpty = 0;
  static constexpr Term kEpsilon = 1;

  Term from_ast(const TypeRegex& r) {
    using K = TypeRegex::Kind;
    switch (r.kind) {
      case K::kLiteral: return make(Kind::kLiteral, r.literal, {});
      case K::kAny: return make(Kind::kAny, {}, {});
      case K::kConcat: {
        Term t = kEpsilon;
        for (auto it = r.children.rbegin(); it != r.children.rend(); ++it) {
          t = cat(from_ast(*it), t);
        }
        return t;
      }
      case K::kAlternation: {
        std::vector<Term> parts;
        for (const auto& c : r.children) parts.push_back(from_ast(c));
        return alt(std::move(parts));
      }
      case K::kStar: return star(from_ast(r.children.front()));
      case K::kPlus: {
        const Term body = from_ast(r.children.front());
        return cat(body, star(body));
      }
      case K::kOptional: return alt({kEpsilon, from_ast(r.children.front())});
    }
    return kEmpty;
  }

  bool nullable(Term t) const { return nodes_[t].nullable; }

  Term derive(Term t, const std::string& symbol) {
    auto key = std::make_pair(t, symbol);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Term result = kEmpty;
    const Node n = nodes_[t];
    switch (n.kind) {
      case Kind::kEmpty:
      case Kind::kEpsilon: result = kEmpty; break;
      case Kind::kLiteral: result = n.literal == symbol ? kEpsilon : kEmpty; break;
      case Kind::kAny: result = kEpsilon; break;
      case Kind::kConcat: {
        const Term head = cat(derive(n.kids[0], symbol), n.kids[1]);
        result = nullable(n.kids[0]) ? alt({head, derive(n.kids[1], symbol)}) : head;
        break;
      }
      case Kind::kAlternation: {
        std::vector<Term> parts;
        for (Term k : n.kids) parts.push_back(derive(k, symbol));
        result = alt(std::move(parts));
        break;
      }
      case Kind::kStar: result = cat(derive(n.kids[0], symbol), t); break;
    }
    memo_.emplace(std::move(key), result);
    return result;
  }

  std::size_t term_count() const { return nodes_.size(); }

 private:
  enum class Kind { kEmpty, kEpsilon, kLiteral, kAny, kConcat, kAlternation, kStar };
  struct Node {
    Kind kind;
    std::string literal;
    std::vector<Term> kids;
    bool nullable;
  };

  Term make(Kind kind, std::string literal, std::vector<Term> kids) {
    auto key = std::make_tuple(kind, literal, kids);
    if (auto it = intern_.find(key); it != intern_.end()) return it->second;
    bool null = false;
    switch (kind) {
      case Kind::kEpsilon:
      case Kind::kStar: null = true; break;
      case Kind::kConcat: null = nodes_[kids[0]].nullable && nodes_[kids[1]].nullable; break;
      case Kind::kAlternation:
        null = std::any_of(kids.begin(), kids.end(), [&](Term k) { return nodes_[k].nullable; });
        break;
      default: break;
    }
    const Term id = static_cast<Term>(nodes_.size());
    nodes_.push_back({kind, std::move(literal), std::move(kids), null});
    intern_.emplace(std::move(key), id);
    return id;
  }

  Term cat(Term a, Term b) {
    if (a == kEmpty || b == kEmpty) return kEmpty;
    if (a == kEpsilon) return b;
    if (b == kEpsilon) return a;
    if (nodes_[a].kind == Kind::kConcat) {
      const auto kids = nodes_[a].kids;
      return cat(kids[0], cat(kids[1], b));
    }
    return make(Kind::kConcat, {}, {a, b});
  }

  Term alt(std::vector<Term> parts) {
    std::set<Term> flat;
    for (Term p : parts) {
      if (p == kEmpty) continue;
      if (nodes_[p].kind == Kind::kAlternation) {
        flat.insert(nodes_[p].kids.begin(), nodes_[p].kids.end());
      } else {
        flat.insert(p);
      }
    }
    if (flat.empty()) return kEmpty;
    if (flat.size() == 1) return *flat.begin();
    return make(Kind::kAlternation, {}, {flat.begin(), flat.end()});
  }

  Term star(Term a) {
    if (a == kEmpty || a == kEpsilon) return kEpsilon;
    if (nodes_[a].kind == Kind::kStar) return a;
    return make(Kind::kStar, {}, {a});
  }

  std::vector<Node> nodes_;
  std::map<std::tuple<Kind, std::string, std::vector<Term>>, Term> intern_;
  std::map<std::pair<Term, std::string>, Term> memo_;
};

}  // namespace ggq
